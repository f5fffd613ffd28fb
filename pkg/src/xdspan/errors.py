"""Exception types shared across the package."""


class GraphError(ValueError):
    """Malformed graph input: bad endpoint, negative or non-integer weight."""


class GraphFormatError(GraphError):
    """Edge-list or stream file could not be parsed."""


class NotStronglyConnectedError(ValueError):
    """Some vertex is unreachable in the direction an operation needs."""


class ResampleLimitError(RuntimeError):
    """A Las Vegas sampling loop exhausted ``SamplerConfig.max_resamples``."""


class SamplingConstraintError(ValueError):
    """Sample sizes too small for the hitting-set guarantee."""


class OracleCapError(ValueError):
    """Graph exceeds the brute-force oracle's vertex cap."""


class StreamModeError(ValueError):
    """Update stream mixes insertions and deletions, or an op does not apply."""
