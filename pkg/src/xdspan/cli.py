"""Command-line entry point: ``xdspan <command> ...``.

Commands: ``generate``, ``spanner``, ``dynamic-sim``, ``approx-ecc`` and
``make-stream``. JSON outputs are schema-tagged and carry no timings, so
equal inputs and seed give byte-identical files. Exit status is 0 on
success, 1 when ``--verify`` finds a violated bound and 2 on bad input.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import dynamic as dyn
from .domset import SamplerConfig, as_fraction, balanced_size, verify_domination
from .ecc import approx_eccentricities, ecc2_spanner, radius_dominating_set
from .errors import GraphError, OracleCapError, ResampleLimitError, SamplingConstraintError, StreamModeError
from .estree import Mode
from .io import dump_json, format_edge_list, read_edge_list, write_edge_list
from .lbgen import Family, generate, random_strongly_connected
from .oracle import DEFAULT_CAP, audit_spanner, exact_metrics
from .spanners import additive_spanner, diam15_spanner, diam53_spanner, tradeoff_spanner

EXIT_VERIFY = 1
EXIT_ERROR = 2


def _default_seed() -> int:
    raw = os.environ.get("XDSPAN_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"xdspan: XDSPAN_SEED must be an integer, got {raw!r}")


def _sampler(args) -> SamplerConfig:
    return SamplerConfig(seed=args.seed, oversample_c=args.c, max_resamples=args.max_resamples)


def _sidecar(path, explicit) -> Path:
    return Path(explicit) if explicit else Path(str(path) + ".json")


def cmd_generate(args) -> int:
    if args.random:
        if args.n is None or args.m is None:
            raise ValueError("--random needs --n and --m")
        g = random_strongly_connected(args.n, args.m, args.seed, args.max_weight)
        meta = {"generator": "random", "n": g.n, "m": g.m, "seed": args.seed, "max_weight": args.max_weight}
    else:
        if args.family is None or args.t is None or args.N is None:
            raise ValueError("give --family with --t and --N, or --random")
        lb = generate(args.family, args.t, args.N, args.edge_budget)
        g = lb.graph
        meta = dict(lb.to_dict(), generator="lower_bound")
    write_edge_list(g, args.out)
    dump_json(meta, _sidecar(args.out, args.meta))
    print(f"wrote {args.out}: n={g.n} m={g.m}")
    return 0


def _tradeoff_sizes(n: int, p: Fraction, c: float) -> tuple[int, int]:
    # |S1| ~ n^(1-p) and |S2| covering the rest of the sampling budget
    lg = math.log2(n) if n > 1 else 0.0
    n_p = max(1, min(n, math.ceil(n ** (1 - float(p)) * math.sqrt(c * lg))))
    n_r = max(1, min(n, math.ceil(c * n * lg / n_p)))
    return n_p, n_r


def cmd_spanner(args) -> int:
    g = read_edge_list(args.graph)
    cfg = _sampler(args)
    kind = args.kind
    if kind == "diam15":
        res = diam15_spanner(g, cfg)
    elif kind == "diam53":
        res = diam53_spanner(g, cfg)
    elif kind == "tradeoff":
        p = as_fraction(args.p)
        n_p, n_r = _tradeoff_sizes(g.n, p, cfg.oversample_c)
        n_p = args.np if args.np is not None else n_p
        n_r = args.nq if args.nq is not None else n_r
        res = tradeoff_spanner(g, p, 1 - p, n_p, n_r, cfg)
    elif kind == "additive":
        res = additive_spanner(g, args.d, cfg, True if args.preserver else None)
    else:
        res = ecc2_spanner(g, cfg)
    h = res.subgraph(g)
    Path(args.out).write_text(format_edge_list(h), encoding="ascii", newline="\n")
    report = {"input": {"n": g.n, "m": g.m}, "spanner": res.to_dict(), "verify": None}
    code = 0
    if args.verify:
        audit = audit_spanner(g, res, args.oracle_cap)
        report["verify"] = audit
        code = 0 if audit["passed"] else EXIT_VERIFY
    dump_json(report, _sidecar(args.out, args.audit))
    status = "" if not args.verify else (" verify=pass" if code == 0 else " verify=FAIL")
    print(f"{kind}: {res.size}/{g.m} edges{status}")
    return code


def _check_snapshot(algo: str, snap, eps: Fraction, cap) -> dict:
    if algo == "pair":
        rep = verify_domination(snap.graph, snap, 2 * eps)
        return {"passed": rep.certificate_holds and rep.holds, **rep.to_dict()}
    if algo == "estimate":
        d = exact_metrics(snap.graph, cap).diameter
        hi = math.ceil((Fraction(3, 2) + eps) * d)
        return {"passed": d <= snap.estimate <= hi, "diameter": d, "upper": hi}
    return audit_spanner(snap.graph, snap.spanner, cap)


def cmd_dynamic_sim(args) -> int:
    stream = dyn.read_stream(args.stream, args.checkpoint_every)
    cfg = _sampler(args)
    eps = as_fraction(args.eps)
    algo = args.algo
    if algo == "pair":
        size = balanced_size(stream.base.n, cfg.oversample_c)
        n_p = args.np if args.np is not None else size
        n_q = args.nq if args.nq is not None else size
        snaps = dyn.dyn_dominating_pair(stream, eps, n_p, n_q, cfg, level_cap=args.level_cap)
    elif algo == "estimate":
        snaps = dyn.dyn_diameter_estimate(stream, eps, cfg, args.level_cap)
    elif algo == "diam15":
        snaps = dyn.dyn_diam15_spanner(stream, eps, cfg, args.level_cap, args.d0)
    else:
        snaps = dyn.ALGORITHMS[algo](stream, eps, cfg, args.level_cap)

    timeline = []
    all_ok = True
    for s in snaps:
        entry = s.to_dict()
        if args.verify:
            check = _check_snapshot(algo, s, eps, args.oracle_cap)
            entry["verify"] = check
            all_ok = all_ok and check["passed"]
        timeline.append(entry)
    out = {
        "algorithm": algo,
        "mode": stream.mode.value,
        "ops": len(stream),
        "eps": str(eps),
        "seed": cfg.seed,
        "checkpoints": list(stream.checkpoints),
        "snapshots": timeline,
        "all_passed": all_ok if args.verify else None,
    }
    dump_json(out, args.out)
    print(f"{algo} over {len(stream)} {stream.mode.value} ops: {len(snaps)} snapshots"
          + ("" if not args.verify else (" verify=pass" if all_ok else " verify=FAIL")))
    return 0 if all_ok else EXIT_VERIFY


def cmd_approx_ecc(args) -> int:
    g = read_edge_list(args.graph)
    cfg = _sampler(args)
    rds = radius_dominating_set(g, args.k, cfg)
    est = approx_eccentricities(g, cfg, rds)
    lines = ["vertex,estimate"] + [f"{v},{e}" for v, e in enumerate(est)]
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")
    summary = {"n": g.n, "m": g.m, "seed": cfg.seed, "set": rds.to_dict(), "verify": None}
    code = 0
    if args.verify:
        exact = exact_metrics(g, args.oracle_cap).out_ecc
        ok = all(x <= e <= 2 * x for x, e in zip(exact, est))
        ratio = max((Fraction(e, x) for x, e in zip(exact, est) if x), default=Fraction(1))
        summary["verify"] = {"passed": ok, "max_ratio": str(ratio), "max_ratio_float": float(ratio)}
        code = 0 if ok else EXIT_VERIFY
    dump_json(summary, _sidecar(args.out, args.summary))
    print(f"approx-ecc: |S|={len(rds.s)}" + ("" if not args.verify else f" max ratio {float(ratio):.3f}"))
    return code


def cmd_make_stream(args) -> int:
    g = read_edge_list(args.graph)
    if args.mode == "delete":
        stream = dyn.random_deletions(g, args.count, args.seed)
    else:
        stream = dyn.random_insertions(g, args.count, args.seed)
    out = Path(args.out)
    base = os.path.relpath(Path(args.graph).resolve(), out.resolve().parent)
    dyn.write_stream(stream, out, base)
    print(f"wrote {out}: {len(stream)} {stream.mode.value} ops")
    return 0


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=_default_seed(), help="RNG seed (default $XDSPAN_SEED or 0)")
    p.add_argument("--c", type=float, default=8.0, help="oversampling constant")
    p.add_argument("--max-resamples", type=int, default=64)
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_CAP, help="largest n the exact oracle accepts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xdspan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a lower-bound or random graph")
    p.add_argument("--family", choices=[f.value for f in Family])
    p.add_argument("--t", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--random", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--max-weight", type=int, default=1)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--edge-budget", type=int, default=200_000)
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--meta", help="landmark/metadata JSON (default <out>.json)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("spanner", help="build a static spanner")
    p.add_argument("graph")
    p.add_argument("--kind", required=True, choices=["diam15", "diam53", "tradeoff", "additive", "ecc2"])
    p.add_argument("--p", type=float, default=0.5, help="tradeoff: S1 stretch parameter")
    p.add_argument("--np", type=int, help="tradeoff/pair: |S1|")
    p.add_argument("--nq", type=int, help="tradeoff/pair: |S2|")
    p.add_argument("--d", type=int, default=2, help="additive: stretch D + ceil(n/d)")
    p.add_argument("--preserver", action="store_true", help="additive: force the pairwise-path branch")
    p.add_argument("--verify", action="store_true")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--audit", help="audit JSON (default <out>.json)")
    _common(p)
    p.set_defaults(func=cmd_spanner)

    p = sub.add_parser("dynamic-sim", help="replay an update stream")
    p.add_argument("stream")
    p.add_argument("--algo", default="diam15", choices=["diam15", "diam53", "ecc2", "pair", "estimate"])
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--np", type=int)
    p.add_argument("--nq", type=int)
    p.add_argument("--checkpoint-every", type=int, default=dyn.DEFAULT_CHECKPOINT_EVERY)
    p.add_argument("--level-cap", type=int)
    p.add_argument("--d0", type=int, help="diam15: enable the large-diameter mode with this threshold")
    p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("-o", "--out", required=True)
    _common(p)
    p.set_defaults(func=cmd_dynamic_sim)

    p = sub.add_parser("approx-ecc", help="2-approximate out-eccentricities")
    p.add_argument("graph")
    p.add_argument("--k", type=int, help="number of levels (default ceil(log2 n))")
    p.add_argument("--verify", action="store_true")
    p.add_argument("-o", "--out", required=True, help="CSV output")
    p.add_argument("--summary", help="summary JSON (default <out>.json)")
    _common(p)
    p.set_defaults(func=cmd_approx_ecc)

    p = sub.add_parser("make-stream", help="write a random insert-only or delete-only stream")
    p.add_argument("graph")
    p.add_argument("--mode", required=True, choices=[m.value for m in Mode])
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_make_stream)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        GraphError,
        OracleCapError,
        ResampleLimitError,
        SamplingConstraintError,
        StreamModeError,
        ValueError,
        OSError,
    ) as exc:
        print(f"xdspan {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
