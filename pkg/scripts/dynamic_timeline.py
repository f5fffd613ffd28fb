"""Replay a random update stream and print per-checkpoint size, stretch and work."""

import argparse

from xdspan.domset import SamplerConfig
from xdspan.dynamic import ALGORITHMS, random_deletions, random_insertions
from xdspan.estree import Mode
from xdspan.lbgen import random_strongly_connected
from xdspan.oracle import audit_spanner


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--algo", choices=["diam15", "diam53", "ecc2"], default="diam15")
    ap.add_argument("--mode", choices=[m.value for m in Mode], default="delete")
    ap.add_argument("--n", type=int, default=80)
    ap.add_argument("--ops", type=int, default=100)
    ap.add_argument("--eps", type=float, default=0.25)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--every", type=int, default=10)
    args = ap.parse_args()

    if args.mode == "delete":
        stream = random_deletions(random_strongly_connected(args.n, 5 * args.n, args.seed), args.ops, args.seed)
    else:
        stream = random_insertions(random_strongly_connected(args.n, 2 * args.n, args.seed), args.ops, args.seed)
    cfg = SamplerConfig(seed=args.seed, oversample_c=1.0)
    snaps = ALGORITHMS[args.algo](stream.with_checkpoints(args.every), args.eps, cfg)

    print(f"{'step':>5} {'m':>5} {'|H|':>5} {'D(G)':>5} {'D(H)':>5} {'bound':>6} {'ok':>3} {'es_work':>9} events")
    for s in snaps:
        rep = audit_spanner(s.graph, s.spanner)
        events = ",".join(sorted({e["event"] for e in s.events if e.get("step") == s.step}))
        print(f"{s.step:>5} {s.graph.m:>5} {rep['edges_h']:>5} {rep['diameter_g']!s:>5} {rep['diameter_h']!s:>5} "
              f"{rep['diameter_bound']!s:>6} {'y' if rep['passed'] else 'N':>3} {s.counters.get('es_work', 0):>9} {events}")


if __name__ == "__main__":
    main()
