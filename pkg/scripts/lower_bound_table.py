"""Exact distances on the lower-bound fixtures before and after the critical deletions."""

import argparse
import itertools

from xdspan.graph import sssp
from xdspan.lbgen import gen_lb15, gen_lb53, gen_lb_ecc, lb53_deletion
from xdspan.oracle import exact_metrics


def without(g, drop):
    drop = set(drop)
    return g.subgraph(e for e in range(g.m) if e not in drop)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--N", type=int, nargs="+", default=[2, 3, 4])
    args = ap.parse_args()

    print(f"{'family':7} {'t':>2} {'N':>2} {'n':>5} {'m':>6} {'diam':>5} {'after':>6} {'expect':>7}")
    for t, N in itertools.product(args.t, args.N):
        lb = gen_lb15(t, N)
        g = lb.graph
        worst = min(
            sssp(without(g, [g.edge_id(lb[f"b:{i}"], lb[f"c:{j}"])]), [lb[f"a:1:{i}"]]).dist[lb[f"d:{t}:{j}"]]
            for i, j in itertools.product(range(1, N + 1), repeat=2)
        )
        print(f"{'lb15':7} {t:>2} {N:>2} {g.n:>5} {g.m:>6} {exact_metrics(g).diameter:>5} {worst:>6} {3 * t + 2:>7}")

        le = gen_lb_ecc(t, N)
        ecc = max(max(sssp(le.graph, [le[f"b:{i}"]]).dist) for i in range(1, N + 1))
        print(f"{'lbecc':7} {t:>2} {N:>2} {le.graph.n:>5} {le.graph.m:>6} {ecc:>5} {'':>6} {t + 1:>7}")

        l53 = gen_lb53(t, N, edge_budget=None)
        ids, x, y = lb53_deletion(l53, 1, 1, 2, 2)
        after = sssp(without(l53.graph, ids), [x]).dist[y]
        diam = exact_metrics(l53.graph, cap=None).diameter
        print(f"{'lb53':7} {t:>2} {N:>2} {l53.graph.n:>5} {l53.graph.m:>6} {diam:>5} {after:>6} {5 * t + 4:>7}")


if __name__ == "__main__":
    main()
