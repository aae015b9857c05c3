"""VRSD vs MMR(lambda) on a seeded synthetic suite, printed as a results table.

    python scripts/synthetic_table1.py --queries 500 --num 200 --seed 2024
"""

import argparse

from vrsd.ingest import SyntheticSpec, synthetic_suite
from vrsd.metrics import AlgorithmSpec, compare, format_table, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--queries", type=int, default=500)
    ap.add_argument("--num", type=int, default=200, help="corpus size per query")
    ap.add_argument("--dim", type=int, default=32)
    ap.add_argument("--n", type=int, default=20, help="candidate pool size")
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--spread", type=float, default=0.3)
    ap.add_argument("--distractors", type=float, default=0.5)
    ap.add_argument("--lambdas", default="0,0.5,1")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    spec = SyntheticSpec(args.seed, args.num, args.dim, args.n, args.spread, args.distractors)
    suite = synthetic_suite(spec, args.queries)
    algos = [AlgorithmSpec("vrsd")] + [AlgorithmSpec("mmr", float(x)) for x in args.lambdas.split(",")]
    outcomes = run_suite(suite, algos, args.k, workers=args.workers)
    reports = [compare(outcomes, "vrsd", a.tag) for a in algos[1:]]
    print(f"{args.queries} queries, N={args.num}, n={args.n}, k={args.k}, d={args.dim}, "
          f"spread={args.spread}, distractors={args.distractors}, seed={args.seed}\n")
    print(format_table(reports))
    print("\nties: " + ", ".join(f"{r.baseline_tag} {r.tie_rate:.1%}" for r in reports))


if __name__ == "__main__":
    main()
