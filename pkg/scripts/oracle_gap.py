"""Empirical optimality gap of the greedy heuristics against exhaustive search.

For each (n, k) cell, draws random Gaussian instances and reports the mean and
worst gap ``exact - heuristic`` in sum-vector cosine, plus how often the
heuristic hits the optimum.
"""

import argparse

import numpy as np

from vrsd.algorithms import CandidateSet, Query, mmr_select, vrsd_select
from vrsd.oracle import OracleMode, exact_select


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--dim", type=int, default=8)
    ap.add_argument("--sizes", default="8,12,16")
    ap.add_argument("--ks", default="2,3,4,5")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'n':>3} {'k':>2}  {'vrsd mean gap':>13} {'worst':>9} {'optimal':>8}  {'mmr(.5) mean gap':>16}")
    for n in map(int, args.sizes.split(",")):
        for k in map(int, args.ks.split(",")):
            if k > n:
                continue
            v_gaps, m_gaps = [], []
            for _ in range(args.trials):
                cands = CandidateSet.from_vectors(rng.standard_normal((n, args.dim)))
                q = Query("q", rng.standard_normal(args.dim))
                opt = exact_select(cands, q, k, OracleMode(fix_first=True)).score
                v_gaps.append(opt - vrsd_select(cands, q, k).score)
                m_gaps.append(opt - mmr_select(cands, q, k, 0.5).score)
            v = np.array(v_gaps)
            print(f"{n:>3} {k:>2}  {v.mean():>13.2e} {v.max():>9.2e} {np.mean(v <= 1e-12):>8.0%}"
                  f"  {np.mean(m_gaps):>16.2e}")


if __name__ == "__main__":
    main()
