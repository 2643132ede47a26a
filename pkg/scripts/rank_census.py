"""Tally rank verdicts and Noetherian certificates over seeded corpora.

    python3 scripts/rank_census.py --cases 1000 --p-cycle 0 0.2 0.5
"""
from __future__ import annotations

import argparse
import time
from collections import Counter

from rankfix.corpus import GenConfig, env_corpus
from rankfix.noetherian import CounterTower, certify, replay_tower
from rankfix.rank import Bottom, NoSmallRank, Of, rank_of


def bucket(r) -> str:
    match r:
        case Bottom():
            return "BOTTOM"
        case Of(theta) if theta.is_finite:
            return "finite"
        case Of(_):
            return "infinite"
        case NoSmallRank():
            return "NO_SMALL_RANK"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--p-cycle", type=float, nargs="+", default=[0.0, 0.2, 0.5])
    args = ap.parse_args()

    for p in args.p_cycle:
        start = time.perf_counter()
        tally: Counter[str] = Counter()
        disagreements = replay_failures = 0
        for env, e in env_corpus(args.seed, args.cases, GenConfig(p_cycle=p, max_depth=args.depth)):
            r = rank_of(env, e)
            tally[bucket(r)] += 1
            v = certify(env, e)
            disagreements += isinstance(v, CounterTower) != isinstance(r, NoSmallRank)
            if isinstance(v, CounterTower):
                replay_failures += not replay_tower(env, e, v.tower, 10 * len(v.tower))
        elapsed = time.perf_counter() - start
        counts = ", ".join(f"{k}={tally[k]}" for k in
                           ("BOTTOM", "finite", "infinite", "NO_SMALL_RANK"))
        print(f"p_cycle={p:.2f}: {counts}; disagreements={disagreements}, "
              f"replay failures={replay_failures} ({elapsed:.2f}s)")


if __name__ == "__main__":
    main()
