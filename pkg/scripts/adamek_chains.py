"""Run the four stage universes side by side and print where each chain stops.

    python3 scripts/adamek_chains.py --horizon 12
"""
from __future__ import annotations

import argparse

from rankfix.corpus import hf_corpus
from rankfix.fixpoint import (INITIAL, TERMINAL, bounded_universe, card_universe, lambek_check,
                              parse_functor, rank_universe, run_chain, susp_tower_corpus,
                              trunc_universe)
from rankfix.ordinals import print_ordinal
from rankfix.syntax import parse_schedule


def describe(report, u) -> str:
    if report.stabilized:
        v = report.verdict
        return (f"stabilized at {print_ordinal(v.index)} ({v.value}), "
                f"lambek={lambek_check(u, report)}")
    return f"no stabilization over {len(report.visited)} stages"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--horizon", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--corpus-size", type=int, default=200)
    args = ap.parse_args()

    runs = [
        ("rank to w*2", rank_universe(), "0..w*2", INITIAL),
        ("rank with LAMBDA", rank_universe(), "0..w*2, LAMBDA", INITIAL),
        ("bounded", bounded_universe(susp_tower_corpus(args.horizon + 1)
                                     + hf_corpus(args.seed, args.corpus_size)),
         "0..w+1", INITIAL),
        ("trunc", trunc_universe(), "0..w", TERMINAL),
    ]
    for spec in ["X", "3", "1 + X", "1 + X^2", "2*X + 1"]:
        runs.append((f"card F = {spec}", card_universe(parse_functor(spec)), "0..w+1", INITIAL))

    width = max(len(name) for name, *_ in runs)
    for name, u, schedule, direction in runs:
        report = run_chain(u, parse_schedule(schedule, args.horizon), direction)
        print(f"{name:<{width}}  {describe(report, u)}")


if __name__ == "__main__":
    main()
