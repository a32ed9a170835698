"""Run the manipulation-heuristics campaign and print the summary table.

Defaults match the desk-scale setup: 200 trials per cell, uniform and
urn electorates, 4 to 16 candidates, 4 to 128 voters, master seed 7.
The full trial table lands in a CSV; the per-(model, candidates)
summary goes to stdout.  Wall-clock columns are recorded by default;
pass --no-times to zero them when byte-stable output matters more.
"""

from __future__ import annotations

import argparse
import sys
import time

from borda_manip.harness import (
    DEFAULT_NODE_BUDGET,
    ExperimentConfig,
    format_summary,
    run_experiment,
)


def parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--models", default="uniform,urn")
    ap.add_argument("--m", default="4,8,16", help="candidate counts, comma separated")
    ap.add_argument("--voters", default="4,8,16,32,64,128")
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    ap.add_argument("--out", default="results.csv")
    ap.add_argument("--no-times", action="store_true", help="write zeros for timing columns")
    args = ap.parse_args()

    config = ExperimentConfig(
        models=tuple(args.models.split(",")),
        m_values=parse_ints(args.m),
        voter_counts=parse_ints(args.voters),
        trials=args.trials,
        seed=args.seed,
        node_budget=args.node_budget,
        output=args.out,
        record_times=not args.no_times,
    )
    t0 = time.perf_counter()
    records, summary = run_experiment(config)
    elapsed = time.perf_counter() - t0
    print(format_summary(summary))
    print(f"\n{len(records)} trials -> {args.out} in {elapsed:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
