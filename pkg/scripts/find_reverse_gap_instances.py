"""Search for elections where LARGEST FIT beats REVERSE by one vote.

The 4-candidate election built from the two ballots 3>1>2>4 and
2>3>1>4 is the smallest member of a family over 2k+2 candidates on
which LARGEST FIT finds an optimal 2-vote manipulation while REVERSE
needs 3.  This script hunts for concrete members at 6 and 8 candidates
by scoring two-ballot elections that rank the preferred candidate
last: 6 candidates exhaustively, 8 by seeded sampling.

Usage: python scripts/find_reverse_gap_instances.py [--limit N]
"""

from __future__ import annotations

import argparse
import itertools
import sys

from borda_manip.core import ManipulationProblem, ScoreVector, Vote, tally
from borda_manip.exact import optimal
from borda_manip.generators import SplitMix64
from borda_manip.heuristics import largest_fit, reverse


def classify(scores: tuple[int, ...], d: int) -> tuple[int, int, int] | None:
    problem = ManipulationProblem(ScoreVector(scores), d)
    opt = optimal(problem).n_opt
    if opt != 2:
        return None
    rev = reverse(problem).n_used
    lf = largest_fit(problem).n_used
    return opt, rev, lf


def search_exhaustive(m: int, limit: int) -> list[tuple[int, ...]]:
    d = m
    rest = list(range(1, m))
    hits = []
    seen = set()
    perms = [Vote((*p, d)) for p in itertools.permutations(rest)]
    for i, va in enumerate(perms):
        for vb in perms[i:]:
            scores = tally([va, vb], m).scores
            if scores in seen:
                continue
            seen.add(scores)
            verdict = classify(scores, d)
            if verdict and verdict[1] == 3 and verdict[2] == 2:
                hits.append(scores)
                print(f"m={m} scores={scores} ballots={va.ranking} {vb.ranking}")
                if len(hits) >= limit:
                    return hits
    return hits


def search_sampled(m: int, limit: int, rounds: int) -> list[tuple[int, ...]]:
    d = m
    rng = SplitMix64(m)
    rest = list(range(1, m))
    hits = []
    seen = set()
    for _ in range(rounds):
        pair = []
        for _ in range(2):
            head = list(rest)
            rng.shuffle(head)
            pair.append(Vote((*head, d)))
        scores = tally(pair, m).scores
        if scores in seen:
            continue
        seen.add(scores)
        verdict = classify(scores, d)
        if verdict and verdict[1] == 3 and verdict[2] == 2:
            hits.append(scores)
            print(f"m={m} scores={scores} ballots={pair[0].ranking} {pair[1].ranking}")
            if len(hits) >= limit:
                return hits
    return hits


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=3, help="instances to report per size")
    ap.add_argument("--rounds", type=int, default=200_000, help="samples at 8 candidates")
    args = ap.parse_args()
    print("# 6 candidates, exhaustive over two-ballot elections")
    six = search_exhaustive(6, args.limit)
    print(f"# found {len(six)}")
    print("# 8 candidates, seeded sampling")
    eight = search_sampled(8, args.limit, args.rounds)
    print(f"# found {len(eight)}")
    return 0 if six and eight else 1


if __name__ == "__main__":
    sys.exit(main())
