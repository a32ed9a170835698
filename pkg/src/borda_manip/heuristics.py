"""Approximation methods for coalition manipulation.

Three incomplete methods, each with a fixed-coalition core and a wrapper
that searches for the smallest working coalition:

* reverse: build whole ballots, preferred candidate first and the rest
  ordered against their current totals, until the candidate wins.
* largest fit: place values into candidate columns greedily, largest
  value to the currently lowest-scoring column with free slots.
* average fit: place values guided by remaining gap per remaining slot.

The wrappers never probe coalition sizes below the counting lower bound
(see the exact-search module), which cannot change their answers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import (
    GapVector,
    InternalError,
    ManipulationProblem,
    ValidationError,
    Vote,
    apply_votes,
    check_win,
    gaps,
)
from .exact import lower_bound
from .matrices import RelaxedMatrix, matrix_to_votes, relaxed_to_strict

# Safety margin for the minimal-n wrappers.  The greedy methods settle
# within a small factor of optimal in practice; running this far past
# the lower bound indicates a bug, not a hard instance.
_WRAPPER_SPAN = 65536


class TieBreakPolicy(enum.Enum):
    """Column tie-break for average fit when gap averages are equal."""

    FEWEST_PLACED = "fewest-placed"
    LOWEST_INDEX = "lowest-index"


@dataclass(frozen=True)
class Placement:
    """One greedy step: ``value`` goes into 1-based ``column``."""

    value: int
    column: int


@dataclass(frozen=True)
class HeuristicResult:
    """Outcome of a successful manipulation search.

    ``relaxed`` carries the placement grid for the fit methods and is
    None for reverse, whose ballots are built directly.  ``trace`` lists
    every placement in order, the preferred candidate's prefill included.
    """

    n_used: int
    ballots: tuple[Vote, ...]
    relaxed: RelaxedMatrix | None
    trace: tuple[Placement, ...]


def reverse(problem: ManipulationProblem) -> HeuristicResult:
    """Grow the coalition one ballot at a time until d co-wins.

    Each ballot puts d first and the others in ascending order of their
    current totals, so the strongest rival gets the fewest points.  Ties
    give the lower-numbered candidate the better place.  Uses at most
    one ballot more than the optimal coalition.
    """
    m = problem.m
    d = problem.d
    scores = list(problem.base.scores)
    others = [c for c in range(1, m + 1) if c != d]
    ballots: list[Vote] = []
    trace: list[Placement] = []
    # Every ballot shrinks d's worst deficit by at least one point.
    limit = max(s - scores[d - 1] for s in scores) + 1
    while scores[d - 1] < max(scores):
        if len(ballots) > limit:
            raise InternalError("ballot growth exceeded the deficit bound")
        order = sorted(others, key=lambda c: (scores[c - 1], c))
        ballots.append(Vote((d, *order)))
        trace.append(Placement(m - 1, d))
        scores[d - 1] += m - 1
        for pos, cand in enumerate(order):
            points = m - 2 - pos
            scores[cand - 1] += points
            trace.append(Placement(points, cand))
    return HeuristicResult(len(ballots), tuple(ballots), None, tuple(trace))


def _prefill(problem: ManipulationProblem, n: int, trace: list[Placement]) -> tuple[list[int], list[int]]:
    """Give d its n top values; return running scores and entry counts."""
    running = list(problem.base.scores)
    entries = [0] * problem.m
    running[problem.d - 1] += n * (problem.m - 1)
    entries[problem.d - 1] = n
    trace.extend([Placement(problem.m - 1, problem.d)] * n)
    return running, entries


def _freeze(n: int, m: int, placed: list[list[int]]) -> RelaxedMatrix:
    return RelaxedMatrix(n, m, tuple(tuple(row) for row in placed))


def largest_fit_fixed(
    problem: ManipulationProblem,
    n: int,
    trace: list[Placement] | None = None,
) -> RelaxedMatrix | None:
    """Largest-fit placement for a fixed coalition size.

    After prefixing column d with n copies of m-1, the remaining values
    go in descending order to the column whose candidate currently has
    the smallest running score among columns with free slots (ties to
    the lowest column index).  No gap checking happens on the way; the
    placement is kept only if the final scores make d a co-winner.
    """
    if n < 1:
        raise ValidationError(f"coalition size must be >= 1, got {n}")
    m = problem.m
    d = problem.d
    log: list[Placement] = []
    running, entries = _prefill(problem, n, log)
    placed = [[0] * m for _ in range(m)]
    placed[m - 1][d - 1] = n
    for value in range(m - 2, -1, -1):
        for _ in range(n):
            best = -1
            for j in range(m):
                if entries[j] < n and (best == -1 or running[j] < running[best]):
                    best = j
            running[best] += value
            entries[best] += 1
            placed[value][best] += 1
            log.append(Placement(value, best + 1))
    if running[d - 1] < max(running):
        return None
    if trace is not None:
        trace.extend(log)
    return _freeze(n, m, placed)


def average_fit_fixed(
    problem: ManipulationProblem,
    n: int,
    policy: TieBreakPolicy = TieBreakPolicy.FEWEST_PLACED,
    trace: list[Placement] | None = None,
) -> RelaxedMatrix | None:
    """Average-fit placement for a fixed coalition size.

    After the column-d prefill, each step selects the column with the
    largest remaining gap per remaining slot and drops in the largest
    value that still fits that gap.  Average ties fall back to the
    policy (fewest entries placed, or straight to lowest index), then to
    lowest index.  Fails when a gap is negative up front or the selected
    column cannot take any remaining value.
    """
    if n < 1:
        raise ValidationError(f"coalition size must be >= 1, got {n}")
    m = problem.m
    d = problem.d
    gap_vector = gaps(problem, n)
    if any(g < 0 for g in gap_vector.gaps):
        return None
    log: list[Placement] = []
    _, entries = _prefill(problem, n, log)
    rem_gap = list(gap_vector.gaps)
    rem_gap[d - 1] -= n * (m - 1)
    placed = [[0] * m for _ in range(m)]
    placed[m - 1][d - 1] = n
    remaining = [n] * (m - 1)  # copies left of each value 0..m-2
    for _ in range(n * (m - 1)):
        best = -1
        for j in range(m):
            slots = n - entries[j]
            if slots == 0:
                continue
            if best == -1:
                best = j
                continue
            # Compare rem_gap[j]/slots vs rem_gap[best]/best_slots exactly.
            best_slots = n - entries[best]
            lhs = rem_gap[j] * best_slots
            rhs = rem_gap[best] * slots
            if lhs > rhs:
                best = j
            elif lhs == rhs and policy is TieBreakPolicy.FEWEST_PLACED:
                if entries[j] < entries[best]:
                    best = j
        value = -1
        for v in range(min(rem_gap[best], m - 2), -1, -1):
            if remaining[v] > 0:
                value = v
                break
        if value == -1:
            return None
        remaining[value] -= 1
        rem_gap[best] -= value
        entries[best] += 1
        placed[value][best] += 1
        log.append(Placement(value, best + 1))
    final = [b + g for b, g in zip(problem.base.scores, _freeze(n, m, placed).column_sums())]
    if final[d - 1] < max(final):
        raise InternalError("all values fit the gaps yet d does not win")
    if trace is not None:
        trace.extend(log)
    return _freeze(n, m, placed)


def _wrap(
    problem: ManipulationProblem,
    fixed,
) -> HeuristicResult:
    """Minimal-n search shared by the fit methods."""
    if check_win(problem.base, problem.d):
        zero = RelaxedMatrix(0, problem.m, tuple(tuple([0] * problem.m) for _ in range(problem.m)))
        return HeuristicResult(0, (), zero, ())
    start = max(1, lower_bound(problem))
    for n in range(start, start + _WRAPPER_SPAN):
        trace: list[Placement] = []
        matrix = fixed(n, trace)
        if matrix is not None:
            ballots = matrix_to_votes(relaxed_to_strict(matrix))
            return HeuristicResult(n, ballots, matrix, tuple(trace))
    raise InternalError("no fit found within the wrapper safety span")


def largest_fit(problem: ManipulationProblem) -> HeuristicResult:
    """Smallest coalition size at which largest_fit_fixed succeeds."""
    return _wrap(problem, lambda n, tr: largest_fit_fixed(problem, n, trace=tr))


def average_fit(
    problem: ManipulationProblem,
    policy: TieBreakPolicy = TieBreakPolicy.FEWEST_PLACED,
) -> HeuristicResult:
    """Smallest coalition size at which average_fit_fixed succeeds."""
    return _wrap(problem, lambda n, tr: average_fit_fixed(problem, n, policy, trace=tr))
