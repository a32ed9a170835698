"""Hardness gadgets: score-targeting votes, the reduction, and PMRDS.

Three constructions connect manipulation to a permutation-sum puzzle:

* lemma1_votes builds an electorate realizing any target score profile
  up to a common offset, out of boost pairs that raise one candidate by
  m+1, every other regular candidate by m, and a sink candidate by m-1.
* reduce_perm_sum turns a permutation-sum instance over n targets into
  a two-manipulator problem with n+3 candidates whose manipulability is
  equivalent to solvability.
* to_pmrds / decode_pmrds translate balanced two-manipulator problems
  to and from permutation matrices with prescribed diagonal sums.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    InternalError,
    ManipulationProblem,
    ScoreVector,
    ValidationError,
    Vote,
    check_win,
    gaps,
    tally,
)
from .exact import PermSumInstance, feasible
from .matrices import ManipulationMatrix, matrix_to_votes, relaxed_to_strict


@dataclass(frozen=True)
class ReductionOutput:
    """Electorate realizing the reduction's target profile.

    ``target_scores`` lists the non-manipulator totals of all n+3
    candidates; the sink candidate's total y never exceeds the offset C.
    """

    votes: tuple[Vote, ...]
    c: int
    target_scores: ScoreVector
    d: int


def _boost_pair(i: int, m: int) -> tuple[Vote, Vote]:
    """Two votes over m+1 candidates that favour candidate i.

    Net effect: i gains m+1 points, every other regular candidate m,
    and the sink candidate m+1 gains m-1.
    """
    others = [c for c in range(1, m + 1) if c != i]
    first = Vote((i, m + 1, *others))
    second = Vote((*reversed(others), i, m + 1))
    return first, second


def lemma1_votes(targets: tuple[int, ...] | list[int]) -> tuple[tuple[Vote, ...], int]:
    """Electorate over m+1 candidates hitting ``targets`` plus offset.

    Candidate i's tally comes out to targets[i] + C, and the sink
    candidate m+1 stays at or below C.  Works for arbitrary integer
    targets: boost counts are shifted to be non-negative, and extra
    uniform boost rounds absorb the sink's total when needed.
    """
    m = len(targets)
    if m < 2:
        raise ValidationError(f"need at least 2 target candidates, got {m}")
    base = min(targets)
    shifted = [t - base for t in targets]
    spread = sum(shifted)
    # The sink collects m-1 points per pair while C grows by roughly m,
    # so enough uniform extra pairs push C past the sink's total.
    extra = max(0, -(-(base - spread) // (m + 1)))
    votes: list[Vote] = []
    for i in range(1, m + 1):
        for _ in range(shifted[i - 1] + extra):
            votes.extend(_boost_pair(i, m))
    pairs = spread + m * extra
    c = pairs * m - base + extra
    totals = tally(votes, m + 1)
    expected = tuple(t + c for t in targets) + (pairs * (m - 1),)
    if totals.scores != expected or pairs * (m - 1) > c:
        raise InternalError("boost-pair electorate missed its target profile")
    return tuple(votes), c


def reduce_perm_sum(
    inst: PermSumInstance,
) -> tuple[ManipulationProblem, ReductionOutput]:
    """Two-manipulator problem equivalent to the permutation-sum instance.

    Candidate 1 is the one to promote; candidates 2..n+1 carry the
    targets 2(n+2) - X_i, candidate n+2 is an unbeatable-looking blocker
    at 2(n+2), and candidate n+3 is the construction's sink.  A winning
    pair of ballots exists exactly when the instance is solvable.
    """
    n = inst.n
    width = 2 * (n + 2)
    targets = [0, *(width - x for x in inst.xs), width]
    votes, c = lemma1_votes(targets)
    target_scores = tally(votes, n + 3)
    problem = ManipulationProblem(target_scores, 1)
    return problem, ReductionOutput(votes, c, target_scores, 1)


@dataclass(frozen=True)
class PmrdsInstance:
    """Diagonal-sum prescription for an n-by-n permutation matrix.

    ``diag_sums[k - 1]`` is the required sum along the diagonal whose
    cells (r, c) satisfy r + (n - 1 - c) = k - 1, rows labelled 0..n-1
    top-down and columns n-1..0 left-to-right.
    """

    n: int
    diag_sums: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"matrix dimension must be >= 1, got {self.n}")
        if len(self.diag_sums) != 2 * self.n - 1:
            raise ValidationError(
                f"expected {2 * self.n - 1} diagonal sums, got {len(self.diag_sums)}"
            )
        if any(s < 0 for s in self.diag_sums):
            raise ValidationError("diagonal sums must be non-negative")
        if sum(self.diag_sums) != self.n:
            raise ValidationError(
                f"diagonal sums must total {self.n}, got {sum(self.diag_sums)}"
            )


def _two_manipulator_gaps(problem: ManipulationProblem) -> list[int]:
    """Non-d gaps for coalition size 2, in ascending candidate order."""
    gap_vector = gaps(problem, 2)
    return [gap_vector.gaps[c - 1] for c in range(1, problem.m + 1) if c != problem.d]


def to_pmrds(problem: ManipulationProblem) -> PmrdsInstance:
    """Encode a balanced two-manipulator problem as diagonal sums.

    Requires the non-d gaps to total n(n-1) for n = m - 1 (so the two
    ballots must fill every gap exactly) and each gap to fit on some
    diagonal, i.e. lie in 0..2n-2.
    """
    n = problem.m - 1
    if n < 1:
        raise ValidationError("need at least one rival candidate to encode")
    rival_gaps = _two_manipulator_gaps(problem)
    if sum(rival_gaps) != n * (n - 1):
        raise ValidationError(
            f"gap total {sum(rival_gaps)} violates the balance requirement {n * (n - 1)}"
        )
    sums = [0] * (2 * n - 1)
    for g in rival_gaps:
        if not (0 <= g <= 2 * n - 2):
            raise ValidationError(f"gap {g} fits on no diagonal (0..{2 * n - 2})")
        sums[g] += 1
    return PmrdsInstance(n, tuple(sums))


def _permutation_cells(solution: tuple[tuple[int, ...], ...], n: int) -> list[tuple[int, int]]:
    """Validate a 0/1 permutation matrix and list its 1-cells."""
    if len(solution) != n or any(len(row) != n for row in solution):
        raise ValidationError(f"solution must be {n}x{n}")
    cells = []
    for r, row in enumerate(solution):
        for c, entry in enumerate(row):
            if entry not in (0, 1):
                raise ValidationError(f"entry at ({r}, {c}) is not 0/1")
            if entry:
                cells.append((r, c))
    if len(cells) != n or len({r for r, _ in cells}) != n or len({c for _, c in cells}) != n:
        raise ValidationError("solution is not a permutation matrix")
    return cells


def decode_pmrds(
    solution: tuple[tuple[int, ...], ...],
    problem: ManipulationProblem,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Read two ballot score assignments off a permutation matrix.

    A 1-cell at (r, c) means some rival with gap r + (n - 1 - c) gets r
    from the first ballot and n - 1 - c from the second.  Cells on one
    diagonal are handed to the rivals sharing that gap in ascending
    candidate order.  Returns the two assignments over rivals in
    candidate order; together they fill every gap exactly.
    """
    inst = to_pmrds(problem)
    n = inst.n
    cells = _permutation_cells(solution, n)
    by_label: dict[int, list[tuple[int, int]]] = {}
    for r, c in sorted(cells):
        by_label.setdefault(r + (n - 1 - c), []).append((r, c))
    sums = [0] * (2 * n - 1)
    for label, group in by_label.items():
        sums[label] = len(group)
    if tuple(sums) != inst.diag_sums:
        raise ValidationError(
            f"diagonal sums {tuple(sums)} do not match the instance {inst.diag_sums}"
        )
    rival_gaps = _two_manipulator_gaps(problem)
    first = [0] * n
    second = [0] * n
    claimed: dict[int, int] = {}
    for idx, g in enumerate(rival_gaps):
        r, c = by_label[g][claimed.get(g, 0)]
        claimed[g] = claimed.get(g, 0) + 1
        first[idx] = r
        second[idx] = n - 1 - c
    return tuple(first), tuple(second)


def _assignments_to_matrix(
    problem: ManipulationProblem,
    first: tuple[int, ...],
    second: tuple[int, ...],
) -> ManipulationMatrix:
    """Build the two ballot rows, d taking the top value on both."""
    m = problem.m
    rivals = [c for c in range(1, m + 1) if c != problem.d]
    rows = []
    for assignment in (first, second):
        row = [0] * m
        row[problem.d - 1] = m - 1
        for idx, c in enumerate(rivals):
            row[c - 1] = assignment[idx]
        rows.append(tuple(row))
    return ManipulationMatrix(m, tuple(rows))


def assignment_votes(
    problem: ManipulationProblem,
    first: tuple[int, ...],
    second: tuple[int, ...],
) -> tuple[Vote, ...]:
    """Two ballots realizing the decoded score assignments."""
    return matrix_to_votes(_assignments_to_matrix(problem, first, second))


def solve_pmrds(
    problem: ManipulationProblem,
) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], tuple[int, ...]]] | None:
    """Find a permutation matrix meeting the instance's diagonal sums.

    Runs the exact two-manipulator search and transcribes its witness;
    balance forces the witness to fill each gap exactly, which is what
    pins every 1-cell to its diagonal.  Returns (matrix, (first,
    second)) or None when the instance has no solution.
    """
    inst = to_pmrds(problem)
    n = inst.n
    witness = feasible(problem, 2)
    if witness is None:
        return None
    strict = relaxed_to_strict(witness)
    rivals = [c for c in range(1, problem.m + 1) if c != problem.d]
    first = tuple(strict.rows[0][c - 1] for c in rivals)
    second = tuple(strict.rows[1][c - 1] for c in rivals)
    grid = [[0] * n for _ in range(n)]
    for idx in range(n):
        grid[first[idx]][n - 1 - second[idx]] = 1
    matrix = tuple(tuple(row) for row in grid)
    final = [
        problem.base.scores[c - 1] + first[idx] + second[idx]
        for idx, c in enumerate(rivals)
    ]
    target = problem.base.scores[problem.d - 1] + 2 * (problem.m - 1)
    if any(f != target for f in final):
        raise InternalError("balanced witness failed to fill every gap exactly")
    return matrix, (first, second)
