"""Core election types and Borda scoring.

Candidates are the integers 1..m.  A ballot ranking candidate c in k-th
place (k = 1 is first) awards c exactly m - k points, so first place is
worth m - 1 and last place 0.  The preferred candidate only needs to tie
the best score: ties are resolved in its favour throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

# Scores are kept within signed 64-bit range so results are portable to
# fixed-width implementations.
MAX_SCORE = 2**63 - 1


class ValidationError(ValueError):
    """Raised when input data violates a documented invariant."""


class InternalError(RuntimeError):
    """Raised when a supposedly unreachable internal state is hit."""


@dataclass(frozen=True)
class Vote:
    """A strict ranking of all candidates, best first.

    ``ranking[k]`` is the candidate in place k + 1, so it scores
    ``m - 1 - k`` points.
    """

    ranking: tuple[int, ...]

    def __post_init__(self) -> None:
        m = len(self.ranking)
        if sorted(self.ranking) != list(range(1, m + 1)):
            raise ValidationError(
                f"vote must rank each of 1..{m} exactly once, got {self.ranking}"
            )

    @property
    def m(self) -> int:
        return len(self.ranking)

    def points(self) -> tuple[int, ...]:
        """Points awarded to candidates 1..m, in candidate order."""
        m = len(self.ranking)
        pts = [0] * m
        for place, cand in enumerate(self.ranking):
            pts[cand - 1] = m - 1 - place
        return tuple(pts)


@dataclass(frozen=True)
class ScoreVector:
    """Borda totals for candidates 1..m, in candidate order."""

    scores: tuple[int, ...]

    def __post_init__(self) -> None:
        for i, s in enumerate(self.scores):
            if not (0 <= s <= MAX_SCORE):
                raise ValidationError(
                    f"score of candidate {i + 1} out of range [0, 2^63 - 1]: {s}"
                )

    @property
    def m(self) -> int:
        return len(self.scores)

    def score_of(self, candidate: int) -> int:
        return self.scores[candidate - 1]


@dataclass(frozen=True)
class GapVector:
    """Per-candidate slack against the preferred candidate's final score.

    For coalition size n, candidate i's gap is s(d) + n(m - 1) - s(i):
    the total number of points i may still receive without overtaking d
    when all n manipulators rank d first.  The gap of d itself is
    n(m - 1).  A negative gap means d cannot win with this n.
    """

    n: int
    gaps: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.gaps)


@dataclass(frozen=True)
class ManipulationProblem:
    """Non-manipulator totals plus the candidate the coalition promotes."""

    base: ScoreVector
    d: int

    def __post_init__(self) -> None:
        if not (1 <= self.d <= self.base.m):
            raise ValidationError(
                f"preferred candidate {self.d} not in 1..{self.base.m}"
            )

    @property
    def m(self) -> int:
        return self.base.m


def tally(votes: tuple[Vote, ...] | list[Vote], m: int) -> ScoreVector:
    """Sum Borda points over ``votes`` for an m-candidate election.

    Raises ValidationError, identifying the offending vote index, if any
    vote ranks a different candidate set than 1..m.
    """
    totals = [0] * m
    for idx, vote in enumerate(votes):
        if vote.m != m:
            raise ValidationError(
                f"vote {idx + 1} ranks {vote.m} candidates, expected {m}"
            )
        for place, cand in enumerate(vote.ranking):
            totals[cand - 1] += m - 1 - place
    if any(t > MAX_SCORE for t in totals):
        raise ValidationError("score total exceeds 2^63 - 1")
    return ScoreVector(tuple(totals))


def apply_votes(base: ScoreVector, votes: tuple[Vote, ...] | list[Vote]) -> ScoreVector:
    """Return ``base`` plus the tally of ``votes``."""
    added = tally(votes, base.m)
    totals = tuple(b + a for b, a in zip(base.scores, added.scores))
    if any(t > MAX_SCORE for t in totals):
        raise ValidationError("score total exceeds 2^63 - 1")
    return ScoreVector(totals)


def check_win(scores: ScoreVector, d: int) -> bool:
    """True when candidate d is a co-winner (no one scores strictly more)."""
    if not (1 <= d <= scores.m):
        raise ValidationError(f"preferred candidate {d} not in 1..{scores.m}")
    return scores.score_of(d) >= max(scores.scores)


def gaps(problem: ManipulationProblem, n: int) -> GapVector:
    """Gap vector of ``problem`` for a coalition of n manipulators."""
    if n < 0:
        raise ValidationError(f"coalition size must be >= 0, got {n}")
    target = problem.base.score_of(problem.d) + n * (problem.m - 1)
    return GapVector(n, tuple(target - s for s in problem.base.scores))


# ---------------------------------------------------------------------------
# File formats.
#
# Election file: first line "m k", then k lines, each a vote listed best
# to worst as space-separated candidate numbers.
#
# Score file: first line "m d", second line the m space-separated totals.
# ---------------------------------------------------------------------------


def _int_fields(line: str, label: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise ValidationError(f"{label}: expected integers, got {line!r}") from exc


def parse_election(text: str) -> tuple[int, tuple[Vote, ...]]:
    """Parse an election file body into (m, votes)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValidationError("election file is empty")
    header = _int_fields(lines[0], "election header")
    if len(header) != 2:
        raise ValidationError(f"election header must be 'm k', got {lines[0]!r}")
    m, k = header
    if m < 1 or k < 0:
        raise ValidationError(f"election header out of range: m={m}, k={k}")
    if len(lines) - 1 != k:
        raise ValidationError(
            f"election header promises {k} votes, found {len(lines) - 1}"
        )
    votes = []
    for idx, line in enumerate(lines[1:], start=1):
        fields = _int_fields(line, f"vote {idx}")
        if len(fields) != m or sorted(fields) != list(range(1, m + 1)):
            raise ValidationError(
                f"vote {idx} must be a permutation of 1..{m}, got {line!r}"
            )
        votes.append(Vote(tuple(fields)))
    return m, tuple(votes)


def format_election(m: int, votes: tuple[Vote, ...] | list[Vote]) -> str:
    """Serialize votes to the election file format."""
    for idx, vote in enumerate(votes):
        if vote.m != m:
            raise ValidationError(
                f"vote {idx + 1} ranks {vote.m} candidates, expected {m}"
            )
    lines = [f"{m} {len(votes)}"]
    lines.extend(" ".join(str(c) for c in v.ranking) for v in votes)
    return "\n".join(lines) + "\n"


def parse_scores(text: str) -> ManipulationProblem:
    """Parse a score file body into a ManipulationProblem."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2:
        raise ValidationError("score file must have exactly two non-empty lines")
    header = _int_fields(lines[0], "score header")
    if len(header) != 2:
        raise ValidationError(f"score header must be 'm d', got {lines[0]!r}")
    m, d = header
    if m < 1:
        raise ValidationError(f"candidate count must be >= 1, got {m}")
    scores = _int_fields(lines[1], "score line")
    if len(scores) != m:
        raise ValidationError(f"expected {m} scores, got {len(scores)}")
    return ManipulationProblem(ScoreVector(tuple(scores)), d)


def format_scores(problem: ManipulationProblem) -> str:
    """Serialize a ManipulationProblem to the score file format."""
    scores = " ".join(str(s) for s in problem.base.scores)
    return f"{problem.m} {problem.d}\n{scores}\n"
