"""Manipulation matrices and the relaxed-to-strict conversion.

A strict manipulation matrix has one row per manipulator ballot; every
row is a permutation of 0..m-1 and entry (i, j) is the score ballot i
gives candidate j.  The relaxed form forgets row structure and keeps
only how many copies of each value land in each column: n copies of
every value overall, n entries per column.  Any relaxed placement can be
rebuilt into ballot rows with identical column sums by peeling off one
perfect value-to-column matching per row; the matching always exists
because the remaining multigraph stays regular.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import GapVector, InternalError, ValidationError, Vote


@dataclass(frozen=True)
class ManipulationMatrix:
    """Ballot-by-candidate score grid; row i is manipulator i's ballot."""

    m: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        expected = list(range(self.m))
        for i, row in enumerate(self.rows):
            if sorted(row) != expected:
                raise ValidationError(
                    f"row {i + 1} must be a permutation of 0..{self.m - 1}, got {row}"
                )

    @property
    def n(self) -> int:
        return len(self.rows)

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(row[j] for row in self.rows) for j in range(self.m))


@dataclass(frozen=True)
class RelaxedMatrix:
    """Multiplicity grid: counts[v][j] copies of value v in column j+1.

    Only shape and non-negativity are enforced at construction so that
    invariant-violating grids can still be built and diagnosed; use
    validate_relaxed for the count and gap invariants.
    """

    n: int
    m: int
    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValidationError(f"manipulator count must be >= 0, got {self.n}")
        if len(self.counts) != self.m:
            raise ValidationError(
                f"counts grid must have {self.m} value rows, got {len(self.counts)}"
            )
        for v, row in enumerate(self.counts):
            if len(row) != self.m:
                raise ValidationError(
                    f"value row {v} must have {self.m} columns, got {len(row)}"
                )
            if any(c < 0 for c in row):
                raise ValidationError(f"negative multiplicity in value row {v}")

    def count(self, value: int, column: int) -> int:
        """Copies of ``value`` placed in 1-based ``column``."""
        return self.counts[value][column - 1]

    def column_sums(self) -> tuple[int, ...]:
        return tuple(
            sum(v * self.counts[v][j] for v in range(self.m)) for j in range(self.m)
        )

    def column_entries(self) -> tuple[int, ...]:
        """Number of entries (with multiplicity) per column."""
        return tuple(sum(self.counts[v][j] for v in range(self.m)) for j in range(self.m))


@dataclass(frozen=True)
class InvariantCheck:
    """Outcome of one relaxed-matrix invariant: pass flag plus witness.

    The witness is the first offender in scanning order: a value for the
    copies-per-value check, a 1-based column for the other two.
    """

    ok: bool
    witness: int | None = None


@dataclass(frozen=True)
class RelaxedDiagnostics:
    """Per-invariant report from validate_relaxed."""

    value_counts: InvariantCheck
    column_entries: InvariantCheck
    column_sums: InvariantCheck

    @property
    def ok(self) -> bool:
        return self.value_counts.ok and self.column_entries.ok and self.column_sums.ok


def validate_relaxed(r: RelaxedMatrix, gap_vector: GapVector | None = None) -> RelaxedDiagnostics:
    """Check the three relaxed-matrix invariants, reporting each separately.

    The column-sum check compares against ``gap_vector`` and passes
    vacuously when no gaps are supplied.
    """
    value_counts = InvariantCheck(True)
    for v in range(r.m):
        if sum(r.counts[v]) != r.n:
            value_counts = InvariantCheck(False, v)
            break

    column_entries = InvariantCheck(True)
    entries = r.column_entries()
    for j, e in enumerate(entries):
        if e != r.n:
            column_entries = InvariantCheck(False, j + 1)
            break

    column_sums = InvariantCheck(True)
    if gap_vector is not None:
        if gap_vector.m != r.m:
            raise ValidationError(
                f"gap vector has {gap_vector.m} candidates, matrix has {r.m}"
            )
        sums = r.column_sums()
        for j in range(r.m):
            if sums[j] > gap_vector.gaps[j]:
                column_sums = InvariantCheck(False, j + 1)
                break

    return RelaxedDiagnostics(value_counts, column_entries, column_sums)


def _match_round(counts: list[list[int]], m: int) -> list[int]:
    """One perfect matching of values to columns over positive counts.

    Returns col_value[j] = value matched to column j.  Values are
    processed in ascending order and augmenting paths try columns in
    ascending index, so the matching is deterministic.
    """
    col_value = [-1] * m

    def augment(v: int, visited: list[bool]) -> bool:
        for j in range(m):
            if counts[v][j] > 0 and not visited[j]:
                visited[j] = True
                if col_value[j] == -1 or augment(col_value[j], visited):
                    col_value[j] = v
                    return True
        return False

    for v in range(m):
        if not augment(v, [False] * m):
            raise InternalError(
                f"no perfect matching for value {v}; regularity should forbid this"
            )
    return col_value


def relaxed_to_strict(r: RelaxedMatrix) -> ManipulationMatrix:
    """Rebuild ballot rows from a relaxed placement, column sums preserved.

    Peels one value-to-column perfect matching per manipulator off the
    multiplicity grid; after each round the grid is again regular, so a
    perfect matching keeps existing.

    Raises ValidationError if the count invariants fail, and
    InternalError if a matching round fails (unreachable on valid input).
    """
    diag = validate_relaxed(r)
    if not diag.value_counts.ok:
        raise ValidationError(
            f"value {diag.value_counts.witness} does not occur exactly {r.n} times"
        )
    if not diag.column_entries.ok:
        raise ValidationError(
            f"column {diag.column_entries.witness} does not hold exactly {r.n} entries"
        )

    counts = [list(row) for row in r.counts]
    rows = []
    for _ in range(r.n):
        col_value = _match_round(counts, r.m)
        for j, v in enumerate(col_value):
            counts[v][j] -= 1
        rows.append(tuple(col_value))
    return ManipulationMatrix(r.m, tuple(rows))


def matrix_to_votes(b: ManipulationMatrix) -> tuple[Vote, ...]:
    """Read each row back as a ballot: higher score means better place."""
    votes = []
    for row in b.rows:
        ranking = [0] * b.m
        for j, v in enumerate(row):
            ranking[b.m - 1 - v] = j + 1
        votes.append(Vote(tuple(ranking)))
    return tuple(votes)


# ---------------------------------------------------------------------------
# Serialization.  Both layouts share the "n m" header line.  Strict body:
# n rows of m integers.  Relaxed body: one line per column, "j: v^count ...",
# entries in descending value order, zero counts omitted.
# ---------------------------------------------------------------------------


def format_strict(b: ManipulationMatrix) -> str:
    lines = [f"{b.n} {b.m}"]
    lines.extend(" ".join(str(v) for v in row) for row in b.rows)
    return "\n".join(lines) + "\n"


def parse_strict(text: str) -> ManipulationMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValidationError("matrix file is empty")
    header = lines[0].split()
    if len(header) != 2:
        raise ValidationError(f"matrix header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ValidationError(f"matrix header must be integers, got {lines[0]!r}") from exc
    if len(lines) - 1 != n:
        raise ValidationError(f"header promises {n} rows, found {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:], start=1):
        try:
            row = tuple(int(tok) for tok in line.split())
        except ValueError as exc:
            raise ValidationError(f"row {i}: expected integers, got {line!r}") from exc
        if len(row) != m:
            raise ValidationError(f"row {i} has {len(row)} entries, expected {m}")
        rows.append(row)
    return ManipulationMatrix(m, tuple(rows))


def format_relaxed(r: RelaxedMatrix) -> str:
    lines = [f"{r.n} {r.m}"]
    for j in range(r.m):
        parts = [
            f"{v}^{r.counts[v][j]}" for v in range(r.m - 1, -1, -1) if r.counts[v][j] > 0
        ]
        lines.append(f"{j + 1}: " + " ".join(parts) if parts else f"{j + 1}:")
    return "\n".join(lines) + "\n"


def parse_relaxed(text: str) -> RelaxedMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValidationError("matrix file is empty")
    header = lines[0].split()
    if len(header) != 2:
        raise ValidationError(f"matrix header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ValidationError(f"matrix header must be integers, got {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ValidationError(f"header promises {m} column lines, found {len(lines) - 1}")
    counts = [[0] * m for _ in range(m)]
    seen = set()
    for line in lines[1:]:
        head, sep, body = line.partition(":")
        if not sep:
            raise ValidationError(f"column line missing ':': {line!r}")
        try:
            j = int(head.strip())
        except ValueError as exc:
            raise ValidationError(f"bad column label in {line!r}") from exc
        if not (1 <= j <= m) or j in seen:
            raise ValidationError(f"column label {j} out of range or repeated")
        seen.add(j)
        for token in body.split():
            value_s, sep2, count_s = token.partition("^")
            try:
                v = int(value_s)
                c = int(count_s) if sep2 else 1
            except ValueError as exc:
                raise ValidationError(f"bad entry {token!r} in column {j}") from exc
            if not (0 <= v < m):
                raise ValidationError(f"value {v} out of range 0..{m - 1} in column {j}")
            if c < 0:
                raise ValidationError(f"negative count in entry {token!r}")
            counts[v][j - 1] += c
    return RelaxedMatrix(n, m, tuple(tuple(row) for row in counts))
