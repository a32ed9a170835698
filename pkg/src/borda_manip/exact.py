"""Exact oracles: minimum coalition size and Permutation Sum solving.

The coalition question is solved as a combinatorial search over relaxed
placements.  Column d is fixed to n copies of the top value m-1: giving
d first place on every ballot can never hurt d, so the normalization
keeps completeness while shrinking the space.  What remains is whether
n copies of each value 0..m-2 fit into the m-1 other columns, n values
per column, without any column sum exceeding its gap.

The search places values in descending order into columns sorted by
ascending gap.  A batch of greedy probes (two deterministic, the rest
randomized from a fixed seed, so behaviour is reproducible) runs before
the tree search and settles most satisfiable instances outright.
Absence is certified only by exhausting the tree; a configurable node
budget aborts with an explicit unknown outcome (an exception) rather
than ever reporting a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    InternalError,
    ManipulationProblem,
    ValidationError,
    check_win,
    gaps,
)
from .generators import SplitMix64
from .matrices import RelaxedMatrix

# Optimization loops are provably finite; this span only guards bugs.
_SEARCH_SPAN = 65536


class SearchBudgetExceeded(Exception):
    """Search aborted at the node budget: the answer is unknown, not no."""

    def __init__(self, nodes: int):
        super().__init__(f"search aborted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class OptimalResult:
    """Minimal coalition size with a witnessing relaxed placement."""

    n_opt: int
    witness: RelaxedMatrix


def lower_bound(problem: ManipulationProblem) -> int:
    """Smallest coalition size not excluded by counting arguments.

    Two relaxations: d's final score must reach every rival's base
    score, and the non-d gaps must absorb the mandatory value mass
    n(m-1)(m-2)/2.  Never exceeds the true optimum.
    """
    m = problem.m
    if m == 1:
        return 0
    scores = problem.base.scores
    s_d = scores[problem.d - 1]
    reach = -((s_d - max(scores)) // (m - 1))
    others = sum(scores) - s_d
    # n * m(m-1)/2 >= sum of rival scores - (m-1) s_d, rearranged from
    # the mass constraint over the rival gaps.
    mass = -(2 * ((m - 1) * s_d - others) // (m * (m - 1)))
    return max(0, reach, mass)


def _pool_bounds_ok(
    rem_gap: list[int],
    rem_slots: list[int],
    v: int,
    k: int,
    n: int,
) -> bool:
    """Necessary conditions for completing the current partial placement.

    The unplaced pool holds k copies of value v plus n copies of every
    value below v.  Three counting checks, all against that pool: each
    column, and each prefix of the gap-sorted column array, must be able
    to stay within its gaps even when handed the globally smallest
    values; and the columns' combined absorbable mass must cover the
    pool.  Prefixes matter because tight columns compete for the same
    few small values.
    """
    if v < 0:
        return True
    low = n * v
    low_sum = n * v * (v - 1) // 2
    mass = k * v + low_sum
    capacity = 0
    prefix_slots = 0
    prefix_gap = 0
    for c in range(len(rem_gap)):
        t = rem_slots[c]
        if t == 0:
            continue
        g = rem_gap[c]
        if t <= low:
            q, r = divmod(t, n)
            smallest = n * q * (q - 1) // 2 + r * q
        else:
            smallest = low_sum + (t - low) * v
        if smallest > g:
            return False
        prefix_slots += t
        prefix_gap += g
        if prefix_slots <= low:
            q, r = divmod(prefix_slots, n)
            smallest = n * q * (q - 1) // 2 + r * q
        else:
            smallest = low_sum + (prefix_slots - low) * v
        if smallest > prefix_gap:
            return False
        if t <= k:
            largest = t * v
        else:
            q, r = divmod(t - k, n)
            largest = k * v + n * (q * v - q * (q + 1) // 2) + r * (v - q - 1)
        capacity += largest if largest < g else g
    return capacity >= mass


def _greedy_fill(caps: list[int], n: int, nvals: int, by_average: bool) -> list[list[int]] | None:
    """One deterministic greedy pass; a completed fill is a witness.

    Values descend; each copy goes to the open column with the largest
    remaining gap (or gap per remaining slot), provided the value fits
    there.  Cheap, and it succeeds on most satisfiable instances, which
    spares the backtracking search for the genuinely tight ones.
    """
    k_cols = len(caps)
    rem_gap = list(caps)
    rem_slots = [n] * k_cols
    asg = [[0] * k_cols for _ in range(nvals)]
    for v in range(nvals - 1, -1, -1):
        for _ in range(n):
            best = -1
            for c in range(k_cols):
                s = rem_slots[c]
                if s == 0:
                    continue
                if best == -1:
                    best = c
                    continue
                if by_average:
                    better = rem_gap[c] * rem_slots[best] > rem_gap[best] * s
                else:
                    better = rem_gap[c] > rem_gap[best]
                if better:
                    best = c
            if best == -1 or rem_gap[best] < v:
                return None
            rem_gap[best] -= v
            rem_slots[best] -= 1
            asg[v][best] += 1
    return asg


_PROBE_SEED = 0xB0DA_5EED
_PROBE_ROUNDS = 48


def _random_fill(caps: list[int], n: int, nvals: int, rng: SplitMix64) -> list[list[int]] | None:
    """Randomized greedy pass: columns drawn with probability ~ slack.

    Restarting this from a fixed seed reaches fills the deterministic
    orders miss, at probe cost rather than search cost.
    """
    k_cols = len(caps)
    rem_gap = list(caps)
    rem_slots = [n] * k_cols
    asg = [[0] * k_cols for _ in range(nvals)]
    weights = [0] * k_cols
    for v in range(nvals - 1, -1, -1):
        for _ in range(n):
            total = 0
            for c in range(k_cols):
                w = 0
                if rem_slots[c] > 0 and rem_gap[c] >= v:
                    w = rem_gap[c] - v + 1
                weights[c] = w
                total += w
            if total == 0:
                return None
            pick = rng.below(total)
            for c in range(k_cols):
                w = weights[c]
                if pick < w:
                    best = c
                    break
                pick -= w
            rem_gap[best] -= v
            rem_slots[best] -= 1
            asg[v][best] += 1
    return asg


def _search(
    caps: list[int],
    n: int,
    nvals: int,
    node_budget: int | None,
) -> list[list[int]] | None:
    """Place n copies of each value 0..nvals-1 into len(caps) columns.

    Columns take exactly n values each; column c's sum must stay within
    caps[c].  Returns the assignment grid or None.  Two greedy probes
    run first; the iterative backtracking search behind them scans
    columns from the loose end of the gap-sorted array, copies of one
    value visiting columns in nonincreasing index, and a column whose
    (gap, slots) state equals the previously tried one is skipped as
    symmetric.
    """
    k_cols = len(caps)
    for by_average in (False, True):
        greedy = _greedy_fill(caps, n, nvals, by_average)
        if greedy is not None:
            return greedy
    rng = SplitMix64(_PROBE_SEED)
    for _ in range(_PROBE_ROUNDS):
        probe = _random_fill(caps, n, nvals, rng)
        if probe is not None:
            return probe
    rem_gap = list(caps)
    rem_slots = [n] * k_cols
    asg = [[0] * k_cols for _ in range(nvals)]
    if not _pool_bounds_ok(rem_gap, rem_slots, nvals - 1, n, n):
        return None
    nodes = 1
    # Frame: value, copies left of it, next column to scan, column the
    # frame currently occupies (-1 until placed).
    stack = [[nvals - 1, n, k_cols - 1, -1]]
    while stack:
        frame = stack[-1]
        v, k, col, placed = frame
        last_g = last_s = -1
        if placed >= 0:
            # Back after a failed subtree: undo, then skip columns whose
            # state matches the one that just failed.
            rem_gap[placed] += v
            rem_slots[placed] += 1
            asg[v][placed] -= 1
            last_g, last_s = rem_gap[placed], rem_slots[placed]
            frame[3] = -1
        pushed = False
        while col >= 0:
            g, s = rem_gap[col], rem_slots[col]
            if s > 0 and g >= v and (g != last_g or s != last_s):
                rem_gap[col] -= v
                rem_slots[col] -= 1
                asg[v][col] += 1
                if k > 1:
                    nv, nk, nstart = v, k - 1, col
                else:
                    nv, nk, nstart = v - 1, n, k_cols - 1
                if _pool_bounds_ok(rem_gap, rem_slots, nv, nk, n):
                    if nv < 0:
                        return asg
                    frame[2], frame[3] = col - 1, col
                    if node_budget is not None and nodes >= node_budget:
                        raise SearchBudgetExceeded(nodes)
                    nodes += 1
                    stack.append([nv, nk, nstart, -1])
                    pushed = True
                    break
                rem_gap[col] += v
                rem_slots[col] += 1
                asg[v][col] -= 1
                last_g, last_s = g, s
            col -= 1
        if not pushed:
            stack.pop()
    return None


def feasible(
    problem: ManipulationProblem,
    n: int,
    node_budget: int | None = None,
) -> RelaxedMatrix | None:
    """Witness placement for coalition size n, or None if none exists.

    Raises SearchBudgetExceeded when the node budget runs out before the
    answer is decided.
    """
    if n < 0:
        raise ValidationError(f"coalition size must be >= 0, got {n}")
    m = problem.m
    d = problem.d
    zero_grid = tuple(tuple([0] * m) for _ in range(m))
    if n == 0:
        return RelaxedMatrix(0, m, zero_grid) if check_win(problem.base, d) else None
    if m == 1:
        counts = [[n]]
        return RelaxedMatrix(n, 1, tuple(tuple(r) for r in counts))
    gap_vector = gaps(problem, n)
    order = sorted(
        (c for c in range(1, m + 1) if c != d),
        key=lambda c: (gap_vector.gaps[c - 1], c),
    )
    caps = [gap_vector.gaps[c - 1] for c in order]
    if caps[0] < 0:
        return None
    asg = _search(caps, n, m - 1, node_budget)
    if asg is None:
        return None
    counts = [[0] * m for _ in range(m)]
    counts[m - 1][d - 1] = n
    for v in range(m - 1):
        for idx, c in enumerate(order):
            counts[v][c - 1] = asg[v][idx]
    return RelaxedMatrix(n, m, tuple(tuple(row) for row in counts))


def optimal(
    problem: ManipulationProblem,
    node_budget: int | None = None,
) -> OptimalResult:
    """Smallest coalition size with a witness, scanning up from the bound.

    Feasibility is monotone in n (a witness extends by one more ballot
    ranking d first and the rest in reverse score order), so the first
    success is optimal.  The node budget applies to each size probe.
    """
    start = lower_bound(problem)
    for n in range(start, start + _SEARCH_SPAN):
        witness = feasible(problem, n, node_budget)
        if witness is not None:
            return OptimalResult(n, witness)
    raise InternalError("no feasible coalition found within the search span")


@dataclass(frozen=True)
class PermSumInstance:
    """Sorted targets X_i for the two-permutation sum problem."""

    xs: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.xs)
        if n == 0:
            raise ValidationError("instance must have at least one target")
        if any(self.xs[i] > self.xs[i + 1] for i in range(n - 1)):
            raise ValidationError(f"targets must be nondecreasing, got {self.xs}")
        if any(not (2 <= x <= 2 * n) for x in self.xs):
            raise ValidationError(f"targets must lie in [2, {2 * n}], got {self.xs}")
        if sum(self.xs) != n * (n + 1):
            raise ValidationError(
                f"targets must sum to {n * (n + 1)}, got {sum(self.xs)}"
            )

    @property
    def n(self) -> int:
        return len(self.xs)


def solve_perm_sum(
    inst: PermSumInstance,
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two permutations of 1..n with position-wise sums X_i, or None.

    Exhaustive over the first permutation in lexicographic order; the
    second is forced position by position and only checked for clashes.
    """
    n = inst.n
    sigma = [0] * n
    pi = [0] * n
    used_s = [False] * (n + 1)
    used_p = [False] * (n + 1)

    def extend(i: int) -> bool:
        if i == n:
            return True
        for s in range(1, n + 1):
            if used_s[s]:
                continue
            p = inst.xs[i] - s
            if 1 <= p <= n and not used_p[p]:
                sigma[i], pi[i] = s, p
                used_s[s] = used_p[p] = True
                if extend(i + 1):
                    return True
                used_s[s] = used_p[p] = False
        return False

    if extend(0):
        return tuple(sigma), tuple(pi)
    return None
