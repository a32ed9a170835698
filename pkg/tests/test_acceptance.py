"""Release gate: the eleven shipping criteria for this package.

One test per criterion, numbered; run with -v to get one pass/fail line
each.  Tolerances are pinned in the assertions.  The desk-scale
campaign (criteria 10 and 11) runs the full default experiment twice,
so this module dominates the suite's runtime.
"""

import random
import time

import pytest

from borda_manip.core import (
    ManipulationProblem,
    ScoreVector,
    Vote,
    apply_votes,
    check_win,
    tally,
)
from borda_manip.exact import (
    PermSumInstance,
    SearchBudgetExceeded,
    feasible,
    optimal,
    solve_perm_sum,
)
from borda_manip.generators import (
    GenSpec,
    SplitMix64,
    derive_seed,
    gen_urn_trace,
)
from borda_manip.hardness import (
    assignment_votes,
    decode_pmrds,
    lemma1_votes,
    reduce_perm_sum,
    to_pmrds,
)
from borda_manip.harness import (
    DEFAULT_NODE_BUDGET,
    ExperimentConfig,
    run_experiment,
    trial_problem,
)
from borda_manip.heuristics import average_fit, largest_fit, reverse
from borda_manip.matrices import RelaxedMatrix, relaxed_to_strict

from oracles import enumerate_regular_grids

EXAMPLE = ManipulationProblem(ScoreVector((3, 4, 5, 0)), 4)

CAMPAIGN = dict(
    models=("uniform", "urn"),
    m_values=(4, 8, 16),
    voter_counts=(4, 8, 16, 32, 64, 128),
    trials=200,
    seed=7,
    record_times=False,
)


def best_of(fn, reps=5):
    """Best wall time in ms over a few repetitions, plus the last result."""
    best = float("inf")
    result = None
    for _ in range(reps):
        start = time.perf_counter_ns()
        result = fn()
        best = min(best, (time.perf_counter_ns() - start) / 1e6)
    return result, best


@pytest.fixture(scope="module")
def campaign(tmp_path_factory):
    out = tmp_path_factory.mktemp("campaign") / "results.csv"
    config = ExperimentConfig(output=out, **CAMPAIGN)
    start = time.perf_counter()
    records, summary = run_experiment(config)
    elapsed = time.perf_counter() - start
    return records, summary, out.read_bytes(), elapsed


def test_criterion_01_worked_examples_exact_and_fast():
    rev, t_rev = best_of(lambda: reverse(EXAMPLE))
    assert rev.n_used == 3
    assert apply_votes(EXAMPLE.base, rev.ballots).scores == (7, 7, 7, 9)

    lf, t_lf = best_of(lambda: largest_fit(EXAMPLE))
    assert lf.n_used == 2
    assert apply_votes(EXAMPLE.base, lf.ballots).scores == (6, 6, 6, 6)

    opt, t_opt = best_of(lambda: optimal(EXAMPLE))
    assert opt.n_opt == 2

    assert max(t_rev, t_lf, t_opt) < 1.0, "worked examples must run in under 1 ms"
    print(
        f"criterion 1: reverse=3 final (7,7,7,9); largest fit=2 final (6,6,6,6); "
        f"opt=2; slowest {max(t_rev, t_lf, t_opt):.3f} ms"
    )


def test_criterion_02_conversion_suite():
    start = time.perf_counter()

    def check(r: RelaxedMatrix):
        b = relaxed_to_strict(r)
        assert b.n == r.n
        assert b.column_sums() == r.column_sums()
        expected = list(range(r.m))
        for row in b.rows:
            assert sorted(row) == expected

    rng = random.Random(20)
    for _ in range(1000):
        m = rng.randint(1, 10)
        n = rng.randint(1, 10)
        counts = [[0] * m for _ in range(m)]
        for _ in range(n):
            perm = list(range(m))
            rng.shuffle(perm)
            for j, v in enumerate(perm):
                counts[v][j] += 1
        check(RelaxedMatrix(n, m, tuple(tuple(row) for row in counts)))

    grids = 0
    for m in range(1, 5):
        for n in range(1, 5):
            for grid in enumerate_regular_grids(n, m):
                grids += 1
                check(RelaxedMatrix(n, m, grid))

    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    print(
        f"criterion 2: 1000 random + {grids} exhaustive conversions clean "
        f"in {elapsed:.2f} s"
    )


def test_criterion_03_reverse_within_one_of_optimal():
    known = 0
    unknown = 0
    violations = 0
    for t in range(5200):
        seed = derive_seed(2024, t)
        r = SplitMix64(seed)
        m = 2 + r.below(7)  # 2..8 candidates
        voters = 1 + r.below(64)  # 1..64 voters
        problem = trial_problem("uniform", m, voters, seed)
        rev = reverse(problem)
        try:
            opt = optimal(problem, DEFAULT_NODE_BUDGET).n_opt
        except SearchBudgetExceeded:
            unknown += 1
            continue
        known += 1
        if rev.n_used > opt + 1:
            violations += 1
    assert known >= 5000
    assert violations == 0
    print(
        f"criterion 3: {known} known-optimum instances, {unknown} unknown, "
        f"{violations} violations of reverse <= opt+1"
    )


def test_criterion_04_two_bloc_regression():
    votes = [Vote((1, 2, 3, 4))] * 72
    base = tally(votes, 4)
    assert base.scores == (216, 144, 72, 0)
    problem = ManipulationProblem(base, 4)
    rev_n = reverse(problem).n_used
    lf_n = largest_fit(problem).n_used
    assert rev_n == 72
    assert lf_n >= 73
    print(f"criterion 4: reverse={rev_n}, largest fit={lf_n} (>= 73)")


def test_criterion_05_fit_split_regression():
    problem = ManipulationProblem(ScoreVector((41, 34, 30, 27, 27, 26, 25, 14)), 8)
    opt = optimal(problem).n_opt
    lf_n = largest_fit(problem).n_used
    af_n = average_fit(problem).n_used
    assert lf_n == opt
    assert af_n == opt + 1
    print(f"criterion 5: opt={opt}, largest fit={lf_n}, average fit={af_n}")


def all_instances(n):
    total = n * (n + 1)

    def grow(prefix, lo, left):
        if len(prefix) == n:
            if left == 0:
                yield tuple(prefix)
            return
        for x in range(lo, 2 * n + 1):
            if x <= left:
                yield from grow(prefix + [x], x, left - x)

    yield from grow([], 2, total)


def test_criterion_06_reduction_round_trip():
    start = time.perf_counter()
    checked = 0
    for n in range(1, 6):
        for xs in all_instances(n):
            inst = PermSumInstance(xs)
            problem, _ = reduce_perm_sum(inst)
            direct = solve_perm_sum(inst) is not None
            via_manipulation = feasible(problem, 2) is not None
            assert direct == via_manipulation, xs
            checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    print(f"criterion 6: {checked} instances agree in {elapsed:.2f} s")


def test_criterion_07_score_targeting_votes():
    rng = random.Random(500)
    for _ in range(500):
        m = rng.randint(2, 10)
        targets = tuple(rng.randint(-20, 20) for _ in range(m))
        votes, c = lemma1_votes(targets)
        totals = tally(votes, m + 1)
        assert totals.scores[:m] == tuple(t + c for t in targets)
        assert totals.scores[m] <= c
    print("criterion 7: 500 random target profiles hit exactly, sink within offset")


def test_criterion_08_diagonal_sum_example():
    problem = ManipulationProblem(ScoreVector((4, 4, 6, 6, 0)), 5)
    inst = to_pmrds(problem)
    assert inst.diag_sums == (0, 0, 2, 0, 2, 0, 0)
    solution = (
        (0, 1, 0, 0),
        (1, 0, 0, 0),
        (0, 0, 0, 1),
        (0, 0, 1, 0),
    )
    first, second = decode_pmrds(solution, problem)
    assert first == (1, 3, 0, 2)
    assert second == (3, 1, 2, 0)
    after = apply_votes(problem.base, list(assignment_votes(problem, first, second)))
    assert check_win(after, 5)
    print(f"criterion 8: diagonal sums {inst.diag_sums}, decoded {first} / {second}")


def test_criterion_09_urn_second_vote_law():
    copies = 0
    trials = 100_000
    for t in range(trials):
        draws = gen_urn_trace(GenSpec("urn", 3, 2, derive_seed(31337, t)))
        if draws[1].copied_from is not None:
            copies += 1
    fraction = copies / trials
    assert abs(fraction - 0.5) < 0.01
    print(f"criterion 9: second-vote repeat fraction {fraction:.4f} (0.5 +- 0.01)")


def aggregate(records, model):
    known = rev = lf = af = 0
    for rec in records:
        if rec.model != model or rec.opt_n is None:
            continue
        known += 1
        rev += rec.reverse_n == rec.opt_n
        lf += rec.lf_n == rec.opt_n
        af += rec.af_n == rec.opt_n
    return known, rev / known, lf / known, af / known


def test_criterion_10_desk_scale_campaign(campaign):
    records, _, _, elapsed = campaign
    assert len(records) == 2 * 3 * 6 * 200

    known_u, rev_u, lf_u, af_u = aggregate(records, "uniform")
    assert af_u >= 0.95
    assert af_u >= lf_u
    assert lf_u >= rev_u - 0.10

    known_r, rev_r, lf_r, af_r = aggregate(records, "urn")
    assert af_r >= 0.95
    assert lf_r < rev_r

    assert elapsed < 600.0
    print(
        f"criterion 10: uniform known={known_u} af={af_u:.3f} lf={lf_u:.3f} "
        f"rev={rev_u:.3f}; urn known={known_r} af={af_r:.3f} lf={lf_r:.3f} "
        f"rev={rev_r:.3f}; {elapsed:.1f} s"
    )


def test_criterion_11_campaign_determinism(campaign, tmp_path):
    _, _, first_bytes, _ = campaign
    out = tmp_path / "rerun.csv"
    run_experiment(ExperimentConfig(output=out, **CAMPAIGN))
    assert out.read_bytes() == first_bytes
    print(f"criterion 11: rerun CSV byte-identical ({len(first_bytes)} bytes)")
