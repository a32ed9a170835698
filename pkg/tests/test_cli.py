import pytest

from borda_manip.cli import main
from borda_manip.core import parse_election, parse_scores, tally
from borda_manip.harness import trial_problem, trial_seed
from borda_manip.matrices import parse_strict

EXAMPLE_SCORES = "4 4\n3 4 5 0\n"
PMRDS_SCORES = "5 5\n4 4 6 6 0\n"


@pytest.fixture
def election_file(tmp_path):
    path = tmp_path / "election.txt"
    path.write_text("4 2\n3 1 2 4\n2 3 1 4\n")
    return path


@pytest.fixture
def scores_file(tmp_path):
    path = tmp_path / "scores.txt"
    path.write_text(EXAMPLE_SCORES)
    return path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_tally_prints_scores(capsys, election_file):
    code, out, err = run(capsys, "tally", "--input", str(election_file))
    assert code == 0
    assert out == "3 4 5 0\n"
    assert err == ""


def test_tally_with_d_prints_score_file(capsys, election_file):
    code, out, _ = run(capsys, "tally", "--input", str(election_file), "--d", "4")
    assert code == 0
    assert out == EXAMPLE_SCORES


def test_tally_writes_score_file(capsys, election_file, tmp_path):
    out_path = tmp_path / "scores.txt"
    code, out, _ = run(
        capsys, "tally", "--input", str(election_file), "--d", "4", "--out", str(out_path)
    )
    assert code == 0
    assert out == ""
    problem = parse_scores(out_path.read_text())
    assert problem.base.scores == (3, 4, 5, 0) and problem.d == 4


def test_tally_out_requires_d(capsys, election_file, tmp_path):
    code, _, err = run(
        capsys, "tally", "--input", str(election_file), "--out", str(tmp_path / "x")
    )
    assert code == 1
    assert "error:" in err


def test_missing_input_is_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "tally", "--input", str(tmp_path / "nope.txt"))
    assert code == 2
    assert "i/o error:" in err


def test_manipulate_reverse(capsys, scores_file):
    code, out, _ = run(
        capsys, "manipulate", "--method", "reverse", "--input", str(scores_file)
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n: 3"
    assert lines[1:4] == ["ballot: 4>1>2>3", "ballot: 4>1>2>3", "ballot: 4>3>2>1"]
    assert lines[4] == "final: 7 7 7 9"


def test_manipulate_largest_fit(capsys, scores_file):
    code, out, _ = run(
        capsys, "manipulate", "--method", "largest-fit", "--input", str(scores_file)
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n: 2"
    assert lines[-1] == "final: 6 6 6 6"
    assert sum(1 for ln in lines if ln.startswith("ballot: ")) == 2


@pytest.mark.parametrize("tiebreak", ["fewest-placed", "lowest-index"])
def test_manipulate_average_fit(capsys, scores_file, tiebreak):
    code, out, _ = run(
        capsys,
        "manipulate",
        "--method",
        "average-fit",
        "--tiebreak",
        tiebreak,
        "--input",
        str(scores_file),
    )
    assert code == 0
    assert out.splitlines()[0] == "n: 2"


def test_manipulate_trace_lists_placements(capsys, scores_file):
    code, out, _ = run(
        capsys,
        "manipulate",
        "--method",
        "largest-fit",
        "--input",
        str(scores_file),
        "--trace",
    )
    assert code == 0
    lines = out.splitlines()
    assert "place 3 -> column 4" in lines
    assert "place 2 -> column 1" in lines


def test_manipulate_optimal(capsys, scores_file):
    code, out, _ = run(
        capsys, "manipulate", "--method", "optimal", "--input", str(scores_file)
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n: 2"
    assert sum(1 for ln in lines if ln.startswith("ballot: ")) == 2
    final = tuple(int(s) for s in lines[-1].removeprefix("final: ").split())
    assert final[3] == max(final)


def test_manipulate_optimal_budget_exhausted(capsys, tmp_path):
    from borda_manip.core import format_scores

    problem = trial_problem("uniform", 16, 32, trial_seed(7, "uniform", 16, 32, 54))
    path = tmp_path / "hard.txt"
    path.write_text(format_scores(problem))
    code, out, _ = run(
        capsys,
        "manipulate",
        "--method",
        "optimal",
        "--input",
        str(path),
        "--node-budget",
        "1000",
    )
    assert code == 0
    assert out == "opt: unknown (search aborted after 1000 nodes)\n"


def test_manipulate_rejects_unknown_method(capsys, scores_file):
    code, _, _ = run(
        capsys, "manipulate", "--method", "bogus", "--input", str(scores_file)
    )
    assert code == 1


def test_generate_deterministic_output(capsys):
    args = ("generate", "--model", "uniform", "--m", "4", "--voters", "6", "--seed", "3")
    code, out, _ = run(capsys, *args)
    assert code == 0
    m, votes = parse_election(out)
    assert m == 4 and len(votes) == 6
    code2, out2, _ = run(capsys, *args)
    assert code2 == 0 and out2 == out


def test_generate_writes_file(capsys, tmp_path):
    path = tmp_path / "urn.txt"
    code, out, _ = run(
        capsys,
        "generate",
        "--model",
        "urn",
        "--m",
        "3",
        "--voters",
        "5",
        "--seed",
        "9",
        "--out",
        str(path),
    )
    assert code == 0 and out == ""
    m, votes = parse_election(path.read_text())
    assert m == 3 and len(votes) == 5


def test_convert_matrix(capsys, tmp_path):
    path = tmp_path / "relaxed.txt"
    path.write_text("2 4\n1: 2^1 1^1\n2: 2^1 0^1\n3: 1^1 0^1\n4: 3^2\n")
    code, out, _ = run(capsys, "convert-matrix", "--input", str(path))
    assert code == 0
    strict = parse_strict(out)
    assert strict.n == 2
    assert strict.column_sums() == (3, 2, 1, 6)


def test_convert_matrix_rejects_irregular_grid(capsys, tmp_path):
    path = tmp_path / "relaxed.txt"
    path.write_text("2 2\n1: 1^2 0^2\n2:\n")
    code, _, err = run(capsys, "convert-matrix", "--input", str(path))
    assert code == 1
    assert "error:" in err


def test_reduce_perm_sum_stdout(capsys):
    code, out, _ = run(capsys, "reduce", "perm-sum", "--xs", "3 3")
    assert code == 0
    m, votes = parse_election(out)
    assert m == 5
    assert tally(votes, 5).scores == (72, 77, 77, 80, 54)


def test_reduce_perm_sum_to_file(capsys, tmp_path):
    path = tmp_path / "reduced.txt"
    code, out, _ = run(capsys, "reduce", "perm-sum", "--xs", "3,3", "--out", str(path))
    assert code == 0
    lines = out.splitlines()
    assert "candidates: 5" in lines
    assert "votes: 36" in lines
    assert "d: 1" in lines
    assert "C: 72" in lines
    assert "targets: 72 77 77 80 54" in lines
    m, votes = parse_election(path.read_text())
    assert m == 5 and len(votes) == 36


def test_reduce_rejects_invalid_targets(capsys):
    code, _, err = run(capsys, "reduce", "perm-sum", "--xs", "2 2")
    assert code == 1 and "error:" in err
    code, _, err = run(capsys, "reduce", "perm-sum", "--xs", "two")
    assert code == 1 and "error:" in err


def test_perm_sum_sat(capsys):
    code, out, _ = run(capsys, "perm-sum", "--xs", "3 3")
    assert code == 0
    assert out == "sigma: 1 2\npi: 2 1\n"


def test_perm_sum_unsat(capsys):
    code, out, _ = run(capsys, "perm-sum", "--xs", "2 2 8 8")
    assert code == 0
    assert out == "UNSAT\n"


def test_pmrds_encode(capsys, tmp_path):
    path = tmp_path / "scores.txt"
    path.write_text(PMRDS_SCORES)
    code, out, _ = run(capsys, "pmrds", "encode", "--input", str(path))
    assert code == 0
    assert out == "n: 4\ndiag_sums: 0 0 2 0 2 0 0\n"


def test_pmrds_solve(capsys, tmp_path):
    path = tmp_path / "scores.txt"
    path.write_text(PMRDS_SCORES)
    code, out, _ = run(capsys, "pmrds", "solve", "--input", str(path))
    assert code == 0
    lines = out.splitlines()
    grid = [tuple(int(x) for x in ln.split()) for ln in lines[:4]]
    assert all(sum(row) == 1 for row in grid)
    assert all(sum(col) == 1 for col in zip(*grid))
    assert lines[4].startswith("first: ")
    assert lines[5].startswith("second: ")
    assert sum(1 for ln in lines if ln.startswith("ballot: ")) == 2


def test_pmrds_solve_unsat(capsys, tmp_path):
    path = tmp_path / "scores.txt"
    path.write_text("5 1\n0 8 8 2 2\n")
    code, out, _ = run(capsys, "pmrds", "solve", "--input", str(path))
    assert code == 0
    assert out == "UNSAT\n"


def test_pmrds_encode_rejects_unbalanced(capsys, tmp_path):
    path = tmp_path / "scores.txt"
    path.write_text("5 5\n4 4 6 6 1\n")
    code, _, err = run(capsys, "pmrds", "encode", "--input", str(path))
    assert code == 1 and "error:" in err


def test_experiment_small_run(capsys, tmp_path):
    out_a = tmp_path / "a.csv"
    args = (
        "experiment",
        "--models",
        "uniform",
        "--m",
        "3",
        "--voters",
        "2,4",
        "--trials",
        "2",
        "--seed",
        "11",
        "--no-times",
    )
    code, out, _ = run(capsys, *args, "--out", str(out_a))
    assert code == 0
    assert out.splitlines()[0].startswith("model")
    rows = out_a.read_text().splitlines()
    assert len(rows) == 1 + 4  # header + 1 model x 1 m x 2 voters x 2 trials
    out_b = tmp_path / "b.csv"
    code_b, out_b_text, _ = run(capsys, *args, "--out", str(out_b))
    assert code_b == 0 and out_b_text == out
    assert out_a.read_bytes() == out_b.read_bytes()


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "borda-manip" in out


def test_usage_errors_exit_one(capsys):
    assert main([]) == 1
    assert main(["frobnicate"]) == 1
    capsys.readouterr()
