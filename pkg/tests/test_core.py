import pytest

from borda_manip.core import (
    ManipulationProblem,
    MAX_SCORE,
    ScoreVector,
    ValidationError,
    Vote,
    apply_votes,
    check_win,
    format_election,
    format_scores,
    gaps,
    parse_election,
    parse_scores,
    tally,
)


def test_vote_rejects_non_permutations():
    with pytest.raises(ValidationError):
        Vote((1, 1, 2))
    with pytest.raises(ValidationError):
        Vote((0, 1, 2))
    with pytest.raises(ValidationError):
        Vote((1, 2, 4))


def test_vote_points_by_place():
    v = Vote((3, 1, 2, 4))
    assert v.m == 4
    assert v.points() == (2, 1, 3, 0)


def test_tally_small_election():
    votes = [Vote((3, 1, 2, 4)), Vote((2, 3, 1, 4))]
    assert tally(votes, 4).scores == (3, 4, 5, 0)


def test_tally_names_offending_vote():
    with pytest.raises(ValidationError, match="vote 2"):
        tally([Vote((1, 2, 3)), Vote((1, 2))], 3)


def test_apply_votes_adds_to_base():
    base = ScoreVector((3, 4, 5, 0))
    after = apply_votes(base, [Vote((4, 1, 2, 3))])
    assert after.scores == (5, 5, 5, 3)


def test_apply_votes_overflow_guard():
    base = ScoreVector((MAX_SCORE, 0))
    with pytest.raises(ValidationError):
        apply_votes(base, [Vote((1, 2))])


def test_check_win_tie_counts_as_win():
    assert check_win(ScoreVector((7, 7, 7, 9)), 4)
    assert check_win(ScoreVector((6, 6, 6, 6)), 4)
    assert not check_win(ScoreVector((3, 4, 5, 4)), 4)
    with pytest.raises(ValidationError):
        check_win(ScoreVector((1, 2)), 3)


def test_gap_arithmetic():
    problem = ManipulationProblem(ScoreVector((3, 4, 5, 0)), 4)
    gv = gaps(problem, 2)
    assert gv.n == 2
    # d final is 0 + 2*3 = 6; each gap is 6 - score
    assert gv.gaps == (3, 2, 1, 6)
    with pytest.raises(ValidationError):
        gaps(problem, -1)


def test_score_vector_range_checks():
    with pytest.raises(ValidationError):
        ScoreVector((-1, 0))
    with pytest.raises(ValidationError):
        ScoreVector((MAX_SCORE + 1,))


def test_problem_d_in_range():
    with pytest.raises(ValidationError):
        ManipulationProblem(ScoreVector((1, 2)), 3)
    with pytest.raises(ValidationError):
        ManipulationProblem(ScoreVector((1, 2)), 0)


def test_election_file_round_trip():
    votes = (Vote((3, 1, 2, 4)), Vote((2, 3, 1, 4)))
    text = format_election(4, votes)
    assert text == "4 2\n3 1 2 4\n2 3 1 4\n"
    m, parsed = parse_election(text)
    assert m == 4 and parsed == votes


@pytest.mark.parametrize(
    "text",
    [
        "",
        "4\n",
        "x y\n",
        "4 2\n3 1 2 4\n",
        "3 1\n1 2 2\n",
        "3 1\n1 2\n",
    ],
)
def test_parse_election_rejects_malformed(text):
    with pytest.raises(ValidationError):
        parse_election(text)


def test_format_election_checks_vote_width():
    with pytest.raises(ValidationError):
        format_election(4, [Vote((1, 2, 3))])


def test_score_file_round_trip():
    problem = ManipulationProblem(ScoreVector((3, 4, 5, 0)), 4)
    text = format_scores(problem)
    assert text == "4 4\n3 4 5 0\n"
    parsed = parse_scores(text)
    assert parsed == problem


@pytest.mark.parametrize(
    "text",
    [
        "",
        "4 4\n",
        "4 4\n1 2 3\n",
        "4 9\n1 2 3 4\n",
        "a b\n1 2\n",
        "2 1\n1 x\n",
    ],
)
def test_parse_scores_rejects_malformed(text):
    with pytest.raises(ValidationError):
        parse_scores(text)
