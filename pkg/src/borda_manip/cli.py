"""Command-line front end.

Exit codes: 0 success (including UNSAT and unknown outcomes, which are
answers), 1 validation or usage error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import (
    ManipulationProblem,
    ValidationError,
    apply_votes,
    format_election,
    format_scores,
    parse_election,
    parse_scores,
    tally,
)
from .exact import (
    PermSumInstance,
    SearchBudgetExceeded,
    optimal,
    solve_perm_sum,
)
from .generators import GenSpec, gen_votes
from .hardness import assignment_votes, reduce_perm_sum, solve_pmrds, to_pmrds
from .harness import (
    DEFAULT_NODE_BUDGET,
    ExperimentConfig,
    format_summary,
    run_experiment,
)
from .heuristics import (
    HeuristicResult,
    TieBreakPolicy,
    average_fit,
    largest_fit,
    reverse,
)
from .matrices import (
    format_strict,
    matrix_to_votes,
    parse_relaxed,
    relaxed_to_strict,
)


def _read(path: str) -> str:
    return Path(path).read_text()


def _write_or_print(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fmt_vote(vote) -> str:
    return ">".join(str(c) for c in vote.ranking)


def _int_list(text: str, label: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError as exc:
        raise ValidationError(f"{label}: expected integers, got {text!r}") from exc


def _cmd_tally(args) -> int:
    m, votes = parse_election(_read(args.input))
    scores = tally(votes, m)
    if args.d is None:
        if args.out is not None:
            raise ValidationError("--out requires --d (score files carry d)")
        print(" ".join(str(s) for s in scores.scores))
        return 0
    problem = ManipulationProblem(scores, args.d)
    _write_or_print(format_scores(problem), args.out)
    return 0


def _print_result(problem: ManipulationProblem, result: HeuristicResult, trace: bool) -> None:
    print(f"n: {result.n_used}")
    if trace:
        for p in result.trace:
            print(f"place {p.value} -> column {p.column}")
    for vote in result.ballots:
        print(f"ballot: {_fmt_vote(vote)}")
    final = apply_votes(problem.base, result.ballots)
    print("final: " + " ".join(str(s) for s in final.scores))


def _cmd_manipulate(args) -> int:
    problem = parse_scores(_read(args.input))
    if args.method == "reverse":
        _print_result(problem, reverse(problem), args.trace)
    elif args.method == "largest-fit":
        _print_result(problem, largest_fit(problem), args.trace)
    elif args.method == "average-fit":
        policy = TieBreakPolicy(args.tiebreak)
        _print_result(problem, average_fit(problem, policy), args.trace)
    else:
        try:
            result = optimal(problem, args.node_budget)
        except SearchBudgetExceeded as exc:
            print(f"opt: unknown (search aborted after {exc.nodes} nodes)")
            return 0
        print(f"n: {result.n_opt}")
        ballots = matrix_to_votes(relaxed_to_strict(result.witness))
        for vote in ballots:
            print(f"ballot: {_fmt_vote(vote)}")
        final = apply_votes(problem.base, ballots)
        print("final: " + " ".join(str(s) for s in final.scores))
    return 0


def _cmd_generate(args) -> int:
    spec = GenSpec(args.model, args.m, args.voters, args.seed)
    votes = gen_votes(spec)
    _write_or_print(format_election(args.m, votes), args.out)
    return 0


def _cmd_convert_matrix(args) -> int:
    relaxed = parse_relaxed(_read(args.input))
    strict = relaxed_to_strict(relaxed)
    _write_or_print(format_strict(strict), args.out)
    return 0


def _cmd_reduce(args) -> int:
    inst = PermSumInstance(_int_list(args.xs, "--xs"))
    problem, output = reduce_perm_sum(inst)
    text = format_election(problem.m, output.votes)
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
        print(f"candidates: {problem.m}")
        print(f"votes: {len(output.votes)}")
        print(f"d: {output.d}")
        print(f"C: {output.c}")
        print("targets: " + " ".join(str(s) for s in output.target_scores.scores))
    return 0


def _cmd_perm_sum(args) -> int:
    inst = PermSumInstance(_int_list(args.xs, "--xs"))
    solution = solve_perm_sum(inst)
    if solution is None:
        print("UNSAT")
        return 0
    sigma, pi = solution
    print("sigma: " + " ".join(str(v) for v in sigma))
    print("pi: " + " ".join(str(v) for v in pi))
    return 0


def _cmd_pmrds(args) -> int:
    problem = parse_scores(_read(args.input))
    if args.action == "encode":
        inst = to_pmrds(problem)
        print(f"n: {inst.n}")
        print("diag_sums: " + " ".join(str(s) for s in inst.diag_sums))
        return 0
    solved = solve_pmrds(problem)
    if solved is None:
        print("UNSAT")
        return 0
    matrix, (first, second) = solved
    for row in matrix:
        print(" ".join(str(x) for x in row))
    print("first: " + " ".join(str(v) for v in first))
    print("second: " + " ".join(str(v) for v in second))
    for vote in assignment_votes(problem, first, second):
        print(f"ballot: {_fmt_vote(vote)}")
    return 0


def _cmd_experiment(args) -> int:
    config = ExperimentConfig(
        models=tuple(args.models.split(",")),
        m_values=_int_list(args.m, "--m"),
        voter_counts=_int_list(args.voters, "--voters"),
        trials=args.trials,
        seed=args.seed,
        node_budget=args.node_budget,
        output=args.out,
        record_times=not args.no_times,
    )
    _, summary = run_experiment(config)
    sys.stdout.write(format_summary(summary))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="borda-manip",
        description="Coalition manipulation of the Borda rule.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tally", help="tally an election file")
    p.add_argument("--input", required=True, help="election file")
    p.add_argument("--d", type=int, help="preferred candidate for score-file output")
    p.add_argument("--out", help="write a score-vector file instead of printing")
    p.set_defaults(func=_cmd_tally)

    p = sub.add_parser("manipulate", help="run a manipulation method")
    p.add_argument(
        "--method",
        required=True,
        choices=["reverse", "largest-fit", "average-fit", "optimal"],
    )
    p.add_argument("--input", required=True, help="score-vector file")
    p.add_argument(
        "--tiebreak",
        choices=[policy.value for policy in TieBreakPolicy],
        default=TieBreakPolicy.FEWEST_PLACED.value,
        help="average-fit column tie-break",
    )
    p.add_argument("--trace", action="store_true", help="print the placement log")
    p.add_argument("--node-budget", type=int, default=None, help="exact-search node cap")
    p.set_defaults(func=_cmd_manipulate)

    p = sub.add_parser("generate", help="generate a random electorate")
    p.add_argument("--model", required=True, choices=["uniform", "urn"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--voters", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="election file to write (default: stdout)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("convert-matrix", help="relaxed matrix file to strict")
    p.add_argument("--input", required=True, help="relaxed matrix file")
    p.add_argument("--out", help="strict matrix file to write (default: stdout)")
    p.set_defaults(func=_cmd_convert_matrix)

    p = sub.add_parser("reduce", help="hardness reductions")
    reduce_sub = p.add_subparsers(dest="reduction", required=True)
    pr = reduce_sub.add_parser("perm-sum", help="permutation-sum to manipulation")
    pr.add_argument("--xs", required=True, help='targets, e.g. "3 3"')
    pr.add_argument("--out", help="election file to write (default: stdout)")
    pr.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("perm-sum", help="solve a permutation-sum instance")
    p.add_argument("--xs", required=True, help='targets, e.g. "3 3"')
    p.set_defaults(func=_cmd_perm_sum)

    p = sub.add_parser("pmrds", help="diagonal-sum encoding of 2-manipulator problems")
    p.add_argument("action", choices=["encode", "solve"])
    p.add_argument("--input", required=True, help="score-vector file")
    p.set_defaults(func=_cmd_pmrds)

    p = sub.add_parser("experiment", help="run the experiment campaign")
    p.add_argument("--models", default="uniform,urn", help="comma-separated models")
    p.add_argument("--m", default="4,8,16", help="comma-separated candidate counts")
    p.add_argument("--voters", default="4,8,16,32,64,128", help="comma-separated voter counts")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--out", default="results.csv", help="results CSV path")
    p.add_argument(
        "--no-times",
        action="store_true",
        help="write zero wall times for byte-reproducible output",
    )
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors; usage
        # errors are validation failures under this tool's contract.
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
