"""Experiment driver: generate electorates, race the methods, tabulate.

One trial generates an electorate, promotes the weakest candidate, and
runs the three approximation methods plus the exact solver.  Rows are
written as CSV in a fixed column order; the summary is a pure fold of
the rows, so re-reading the CSV and summarizing again reproduces it.

Wall-clock columns are the one non-deterministic part of a row, so
configs can switch them off (zeros are written instead); everything
else is pinned by the master seed.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from pathlib import Path

from .core import ManipulationProblem, ValidationError, tally
from .exact import SearchBudgetExceeded, optimal
from .generators import MODELS, GenSpec, derive_seed, gen_votes
from .heuristics import average_fit, largest_fit, reverse

CSV_COLUMNS = (
    "model",
    "m",
    "voters",
    "trial",
    "seed",
    "d",
    "opt_n",
    "reverse_n",
    "lf_n",
    "af_n",
    "t_opt_ms",
    "t_rev_ms",
    "t_lf_ms",
    "t_af_ms",
)

UNKNOWN = "unknown"

DEFAULT_NODE_BUDGET = 50_000


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one experiment campaign."""

    models: tuple[str, ...]
    m_values: tuple[int, ...]
    voter_counts: tuple[int, ...]
    trials: int
    seed: int
    node_budget: int | None = DEFAULT_NODE_BUDGET
    output: str | Path = "results.csv"
    record_times: bool = True

    def __post_init__(self) -> None:
        for model in self.models:
            if model not in MODELS:
                raise ValidationError(f"unknown model {model!r}")
        if not self.models or not self.m_values or not self.voter_counts:
            raise ValidationError("models, m_values and voter_counts must be non-empty")
        if any(m < 1 for m in self.m_values):
            raise ValidationError("candidate counts must be positive")
        if any(v < 1 for v in self.voter_counts):
            raise ValidationError("voter counts must be positive")
        if list(self.voter_counts) != sorted(self.voter_counts):
            raise ValidationError("voter_counts must be sorted ascending")
        if self.trials < 0:
            raise ValidationError("trial count must be >= 0")


@dataclass(frozen=True)
class TrialRecord:
    """One experiment row; opt_n is None when the budget ran out."""

    model: str
    m: int
    voters: int
    trial: int
    seed: int
    d: int
    opt_n: int | None
    reverse_n: int
    lf_n: int
    af_n: int
    t_opt_ms: int
    t_rev_ms: int
    t_lf_ms: int
    t_af_ms: int


def trial_seed(master: int, model: str, m: int, voters: int, trial: int) -> int:
    """Derived seed for one trial cell; model folds in by table position."""
    return derive_seed(master, MODELS.index(model), m, voters, trial)


def trial_problem(model: str, m: int, voters: int, seed: int) -> ManipulationProblem:
    """Regenerate a trial's manipulation problem from its seed.

    The promoted candidate is the one with the lowest score, ties going
    to the lowest index.
    """
    votes = gen_votes(GenSpec(model, m, voters, seed))
    base = tally(votes, m)
    d = min(range(1, m + 1), key=lambda c: (base.scores[c - 1], c))
    return ManipulationProblem(base, d)


def run_trial(
    model: str,
    m: int,
    voters: int,
    seed: int,
    trial: int = 0,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
    record_times: bool = True,
) -> TrialRecord:
    """Race all four methods on one generated electorate."""
    problem = trial_problem(model, m, voters, seed)

    def clocked(fn):
        start = time.perf_counter_ns()
        result = fn()
        elapsed = (time.perf_counter_ns() - start) // 1_000_000
        return result, elapsed if record_times else 0

    rev, t_rev = clocked(lambda: reverse(problem))
    lf, t_lf = clocked(lambda: largest_fit(problem))
    af, t_af = clocked(lambda: average_fit(problem))

    def run_optimal():
        try:
            return optimal(problem, node_budget).n_opt
        except SearchBudgetExceeded:
            return None

    opt_n, t_opt = clocked(run_optimal)
    return TrialRecord(
        model=model,
        m=m,
        voters=voters,
        trial=trial,
        seed=seed,
        d=problem.d,
        opt_n=opt_n,
        reverse_n=rev.n_used,
        lf_n=lf.n_used,
        af_n=af.n_used,
        t_opt_ms=t_opt,
        t_rev_ms=t_rev,
        t_lf_ms=t_lf,
        t_af_ms=t_af,
    )


@dataclass(frozen=True)
class SummaryRow:
    """Per (model, m) aggregate over all trial rows.

    ``distinct`` counts distinct problems, keyed on (base scores, d)
    after regenerating each electorate from its recorded seed; raw
    trial counts keep duplicate elections.  ``af_over_reverse`` flags
    trials where average fit needed a larger coalition than reverse,
    which the reference experiments never observed.
    """

    model: str
    m: int
    trials: int
    distinct: int
    known_opt: int
    unknown: int
    reverse_optimal: int
    lf_optimal: int
    af_optimal: int
    lf_beat_af: int
    af_over_reverse: int


def summarize(records: list[TrialRecord] | tuple[TrialRecord, ...]) -> tuple[SummaryRow, ...]:
    """Fold trial rows into per-(model, m) summary rows."""
    cells: dict[tuple[str, int], dict] = {}
    for rec in records:
        cell = cells.setdefault(
            (rec.model, rec.m),
            {
                "trials": 0,
                "keys": set(),
                "known": 0,
                "unknown": 0,
                "rev": 0,
                "lf": 0,
                "af": 0,
                "lf_beat_af": 0,
                "flags": 0,
            },
        )
        cell["trials"] += 1
        problem = trial_problem(rec.model, rec.m, rec.voters, rec.seed)
        cell["keys"].add((problem.base.scores, problem.d))
        if rec.opt_n is None:
            cell["unknown"] += 1
        else:
            cell["known"] += 1
            cell["rev"] += rec.reverse_n == rec.opt_n
            cell["lf"] += rec.lf_n == rec.opt_n
            cell["af"] += rec.af_n == rec.opt_n
        cell["lf_beat_af"] += rec.lf_n < rec.af_n
        cell["flags"] += rec.af_n > rec.reverse_n
    rows = []
    for (model, m), cell in sorted(cells.items(), key=lambda kv: (MODELS.index(kv[0][0]), kv[0][1])):
        rows.append(
            SummaryRow(
                model=model,
                m=m,
                trials=cell["trials"],
                distinct=len(cell["keys"]),
                known_opt=cell["known"],
                unknown=cell["unknown"],
                reverse_optimal=cell["rev"],
                lf_optimal=cell["lf"],
                af_optimal=cell["af"],
                lf_beat_af=cell["lf_beat_af"],
                af_over_reverse=cell["flags"],
            )
        )
    return tuple(rows)


def format_summary(rows: tuple[SummaryRow, ...]) -> str:
    """Fixed-width text table of the summary rows."""
    header = (
        f"{'model':<8}{'m':>4}{'trials':>8}{'distinct':>10}{'known':>7}"
        f"{'unknown':>9}{'rev=opt':>9}{'lf=opt':>8}{'af=opt':>8}{'lf<af':>7}{'af>rev':>8}"
    )
    lines = [header]
    for r in rows:
        lines.append(
            f"{r.model:<8}{r.m:>4}{r.trials:>8}{r.distinct:>10}{r.known_opt:>7}"
            f"{r.unknown:>9}{r.reverse_optimal:>9}{r.lf_optimal:>8}{r.af_optimal:>8}"
            f"{r.lf_beat_af:>7}{r.af_over_reverse:>8}"
        )
    return "\n".join(lines) + "\n"


def record_to_row(rec: TrialRecord) -> list[str]:
    return [
        rec.model,
        str(rec.m),
        str(rec.voters),
        str(rec.trial),
        str(rec.seed),
        str(rec.d),
        UNKNOWN if rec.opt_n is None else str(rec.opt_n),
        str(rec.reverse_n),
        str(rec.lf_n),
        str(rec.af_n),
        str(rec.t_opt_ms),
        str(rec.t_rev_ms),
        str(rec.t_lf_ms),
        str(rec.t_af_ms),
    ]


def row_to_record(row: dict[str, str]) -> TrialRecord:
    try:
        return TrialRecord(
            model=row["model"],
            m=int(row["m"]),
            voters=int(row["voters"]),
            trial=int(row["trial"]),
            seed=int(row["seed"]),
            d=int(row["d"]),
            opt_n=None if row["opt_n"] == UNKNOWN else int(row["opt_n"]),
            reverse_n=int(row["reverse_n"]),
            lf_n=int(row["lf_n"]),
            af_n=int(row["af_n"]),
            t_opt_ms=int(row["t_opt_ms"]),
            t_rev_ms=int(row["t_rev_ms"]),
            t_lf_ms=int(row["t_lf_ms"]),
            t_af_ms=int(row["t_af_ms"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed results row: {row!r}") from exc


def read_results(path: str | Path) -> tuple[TrialRecord, ...]:
    """Load trial rows back from a results CSV."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != list(CSV_COLUMNS):
            raise ValidationError(
                f"unexpected results header {reader.fieldnames}, want {list(CSV_COLUMNS)}"
            )
        return tuple(row_to_record(row) for row in reader)


def run_experiment(
    config: ExperimentConfig,
) -> tuple[tuple[TrialRecord, ...], tuple[SummaryRow, ...]]:
    """Run the full campaign, streaming rows to config.output as CSV.

    The output file is opened before any computation so an unwritable
    path fails immediately.  Row order is the stable iteration order
    (model, m, voters, trial).
    """
    records: list[TrialRecord] = []
    with open(config.output, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for model in config.models:
            for m in config.m_values:
                for voters in config.voter_counts:
                    for trial in range(config.trials):
                        seed = trial_seed(config.seed, model, m, voters, trial)
                        rec = run_trial(
                            model,
                            m,
                            voters,
                            seed,
                            trial=trial,
                            node_budget=config.node_budget,
                            record_times=config.record_times,
                        )
                        records.append(rec)
                        writer.writerow(record_to_row(rec))
    return tuple(records), summarize(records)


def write_results_text(records: tuple[TrialRecord, ...]) -> str:
    """Results CSV as a string, byte-compatible with run_experiment."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(record_to_row(rec))
    return buf.getvalue()
