"""Coalition manipulation of the Borda voting rule.

Approximation heuristics, an exact minimum-coalition solver, the
relaxed-to-strict matrix conversion, hardness-instance construction,
seeded electorate generators, and an experiment harness.
"""

from .core import (
    GapVector,
    InternalError,
    ManipulationProblem,
    ScoreVector,
    ValidationError,
    Vote,
    apply_votes,
    check_win,
    gaps,
    tally,
)
from .exact import (
    OptimalResult,
    PermSumInstance,
    SearchBudgetExceeded,
    feasible,
    lower_bound,
    optimal,
    solve_perm_sum,
)
from .generators import GenSpec, SplitMix64, derive_seed, gen_uniform, gen_urn, gen_votes
from .hardness import (
    PmrdsInstance,
    ReductionOutput,
    decode_pmrds,
    lemma1_votes,
    reduce_perm_sum,
    solve_pmrds,
    to_pmrds,
)
from .harness import ExperimentConfig, TrialRecord, run_experiment, run_trial, summarize
from .heuristics import (
    HeuristicResult,
    TieBreakPolicy,
    average_fit,
    average_fit_fixed,
    largest_fit,
    largest_fit_fixed,
    reverse,
)
from .matrices import (
    ManipulationMatrix,
    RelaxedMatrix,
    matrix_to_votes,
    relaxed_to_strict,
    validate_relaxed,
)

__all__ = [
    "GapVector",
    "GenSpec",
    "HeuristicResult",
    "InternalError",
    "ManipulationMatrix",
    "ManipulationProblem",
    "OptimalResult",
    "PermSumInstance",
    "PmrdsInstance",
    "ReductionOutput",
    "RelaxedMatrix",
    "ScoreVector",
    "SearchBudgetExceeded",
    "SplitMix64",
    "TieBreakPolicy",
    "TrialRecord",
    "ValidationError",
    "Vote",
    "ExperimentConfig",
    "apply_votes",
    "average_fit",
    "average_fit_fixed",
    "check_win",
    "decode_pmrds",
    "derive_seed",
    "feasible",
    "gaps",
    "gen_uniform",
    "gen_urn",
    "gen_votes",
    "largest_fit",
    "largest_fit_fixed",
    "lemma1_votes",
    "lower_bound",
    "matrix_to_votes",
    "optimal",
    "reduce_perm_sum",
    "relaxed_to_strict",
    "reverse",
    "run_experiment",
    "run_trial",
    "solve_perm_sum",
    "solve_pmrds",
    "summarize",
    "tally",
    "to_pmrds",
    "validate_relaxed",
]
