"""Strategic-form game toolkit: fictitious play vs. regret-matching CFR.

Games are per-player payoff tensors; the solvers produce averaged
strategy profiles whose quality is measured by epsilon (the largest gain
any player can get from a unilateral pure deviation). The bench module
runs paired head-to-head batches over seeded random games or ingested
`.nfg` files and decides a winner by confidence interval.
"""

from .bench import (
    CSV_HEADER,
    Decision,
    ExperimentConfig,
    SummaryRow,
    aggregate,
    decide,
    default_iterations,
    evaluate_game,
    render,
    run_suite,
)
from .game import (
    Game,
    MixedStrategy,
    Profile,
    best_response,
    deviation_values,
    epsilon,
    expected_utility,
    flat_index,
    mixed_strategy,
    normalize,
    uniform_profile,
    validate_profile,
)
from .generate import (
    GameKind,
    GenSpec,
    batch_game,
    generate,
    named_game,
    random_constant_sum,
    random_game,
)
from .nfg import IngestReport, NfgError, ingest_dir, parse_nfg, write_nfg
from .rng import SplitMix64, derive_seed, unit_stream
from .solvers import RegretState, SolveResult, cfr_run, fp_run, regret_match

__all__ = [
    "CSV_HEADER",
    "Decision",
    "ExperimentConfig",
    "Game",
    "GameKind",
    "GenSpec",
    "IngestReport",
    "MixedStrategy",
    "NfgError",
    "Profile",
    "RegretState",
    "SolveResult",
    "SplitMix64",
    "SummaryRow",
    "aggregate",
    "batch_game",
    "best_response",
    "cfr_run",
    "decide",
    "default_iterations",
    "derive_seed",
    "deviation_values",
    "epsilon",
    "evaluate_game",
    "expected_utility",
    "flat_index",
    "fp_run",
    "generate",
    "ingest_dir",
    "mixed_strategy",
    "named_game",
    "normalize",
    "parse_nfg",
    "random_constant_sum",
    "random_game",
    "regret_match",
    "render",
    "run_suite",
    "uniform_profile",
    "unit_stream",
    "validate_profile",
    "write_nfg",
]

__version__ = "0.1.0"
