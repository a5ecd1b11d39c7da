"""Dual-channel particle swarm optimizer with adaptive balance search."""

from ._core import (
    AbsConfig,
    ConfigError,
    FunctionCategory,
    InternalError,
    IoError,
    IterationSample,
    ObjectiveFunction,
    ScheduleParams,
    SearchSpace,
    TrialRecord,
    Variant,
    WilcoxonResult,
    adaptive_split,
    diversity,
    list_functions,
    make_function,
    run,
    run_dcpso_abs,
    run_experiment,
    run_standard_pso,
    select_channel,
    wilcoxon_signed_rank,
)

__version__ = "0.1.0"

__all__ = [
    "AbsConfig",
    "ConfigError",
    "FunctionCategory",
    "InternalError",
    "IoError",
    "IterationSample",
    "ObjectiveFunction",
    "ScheduleParams",
    "SearchSpace",
    "TrialRecord",
    "Variant",
    "WilcoxonResult",
    "adaptive_split",
    "diversity",
    "list_functions",
    "make_function",
    "run",
    "run_dcpso_abs",
    "run_experiment",
    "run_standard_pso",
    "select_channel",
    "wilcoxon_signed_rank",
]
