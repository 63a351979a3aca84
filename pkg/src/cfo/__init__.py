"""Deterministic Central Force Optimization with errant-probe repositioning policies."""

from .benchmarks import BenchmarkSpec, NoiseSource, evaluate, evaluate_many, get_spec, list_functions
from .errors import (
    CellError,
    CFOError,
    ConfigurationError,
    ContainmentError,
    GeometryDegeneracyError,
    InvalidInputError,
    RunAbortedError,
)
from .harness import (
    ComparisonRow,
    SweepConfig,
    SweepReport,
    compare_policies,
    fractional_speed_change,
    max_probes_per_dimension,
    sweep,
)
from .kernel import BestRecord, DecisionSpace, KernelConfig, RunResult, RunState, run_single
from .reposition import RepositionPolicy, Scheme, advance_frep, parse_policy

__version__ = "0.1.0"

__all__ = [
    "BenchmarkSpec",
    "BestRecord",
    "CFOError",
    "CellError",
    "ComparisonRow",
    "ConfigurationError",
    "ContainmentError",
    "DecisionSpace",
    "GeometryDegeneracyError",
    "InvalidInputError",
    "KernelConfig",
    "NoiseSource",
    "RepositionPolicy",
    "RunAbortedError",
    "RunResult",
    "RunState",
    "Scheme",
    "SweepConfig",
    "SweepReport",
    "advance_frep",
    "compare_policies",
    "evaluate",
    "evaluate_many",
    "fractional_speed_change",
    "get_spec",
    "list_functions",
    "max_probes_per_dimension",
    "parse_policy",
    "run_single",
    "sweep",
]
