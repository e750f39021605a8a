"""Exact finite-field interpolation oracle for plane and quartic-surface
fat-point linear systems."""
from .config import (
    DEFAULT_BUDGET_ROWS,
    DEFAULT_PRIME,
    DEFAULT_PRIME2,
    DEFAULT_TRIALS,
    BudgetExceededError,
    OracleMeasurement,
    PrimeFieldConfig,
    SamplingError,
    derived_rng,
)
from .field import ConditionMatrix, exact_rank, poly_roots, rank_mod_p
from .planar import measure_planar, planar_condition_rows, planar_dim_oracle
from .quartic import (
    QuarticSurfaceInstance,
    SurfacePoint,
    expand_local_series,
    k3_condition_rows,
    k3_dim_oracle,
    measure_k3,
    measure_k3_cross_checked,
    monomial_exponents,
    num_degree_forms,
    sample_quartic_instance,
)
from .series import ChartSingularError, Series2, solve_implicit

__all__ = [
    "BudgetExceededError",
    "ChartSingularError",
    "ConditionMatrix",
    "DEFAULT_BUDGET_ROWS",
    "DEFAULT_PRIME",
    "DEFAULT_PRIME2",
    "DEFAULT_TRIALS",
    "OracleMeasurement",
    "PrimeFieldConfig",
    "QuarticSurfaceInstance",
    "SamplingError",
    "Series2",
    "SurfacePoint",
    "derived_rng",
    "exact_rank",
    "expand_local_series",
    "k3_condition_rows",
    "k3_dim_oracle",
    "measure_k3",
    "measure_k3_cross_checked",
    "measure_planar",
    "monomial_exponents",
    "num_degree_forms",
    "planar_condition_rows",
    "planar_dim_oracle",
    "poly_roots",
    "rank_mod_p",
    "sample_quartic_instance",
    "solve_implicit",
]
