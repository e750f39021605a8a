"""k3fat: dimensions and speciality of homogeneous fat-point linear systems
on generic K3 surfaces, by degeneration recursion, with an exact
finite-field interpolation oracle for independent verification."""
from .core import (
    DimensionReport,
    FatPointGroup,
    K3System,
    PlanarSystem,
    Status,
    edim,
    planar_dim_nonspecial,
    point_conditions,
    vdim_k3,
    vdim_planar,
)
from .degeneration import (
    DegenerationStep,
    DegenerationTrace,
    KSelectionBounds,
    Regime,
    check_vdim_identity,
    combine_dims,
    factor_4_9,
    is_admissible_count,
    k_selection_bounds,
    recurse,
    select_k,
)
from .classify import (
    GAMMA4_PROVED,
    BasePolicy,
    PolicyKind,
    Verdict,
    VerificationOutcome,
    base_gamma4,
    classify,
    planar_dim_c49,
    verify,
)
from .oracle import (
    PrimeFieldConfig,
    exact_rank,
    k3_dim_oracle,
    measure_k3,
    measure_planar,
    planar_dim_oracle,
)

__version__ = "0.1.0"
