"""Opinion dynamics on weighted networks and their step-graphon limit.

The package splits into a foundation of types and structural operations
(core), the closed-form mean-field solver (meanfield), a fixed-step
agent simulator with convergence tooling (sim), explicit three-group
spectral analysis (threegroup), and a batch CLI (cli).
"""

from .core import (
    CUT_NORM_MAX_GROUPS,
    EVOLVED_TOL,
    STRUCT_TOL,
    FiniteNetwork,
    GroupMatrix,
    Partition,
    PiecewiseFn,
    StepGraphon,
    cut_norm,
    group_matrix,
    l1_norm,
    l2_distance,
    l2_norm,
    laplacian,
    merge_grids,
    pixel_graphon,
    sample_network,
    sup_norm,
)
from .meanfield import (
    Decomposition,
    EvolvedState,
    decompose,
    energy,
    energy_growth_bound,
    evolve_means,
    residual_rates,
    solve_at,
    weighted_row_bound,
)
from .sim import (
    BlowupError,
    ConformabilityError,
    SimConfig,
    Trajectory,
    convergence_study,
    discretize_initial,
    embed,
    is_conformable,
    rhs,
    simulate,
)
from .threegroup import (
    ScenarioReport,
    Spectrum3,
    classify,
    discriminant,
    dispersion_rate,
    laplacian3,
    spectrum3,
    three_group_graphon,
)

__version__ = "0.1.0"

__all__ = [
    "CUT_NORM_MAX_GROUPS",
    "EVOLVED_TOL",
    "STRUCT_TOL",
    "BlowupError",
    "ConformabilityError",
    "Decomposition",
    "EvolvedState",
    "FiniteNetwork",
    "GroupMatrix",
    "Partition",
    "PiecewiseFn",
    "ScenarioReport",
    "SimConfig",
    "Spectrum3",
    "StepGraphon",
    "Trajectory",
    "classify",
    "convergence_study",
    "cut_norm",
    "decompose",
    "discretize_initial",
    "discriminant",
    "dispersion_rate",
    "embed",
    "energy",
    "energy_growth_bound",
    "evolve_means",
    "group_matrix",
    "is_conformable",
    "l1_norm",
    "l2_distance",
    "l2_norm",
    "laplacian",
    "laplacian3",
    "merge_grids",
    "pixel_graphon",
    "residual_rates",
    "rhs",
    "sample_network",
    "simulate",
    "solve_at",
    "spectrum3",
    "sup_norm",
    "three_group_graphon",
    "weighted_row_bound",
]
