"""Log-optimal and Riesz-optimal point configurations on spheres."""
from .exceptions import (
    AllSeedsFailed,
    CoincidentPoints,
    DimensionMismatch,
    DoesNotFit,
    DomainError,
    InfeasibleSizes,
    InvalidConfiguration,
    LogSphereError,
    PoleCollision,
    TransitivityViolation,
    UnknownName,
    WrongCardinality,
)
from .geometry import (
    Configuration,
    EnergyReport,
    align,
    center_of_mass,
    log_energy,
    log_product,
    read_configuration,
    riesz_energy,
    rotation_distance,
    squared_distances,
    write_configuration,
)
from .stationarity import (
    check_stationary,
    coefficient_matrix,
    rank_condition_holds,
    riesz_gradient_residual,
    scalar_equation_residuals,
    stereographic_project,
)
from .structure import classify_trichotomy, mirror_partition, mirror_related, span_dimension
from .generators import CATALOG_NAMES, GeneratorSpec, apex_over_base, named, ortho_simplexes, regular_simplex, three_simplex
from .optimizer import OptimizeSettings, minimize, tangential_gradient, verify_conjecture, verify_monotonicity
from .estimator import SphereEnergyMinimizer

__version__ = "0.1.0"
