"""Gyrogroup algebra on the open unit ball and disk.

Concrete models (Einstein, Mobius, complex Mobius disk, plain groups), their
gyronorms and induced hyperbolic metrics, and a seeded property-check engine
that verifies or falsifies the defining axioms and identities numerically.
"""

from .core import (
    Gyration,
    GyrogroupModel,
    GyronormedModel,
    IsometrySpec,
    LeftTranslation,
    apply_isometry,
    discrete_gyronorm,
    group_adapter,
    gyr_via_gyrator_identity,
    gyronorm_from_metric,
    homogeneity_witness,
    induced_metric,
    isotropy_witness,
    mazur_ulam_decompose,
)
from .disk import (
    cmobius_add,
    cmobius_gyr_factor,
    disk_gyronorm,
    mobius_transformation,
    poincare_metric,
)
from .einstein import (
    einstein_add,
    gyrometric_de,
    gyronorm_E,
    rapidity_metric_dE,
    topology_ball_inclusion,
)
from .engine import CheckConfig, CheckReport, run_suite, SUITE_NAMES
from .errors import (
    BoundaryError,
    DegeneracyError,
    DimensionMismatchError,
    DomainError,
    GyroError,
    LeftInvarianceError,
    SamplingHealthError,
    UnknownNameError,
)
from .mobius import gyronorm_M, mobius_add, phi, phi_inv, rapidity_metric_dM
from .registry import MODEL_NAMES, get_model, get_normed
from .rng import make_rng, worker_rng
from .vectors import (
    Tolerance,
    atanh_guarded,
    ball_point,
    euclidean_norm,
    inner_product,
    lorentz_gamma,
    sample_ball_point,
    sample_ball_points,
    scalar_einstein_add,
)

__version__ = "0.1.0"
