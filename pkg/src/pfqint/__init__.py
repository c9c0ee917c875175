"""pfqint: generalized hypergeometric series, their series-form
antiderivatives, identity residual checks, Gaussian Fourier/Laplace
transforms, an independent quadrature oracle, and a plane-Couette
stability-mode evaluator."""

from .errors import (
    ArgumentTooLarge,
    ArgumentTooSmall,
    DecayTooSlow,
    DivergentSeries,
    LiftedLowerPole,
    LowerParameterPole,
    MaxSubdivisions,
    NoDecreasingRegime,
    NoiseFloor,
    NotConverged,
    ParityDomainViolation,
    PfqintError,
    PochhammerPole,
    PoleAtNonpositiveInteger,
    ProductPole,
    SingularInterior,
)
from .identities import IdentityCase, lemma1_residual, theorem_residual
from .oracle import (
    QuadratureResult,
    airy_oracle,
    fd_derivative,
    fd_derivative_n,
    quad_finite,
    quad_oscillatory_fourier,
    quad_semi_infinite,
)
from .orr_sommerfeld import (
    OSParams,
    OSSolution,
    airy_ai,
    os_residual,
    phi_quadrature,
    phi_series,
)
from .series_integrals import (
    AntiderivativeValue,
    IntegrandSpec,
    antiderivative,
    definite_integral,
    integrand_value,
    lifted_params,
    series_block,
)
from .special_functions import (
    DEFAULT_POLICY,
    PFqParams,
    SeriesEvaluation,
    TruncationPolicy,
    log_gamma,
    pfq,
    pfq_1f1_asymptotic,
    pochhammer,
    two_f_zero_asymptotic,
)
from .transforms import (
    GaussianTransformSpec,
    fourier_gaussian,
    fourier_moment_gaussian,
    laplace_erf,
    laplace_moment_gaussian,
)

__version__ = "0.1.0"
