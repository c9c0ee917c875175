"""Series-form antiderivatives of x^a * kernel(eta*x^b) * pFq(lam*x^g).

For each kernel in {exp, cosh, sinh, cos, sin} the antiderivative is a double
series: an outer sum over j whose coefficients carry powers of
``t = beta*eta*x^beta`` divided by the running product
``prod_{m=0..M(j)} (alpha + m*beta + 1)``, and an inner pFq whose parameter
lists are lifted by appending ``(alpha + m*beta + 1)/gamma`` upstairs and
``(alpha + gamma + m*beta + 1)/gamma`` downstairs for m = 0..M(j).  The
kernels differ only in which outer indices appear (all j, even 2j, odd 2j+1),
their sign pattern, and the kernel prefactors they multiply.

The building block :func:`series_block` is shared with the identity checker;
:func:`antiderivative` assembles blocks per kernel, and
:func:`definite_integral` applies the fundamental theorem of calculus.

Branch convention: x must be real and nonnegative, so every power
``x**s = exp(s ln x)`` is principal; the returned antiderivative fixes the
integration constant to 0.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from .errors import LiftedLowerPole, NotConverged, ProductPole
from .special_functions import (
    DEFAULT_POLICY,
    PFqParams,
    SeriesEvaluation,
    TruncationPolicy,
    _is_nonpositive_integer,
    _kahan_step,
    pfq,
)

__all__ = [
    "KERNELS",
    "IntegrandSpec",
    "AntiderivativeValue",
    "lifted_params",
    "series_block",
    "integrand_value",
    "antiderivative",
    "definite_integral",
]

KERNELS = ("exp", "cosh", "sinh", "cos", "sin")

_PRODUCT_POLE_TOL = 1e-12
_PRODUCT_NEAR_POLE = 1e-6


@dataclass(frozen=True)
class IntegrandSpec:
    """Integrand x^alpha * kernel(eta x^beta) * pFq(a; b; lam x^gamma)."""

    kernel: str
    alpha: complex = 0.0
    beta: complex = 1.0
    eta: complex = 1.0
    lam: complex = 0.0
    gamma: complex = 1.0
    pfq: PFqParams = field(default_factory=PFqParams)

    def __post_init__(self):
        if self.kernel not in KERNELS:
            raise ValueError(f"kernel must be one of {KERNELS}, got {self.kernel!r}")
        for name in ("alpha", "beta", "eta", "lam", "gamma"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.gamma == 0:
            raise ValueError("gamma must be nonzero")


@dataclass
class AntiderivativeValue:
    value: complex
    outer_terms_used: int
    inner_diagnostics: SeriesEvaluation | None
    error_estimate: float
    warnings: list[str] = field(default_factory=list)
    converged: bool = True


def lifted_params(spec: IntegrandSpec, count: int) -> PFqParams:
    """Parameter lists lifted by the entries for m = 0..count (inclusive).

    ``count`` is the largest appended index: the plain exponential outer sum
    uses count = j, the even/odd split sums use count = 2j or 2j+1.  Raises
    :class:`LiftedLowerPole` if an appended lower entry is a nonpositive
    integer not cancelled by an identical upper entry.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    added_upper = [
        (spec.alpha + m * spec.beta + 1.0) / spec.gamma for m in range(count + 1)
    ]
    added_lower = [
        (spec.alpha + spec.gamma + m * spec.beta + 1.0) / spec.gamma
        for m in range(count + 1)
    ]
    upper = list(spec.pfq.upper) + added_upper
    for b in added_lower:
        if _is_nonpositive_integer(b) and b not in upper:
            raise LiftedLowerPole(
                f"appended lower parameter {b} is a nonpositive integer"
            )
    return PFqParams(tuple(upper), tuple(spec.pfq.lower) + tuple(added_lower))


@dataclass
class _Block:
    value: complex
    outer_terms: int
    error_estimate: float
    inner_worst: SeriesEvaluation | None
    warnings: list[str]
    converged: bool


def series_block(
    spec: IntegrandSpec,
    x: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    parity: str = "all",
    alternating: bool = False,
    eta_scale: complex = 1.0,
) -> _Block:
    """One outer sum of the antiderivative series, without any prefactor.

    parity "all":  sum_j (-t)^j     / prod_{m=0..j}    (alpha+m*beta+1) * F_j
    parity "even": sum_j s_j t^(2j)  / prod_{m=0..2j}   (...)            * F_2j
    parity "odd":  sum_j s_j t^(2j+1)/ prod_{m=0..2j+1} (...)            * F_2j+1

    with t = beta*(eta_scale*eta)*x^beta, s_j = (-1)^j when ``alternating``
    (trigonometric kernels), and F_c the pFq at :func:`lifted_params` count c
    evaluated at lam*x^gamma.  The outer sum receives a tenth of the policy's
    term budget; each inner pFq gets the full policy.
    """
    if parity not in ("all", "even", "odd"):
        raise ValueError(f"unknown parity {parity!r}")
    x = float(x)
    if x < 0.0:
        raise ValueError("x must be nonnegative (principal powers only)")
    t = spec.beta * (eta_scale * spec.eta) * (x**spec.beta if x != 0.0 else 0.0)
    z_inner = spec.lam * (x**spec.gamma) if x != 0.0 else 0.0j
    max_outer = max(1, policy.max_terms // 10)

    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    err = 0.0
    warnings: list[str] = []
    inner_worst: SeriesEvaluation | None = None
    converged = False
    inner_all_converged = True
    small_run = 0
    prod = 1.0 + 0.0j
    m_done = -1
    if parity == "all":
        power = 1.0 + 0.0j
        step = -t
    elif parity == "even":
        power = 1.0 + 0.0j
        step = t * t
    else:
        power = t
        step = t * t

    j = 0
    last_mag = 0.0
    while j < max_outer:
        if power == 0:
            # Every remaining outer term vanishes identically.
            converged = True
            last_mag = 0.0
            break
        m_target = {"all": j, "even": 2 * j, "odd": 2 * j + 1}[parity]
        while m_done < m_target:
            m_done += 1
            factor = spec.alpha + m_done * spec.beta + 1.0
            mag = abs(factor)
            if mag <= _PRODUCT_POLE_TOL:
                raise ProductPole(
                    f"alpha + m*beta + 1 vanishes at m = {m_done}"
                )
            if mag < _PRODUCT_NEAR_POLE:
                warnings.append(
                    f"near pole: |alpha + {m_done}*beta + 1| = {mag:.3g}"
                )
            prod *= factor
        coeff = power / prod
        if alternating and j % 2 == 1:
            coeff = -coeff
        try:
            inner = pfq(lifted_params(spec, m_target), z_inner, policy)
        except NotConverged as exc:
            inner = exc.result
            inner_all_converged = False
            warnings.append(f"inner series not converged at outer index {j}")
        if inner_worst is None or inner.error_estimate > inner_worst.error_estimate:
            inner_worst = inner
        term = coeff * inner.value
        if not cmath.isfinite(term):
            warnings.append(f"non-finite outer term at index {j}; sum truncated")
            inner_all_converged = False
            break
        last_mag = abs(term)
        err += abs(coeff) * inner.error_estimate
        if j > 0 and last_mag < policy.rel_tol * abs(total) + policy.abs_tol:
            small_run += 1
        else:
            small_run = 0
        total, comp = _kahan_step(total, comp, term)
        j += 1
        if small_run >= policy.consecutive_small:
            converged = True
            break
        power *= step

    err += last_mag
    return _Block(
        value=total,
        outer_terms=j,
        error_estimate=err,
        inner_worst=inner_worst,
        warnings=warnings,
        converged=converged and inner_all_converged,
    )


def integrand_value(
    spec: IntegrandSpec, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> complex:
    """Direct value of x^alpha * kernel(eta x^beta) * pFq(lam x^gamma)."""
    x = float(x)
    if x <= 0.0:
        raise ValueError("integrand evaluation requires x > 0")
    kernel_fn = {
        "exp": cmath.exp,
        "cosh": cmath.cosh,
        "sinh": cmath.sinh,
        "cos": cmath.cos,
        "sin": cmath.sin,
    }[spec.kernel]
    inner = pfq(spec.pfq, spec.lam * x**spec.gamma, policy)
    return (x**spec.alpha) * kernel_fn(spec.eta * x**spec.beta) * inner.value


def _merge(
    pieces: list[tuple[complex, _Block]], prefactor: complex
) -> AntiderivativeValue:
    value = 0.0 + 0.0j
    err = 0.0
    warnings: list[str] = []
    inner_worst: SeriesEvaluation | None = None
    outer_terms = 0
    converged = True
    for weight, block in pieces:
        value += weight * block.value
        err += abs(weight) * block.error_estimate
        warnings.extend(block.warnings)
        outer_terms = max(outer_terms, block.outer_terms)
        converged = converged and block.converged
        if block.inner_worst is not None and (
            inner_worst is None
            or block.inner_worst.error_estimate > inner_worst.error_estimate
        ):
            inner_worst = block.inner_worst
    return AntiderivativeValue(
        value=prefactor * value,
        outer_terms_used=outer_terms,
        inner_diagnostics=inner_worst,
        error_estimate=abs(prefactor) * err,
        warnings=warnings,
        converged=converged,
    )


def antiderivative(
    spec: IntegrandSpec, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> AntiderivativeValue:
    """Series antiderivative of the integrand at real x >= 0 (constant = 0).

    At x = 0 the value is 0 provided Re(alpha) > -1 (the x^(alpha+1)
    prefactor vanishes and every series factor is finite).  Raises
    :class:`NotConverged` with the partial result attached if any truncation
    budget is exhausted.
    """
    if isinstance(x, complex):
        if x.imag != 0.0:
            raise ValueError("antiderivative supports real nonnegative x only")
        x = x.real
    x = float(x)
    if x < 0.0:
        raise ValueError("antiderivative supports real nonnegative x only")
    if x == 0.0:
        if spec.alpha.real <= -1.0:
            raise ValueError("x = 0 requires Re(alpha) > -1")
        return AntiderivativeValue(0.0 + 0.0j, 0, None, 0.0)

    w = spec.eta * x**spec.beta
    front = x ** (spec.alpha + 1.0)
    if spec.kernel == "exp":
        blk = series_block(spec, x, policy, "all")
        out = _merge([(cmath.exp(w), blk)], front)
    elif spec.kernel == "cosh":
        even = series_block(spec, x, policy, "even")
        odd = series_block(spec, x, policy, "odd")
        out = _merge([(cmath.cosh(w), even), (-cmath.sinh(w), odd)], front)
    elif spec.kernel == "sinh":
        even = series_block(spec, x, policy, "even")
        odd = series_block(spec, x, policy, "odd")
        out = _merge([(cmath.sinh(w), even), (-cmath.cosh(w), odd)], front)
    elif spec.kernel == "cos":
        even = series_block(spec, x, policy, "even", alternating=True)
        odd = series_block(spec, x, policy, "odd", alternating=True)
        out = _merge([(cmath.cos(w), even), (cmath.sin(w), odd)], front)
    else:  # sin
        even = series_block(spec, x, policy, "even", alternating=True)
        odd = series_block(spec, x, policy, "odd", alternating=True)
        out = _merge([(cmath.sin(w), even), (-cmath.cos(w), odd)], front)
    if not out.converged:
        raise NotConverged("antiderivative series did not converge", result=out)
    return out


def definite_integral(
    spec: IntegrandSpec, a: float, b: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> AntiderivativeValue:
    """Definite integral over [a, b] as antiderivative(b) - antiderivative(a)."""
    fb = antiderivative(spec, b, policy)
    fa = antiderivative(spec, a, policy)
    return AntiderivativeValue(
        value=fb.value - fa.value,
        outer_terms_used=max(fa.outer_terms_used, fb.outer_terms_used),
        inner_diagnostics=(
            fb.inner_diagnostics
            if fa.inner_diagnostics is None
            or (
                fb.inner_diagnostics is not None
                and fb.inner_diagnostics.error_estimate
                >= fa.inner_diagnostics.error_estimate
            )
            else fa.inner_diagnostics
        ),
        error_estimate=fa.error_estimate + fb.error_estimate,
        warnings=fa.warnings + fb.warnings,
        converged=fa.converged and fb.converged,
    )
