"""Complex gamma machinery and the generalized hypergeometric series engine.

The central object is the series

    pFq(a_1..a_p; b_1..b_q; z) = sum_n  [prod_i (a_i)_n / prod_j (b_j)_n] z^n / n!

with (t)_n the rising factorial.  All scalars are complex; evaluation is
scalar (no arrays) with compensated accumulation, because the callers build
deep double sums out of these values and rounding accumulates fast otherwise.

Convergent evaluation lives in :func:`pfq`.  Two asymptotic companions cover
the regimes the convergent series cannot reach: the large-argument confluent
form (:func:`pfq_1f1_asymptotic`) and the divergent 2F0 summed to its
smallest term (:func:`two_f_zero_asymptotic`).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import (
    ArgumentTooSmall,
    DivergentSeries,
    LowerParameterPole,
    NoDecreasingRegime,
    NotConverged,
    PoleAtNonpositiveInteger,
)

__all__ = [
    "TruncationPolicy",
    "PFqParams",
    "SeriesEvaluation",
    "DEFAULT_POLICY",
    "CONVERGENT",
    "ASYMPTOTIC",
    "log_gamma",
    "pochhammer",
    "pfq",
    "pfq_1f1_asymptotic",
    "two_f_zero_asymptotic",
]

CONVERGENT = "convergent"
ASYMPTOTIC = "asymptotic"

# Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's set).
# Verified to give relative error of exp(log_gamma) below 3e-14 on the
# desk-scale grid |Re z| <= 30, |Im z| <= 20.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEFFS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LOG_SQRT_2PI = 0.9189385332046727417803297364

_POLE_TOL = 1e-12
_DIRECT_POCHHAMMER_MAX = 64

# Floor below which the leading-order confluent asymptotic is refused.
ONE_F_ONE_ASYMPTOTIC_FLOOR = 30.0

# An asymptotic evaluation is flagged converged when its first-omitted-term
# bound is at most this fraction of the value.
ASYMPTOTIC_ACCEPT_REL = 1e-4


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule shared by every truncated series in the package.

    A series stops once ``consecutive_small`` successive terms satisfy
    ``|term| < rel_tol*|partial| + abs_tol``; requiring several small terms
    in a row guards against false stops of alternating series.
    """

    rel_tol: float = 1e-14
    abs_tol: float = 1e-300
    max_terms: int = 10_000
    consecutive_small: int = 3

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_terms < 1 or self.consecutive_small < 1:
            raise ValueError("max_terms and consecutive_small must be >= 1")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class PFqParams:
    """Upper parameters a_1..a_p and lower parameters b_1..b_q."""

    upper: tuple[complex, ...] = ()
    lower: tuple[complex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(complex(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(complex(b) for b in self.lower))

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)


@dataclass
class SeriesEvaluation:
    """Value of a truncated series together with its truncation diagnostics.

    For ``mode == "asymptotic"`` the error estimate is the magnitude of the
    first omitted term.  When ``converged`` is False the value is still the
    best available partial sum.
    """

    value: complex
    terms_used: int
    error_estimate: float
    mode: str
    converged: bool


def _is_nonpositive_integer(z: complex, tol: float = _POLE_TOL) -> bool:
    z = complex(z)
    if abs(z.imag) > tol:
        return False
    r = round(z.real)
    return r <= 0 and abs(z.real - r) <= tol


def _kahan_step(total: complex, comp: complex, term: complex) -> tuple[complex, complex]:
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def log_gamma(z: complex) -> complex:
    """Principal branch of ln Gamma(z) for complex z.

    Lanczos approximation in the right half plane, reflection formula for
    Re(z) < 1/2.  Raises :class:`PoleAtNonpositiveInteger` within 1e-12 of a
    pole.
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleAtNonpositiveInteger(f"log_gamma pole at z = {z}")
    if z.real < 0.5:
        return (
            cmath.log(cmath.pi)
            - cmath.log(cmath.sin(cmath.pi * z))
            - log_gamma(1.0 - z)
        )
    w = z - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (w + 0.5) * cmath.log(t) - t + cmath.log(acc)


def pochhammer(theta: complex, n: int) -> complex:
    """Rising factorial (theta)_n = theta (theta+1) ... (theta+n-1), (theta)_0 = 1.

    Direct product for n <= 64 (exact recurrence), gamma-ratio beyond.
    Returns 0 exactly when theta is a nonpositive integer with |theta| < n.
    """
    if n < 0 or n != int(n):
        raise ValueError("pochhammer requires a nonnegative integer n")
    theta = complex(theta)
    n = int(n)
    if n == 0:
        return 1.0 + 0.0j
    exact_npi = theta.imag == 0.0 and theta.real == round(theta.real) and theta.real <= 0.0
    if exact_npi and -theta.real < n:
        return 0.0 + 0.0j
    if n <= _DIRECT_POCHHAMMER_MAX or exact_npi:
        out = 1.0 + 0.0j
        for m in range(n):
            out *= theta + m
        return out
    return cmath.exp(log_gamma(theta + n) - log_gamma(theta))


def _cancel_matching(
    upper: tuple[complex, ...], lower: tuple[complex, ...]
) -> tuple[list[complex], list[complex]]:
    # Exact-match upper/lower pairs contribute a factor 1 to every term.
    remaining_lower = list(lower)
    kept_upper = []
    for a in upper:
        if a in remaining_lower:
            remaining_lower.remove(a)
        else:
            kept_upper.append(a)
    return kept_upper, remaining_lower


def _terminating_index(upper: list[complex]) -> int | None:
    stop = None
    for a in upper:
        if a.imag == 0.0 and a.real == round(a.real) and a.real <= 0.0:
            m = int(-a.real)
            stop = m if stop is None else min(stop, m)
    return stop


def pfq(params: PFqParams, z: complex, policy: TruncationPolicy = DEFAULT_POLICY) -> SeriesEvaluation:
    """Convergent evaluation of pFq(a; b; z) by the term-ratio recurrence.

    Terms follow ``term_{n+1} = term_n * prod(a_i+n)/prod(b_j+n) * z/(n+1)``
    and are accumulated with compensated summation.  Identical upper/lower
    parameters are cancelled exactly before evaluation.  A nonpositive-integer
    upper parameter terminates the series exactly (polynomial case).

    Raises
    ------
    LowerParameterPole
        if a (post-cancellation) lower parameter is a nonpositive integer.
    DivergentSeries
        if p > q+1 with z != 0, or p == q+1 with |z| >= 1; neither regime is
        summable by this routine.
    NotConverged
        if ``policy.max_terms`` is exhausted; the partial result rides along
        in the error payload.
    """
    z = complex(z)
    upper, lower = _cancel_matching(params.upper, params.lower)
    for b in lower:
        if _is_nonpositive_integer(b):
            raise LowerParameterPole(f"lower parameter {b} is a nonpositive integer")
    n_stop = _terminating_index(upper)
    p, q = len(upper), len(lower)
    if n_stop is None and z != 0:
        if p > q + 1:
            raise DivergentSeries(
                f"{p}F{q} has zero radius of convergence; use an asymptotic evaluator"
            )
        if p == q + 1 and abs(z) >= 1.0:
            raise DivergentSeries(
                f"{p}F{q} requires |z| < 1; got |z| = {abs(z):.6g}"
            )

    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    term = 1.0 + 0.0j
    small_run = 0
    terms_used = 0
    while terms_used < policy.max_terms:
        mag = abs(term)
        if terms_used > 0:
            if mag < policy.rel_tol * abs(total) + policy.abs_tol:
                small_run += 1
                if small_run >= policy.consecutive_small:
                    return SeriesEvaluation(total, terms_used, mag, CONVERGENT, True)
            else:
                small_run = 0
        total, comp = _kahan_step(total, comp, term)
        n = terms_used
        terms_used += 1
        if n_stop is not None and n >= n_stop:
            return SeriesEvaluation(total, terms_used, 0.0, CONVERGENT, True)
        ratio = z / (n + 1)
        for a in upper:
            ratio *= a + n
        for b in lower:
            ratio /= b + n
        term *= ratio
    result = SeriesEvaluation(total, terms_used, abs(term), CONVERGENT, False)
    raise NotConverged(
        f"pfq did not meet the stopping rule within {policy.max_terms} terms",
        result=result,
    )


def pfq_1f1_asymptotic(a: complex, b: complex, z: complex) -> SeriesEvaluation:
    """Leading-order large-|z| behavior of the confluent series 1F1(a; b; z).

    Sum of the two leading pieces

        Gamma(b)/Gamma(a) * e^z z^(a-b)   and   Gamma(b)/Gamma(b-a) * (-z)^(-a),

    the first dominating for Re z -> +inf and the second for Re z -> -inf.
    A piece whose reciprocal-gamma prefactor vanishes is dropped, so a == b
    returns e^z exactly at any argument.  The error estimate is the combined
    magnitude of the first omitted correction of each piece.
    """
    a, b, z = complex(a), complex(b), complex(z)
    if a == b:
        return SeriesEvaluation(cmath.exp(z), 1, 0.0, ASYMPTOTIC, True)
    if abs(z) < ONE_F_ONE_ASYMPTOTIC_FLOOR:
        raise ArgumentTooSmall(
            f"|z| = {abs(z):.6g} below the asymptotic validity floor "
            f"{ONE_F_ONE_ASYMPTOTIC_FLOOR}"
        )
    value = 0.0 + 0.0j
    first_correction = 0.0
    if not _is_nonpositive_integer(a):
        branch = cmath.exp(log_gamma(b) - log_gamma(a) + z + (a - b) * cmath.log(z))
        value += branch
        first_correction += abs(branch) * abs((b - a) * (1.0 - a) / z)
    if not _is_nonpositive_integer(b - a):
        branch = cmath.exp(log_gamma(b) - log_gamma(b - a) - a * cmath.log(-z))
        value += branch
        first_correction += abs(branch) * abs(a * (a - b + 1.0) / z)
    converged = first_correction <= ASYMPTOTIC_ACCEPT_REL * abs(value)
    return SeriesEvaluation(value, 1, first_correction, ASYMPTOTIC, converged)


def two_f_zero_asymptotic(a1: complex, a2: complex, z: complex) -> SeriesEvaluation:
    """Optimal truncation of the divergent series 2F0(a1, a2; ; z).

    Terms ``(a1)_n (a2)_n z^n / n!`` are summed while their magnitudes
    strictly decrease; the sum stops at the smallest term and the magnitude
    of the first omitted term is reported as the error estimate.  If an upper
    parameter is a nonpositive integer the series terminates exactly.

    Raises :class:`NoDecreasingRegime` when the very first term ratio already
    reaches 1 (|z| too large to extract any digits).
    """
    a1, a2, z = complex(a1), complex(a2), complex(z)
    if z == 0:
        return SeriesEvaluation(1.0 + 0.0j, 1, 0.0, ASYMPTOTIC, True)
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    term = 1.0 + 0.0j
    n = 0
    while True:
        nxt = term * (a1 + n) * (a2 + n) * z / (n + 1)
        if nxt == 0:
            total, comp = _kahan_step(total, comp, term)
            return SeriesEvaluation(total, n + 1, 0.0, ASYMPTOTIC, True)
        if abs(nxt) >= abs(term):
            if n == 0:
                raise NoDecreasingRegime(
                    f"first term ratio |a1*a2*z| = {abs(a1 * a2 * z):.6g} >= 1"
                )
            total, comp = _kahan_step(total, comp, term)
            err = abs(nxt)
            converged = err <= ASYMPTOTIC_ACCEPT_REL * abs(total)
            return SeriesEvaluation(total, n + 1, err, ASYMPTOTIC, converged)
        total, comp = _kahan_step(total, comp, term)
        term = nxt
        n += 1
