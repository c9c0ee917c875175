"""Independent numerical integration and differentiation.

Everything here is ground truth for the series evaluators, so this module
deliberately shares no code with them beyond scalar arithmetic: a fixed
15/7-point Gauss-Kronrod pair with adaptive bisection, a tanh-sinh variable
change for endpoint singularities, a logarithmic map for semi-infinite
ranges, half-period panel summation for Fourier-type oscillation, and
Richardson-extrapolated central differences.

Integrands may return complex values; error magnitudes use the modulus.
"""

from __future__ import annotations

import cmath
import heapq
import math
from dataclasses import dataclass
from typing import Callable

from .errors import DecayTooSlow, MaxSubdivisions, NoiseFloor, SingularInterior

__all__ = [
    "QuadratureResult",
    "quad_finite",
    "quad_semi_infinite",
    "quad_oscillatory_fourier",
    "fd_derivative",
    "fd_derivative_n",
    "airy_oracle",
]

# 15-point Kronrod nodes (nonnegative half) with Kronrod weights, and the
# weights of the embedded 7-point Gauss rule at the even-index nodes.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

_MAX_PANELS = 10_000
_EPS = 2.220446049250313e-16
_DE_TMAX = 6.0  # tanh-sinh cutoff; node distance from an endpoint ~ 1e-101*h


@dataclass
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int
    converged: bool


class _EvalCounter:
    __slots__ = ("count",)

    def __init__(self):
        self.count = 0


def _qk15(f: Callable[[float], complex], a: float, b: float, counter: _EvalCounter):
    """One Gauss-Kronrod 15/7 panel; returns (value, error_estimate)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = complex(f(c))
    counter.count += 15
    resg = _WG[3] * fc
    resk = _WGK[7] * fc
    pairs = []
    for i in range(7):
        dx = h * _XGK[i]
        f1 = complex(f(c - dx))
        f2 = complex(f(c + dx))
        pairs.append((f1, f2))
        resk += _WGK[i] * (f1 + f2)
        if i % 2 == 1:
            resg += _WG[i // 2] * (f1 + f2)
    if not (cmath.isfinite(resk) and cmath.isfinite(resg)):
        raise SingularInterior(
            f"non-finite integrand value inside panel [{a:.6g}, {b:.6g}]"
        )
    reskh = 0.5 * resk
    resabs = _WGK[7] * abs(fc)
    resasc = _WGK[7] * abs(fc - reskh)
    for i, (f1, f2) in enumerate(pairs):
        resabs += _WGK[i] * (abs(f1) + abs(f2))
        resasc += _WGK[i] * (abs(f1 - reskh) + abs(f2 - reskh))
    ah = abs(h)
    resabs *= ah
    resasc *= ah
    err = abs(resk - resg) * ah
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    err = max(err, 50.0 * _EPS * resabs)
    return resk * h, err


def _adaptive(f, a, b, tol, counter, max_panels=_MAX_PANELS) -> QuadratureResult:
    val, err = _qk15(f, a, b, counter)
    heap = [(-err, 0, a, b, val, err)]
    total_val, total_err = val, err
    seq = 1
    while total_err > tol * max(1.0, abs(total_val)):
        if len(heap) >= max_panels:
            raise MaxSubdivisions(
                f"exceeded {max_panels} panels with error {total_err:.3g}",
                result=QuadratureResult(total_val, total_err, counter.count, False),
            )
        _, _, pa, pb, pval, perr = heapq.heappop(heap)
        mid = 0.5 * (pa + pb)
        if mid == pa or mid == pb:
            # Interval at floating-point resolution; accept its estimate.
            heapq.heappush(heap, (0.0, seq, pa, pb, pval, perr))
            seq += 1
            if all(item[0] == 0.0 for item in heap):
                break
            continue
        lval, lerr = _qk15(f, pa, mid, counter)
        rval, rerr = _qk15(f, mid, pb, counter)
        total_val += lval + rval - pval
        total_err += lerr + rerr - perr
        heapq.heappush(heap, (-lerr, seq, pa, mid, lval, lerr))
        heapq.heappush(heap, (-rerr, seq + 1, mid, pb, rval, rerr))
        seq += 2
    # Re-sum for a cancellation-free total.
    total_val = sum(item[4] for item in heap)
    total_err = sum(item[5] for item in heap)
    converged = total_err <= tol * max(1.0, abs(total_val))
    return QuadratureResult(total_val, total_err, counter.count, converged)


def _probe_finite(f, x) -> bool:
    try:
        return cmath.isfinite(complex(f(x)))
    except (ArithmeticError, ValueError):
        return False


def _tanh_sinh_transform(f, a, b):
    """Map f on (a, b) to a smooth integrand on [-_DE_TMAX, _DE_TMAX].

    Endpoint distances are computed in a cancellation-free form, so algebraic
    endpoint singularities are resolved to full precision when the singular
    endpoint sits at 0.
    """
    h = 0.5 * (b - a)

    def g(t):
        u = 0.5 * math.pi * math.sinh(t)
        e = math.exp(-2.0 * abs(u))
        sech2 = 4.0 * e / ((1.0 + e) ** 2)
        margin = 2.0 * h * e / (1.0 + e)  # h*(1 -/+ tanh u), stable form
        x = a + margin if u < 0 else b - margin
        if x <= a or x >= b:
            return 0.0j
        weight = h * 0.5 * math.pi * math.cosh(t) * sech2
        try:
            fx = complex(f(x))
        except (ArithmeticError, ValueError):
            fx = complex("nan")
        if not cmath.isfinite(fx):
            if abs(t) >= 3.0:
                # Deep in the transformed tail the weight is far below any
                # integrable singularity's contribution; drop the node.
                return 0.0j
            raise SingularInterior(f"non-finite integrand at x = {x!r}")
        return fx * weight

    return g


def quad_finite(
    f: Callable[[float], complex],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_panels: int = _MAX_PANELS,
) -> QuadratureResult:
    """Adaptive Gauss-Kronrod integration of f over [a, b].

    Endpoints are probed first; a non-finite endpoint value switches to the
    tanh-sinh (double-exponential) variable change, which never evaluates f
    at the endpoints.  ``converged`` guarantees
    ``error_estimate <= tol * max(1, |value|)``.

    Algebraic singularities at an endpoint equal to 0 are resolved to full
    precision (node distances are computed in a cancellation-free form);
    a singular endpoint away from 0 is limited to ~1e-8 by floating-point
    absorption of the node offsets.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    a, b = float(a), float(b)
    if a == b:
        return QuadratureResult(0.0 + 0.0j, 0.0, 0, True)
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    counter = _EvalCounter()
    if _probe_finite(f, a) and _probe_finite(f, b):
        counter.count += 2
        res = _adaptive(f, a, b, tol, counter, max_panels)
    else:
        g = _tanh_sinh_transform(f, a, b)
        res = _adaptive(g, -_DE_TMAX, _DE_TMAX, tol, counter, max_panels)
    res.value *= sign
    return res


_TAIL_PROBES = (40.0, 60.0, 80.0)


def quad_semi_infinite(
    f: Callable[[float], complex],
    tol: float = 1e-10,
    max_panels: int = _MAX_PANELS,
) -> QuadratureResult:
    """Integrate f over [0, inf) via the map x = -ln t onto (0, 1].

    Requires at least exponential decay; the tail beyond the probe points is
    bounded by ``max |f(X)|*X`` and rejected when it exceeds tol.
    """
    tail = 0.0
    for x_probe in _TAIL_PROBES:
        try:
            v = abs(complex(f(x_probe)))
        except (ArithmeticError, ValueError):
            v = math.inf
        if not math.isfinite(v):
            raise DecayTooSlow(f"integrand not finite at tail probe x = {x_probe}")
        tail = max(tail, v * x_probe)
    if tail > tol:
        raise DecayTooSlow(
            f"tail bound {tail:.3g} exceeds tolerance {tol:.3g}; "
            "integrand must decay at least exponentially"
        )

    def g(t: float) -> complex:
        if t <= 0.0:
            return 0.0 + 0.0j
        return complex(f(-math.log(t))) / t

    res = quad_finite(g, 0.0, 1.0, tol, max_panels)
    res.error_estimate += tail
    return res


def quad_oscillatory_fourier(
    f_envelope: Callable[[float], complex],
    k: float,
    tol: float = 1e-10,
    trig: str = "cos",
    max_panels: int = _MAX_PANELS,
) -> QuadratureResult:
    """Integrate envelope(x)*cos(kx) (or *sin(kx)) over the real line.

    The range is truncated at +/-L where the envelope falls below tol/10,
    then integrated in half-period panels that are summed with compensation.
    Requires a Gaussian-class envelope decay.
    """
    if trig not in ("cos", "sin"):
        raise ValueError("trig must be 'cos' or 'sin'")
    k = float(k)
    osc = math.cos if trig == "cos" else math.sin

    def integrand(x: float) -> complex:
        return complex(f_envelope(x)) * osc(k * x)

    L = 1.0
    while L < 1e6 and (
        abs(complex(f_envelope(L))) > 0.1 * tol
        or abs(complex(f_envelope(-L))) > 0.1 * tol
    ):
        L *= 2.0
    if L >= 1e6:
        raise DecayTooSlow("envelope does not reach tol/10 by |x| = 1e6")

    if k == 0.0:
        return quad_finite(integrand, -L, L, tol, max_panels)

    width = math.pi / abs(k)
    n_panels = max(1, math.ceil(2.0 * L / width))
    panel_tol = tol / n_panels
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    err = 0.0
    evals = 0
    converged = True
    left = -L
    for i in range(n_panels):
        right = L if i == n_panels - 1 else -L + (i + 1) * width
        r = quad_finite(integrand, left, right, panel_tol, max_panels)
        y = r.value - comp
        t = total + y
        comp = (t - total) - y
        total = t
        err += r.error_estimate
        evals += r.evaluations
        converged = converged and r.converged
        left = right
    return QuadratureResult(total, err, evals, converged)


# Central-difference stencils: order -> (offsets, coefficients, h power).
_FD_STENCILS = {
    1: ((1, -1), (0.5, -0.5), 1),
    2: ((1, 0, -1), (1.0, -2.0, 1.0), 2),
    4: ((2, 1, 0, -1, -2), (1.0, -4.0, 6.0, -4.0, 1.0), 4),
}
_FD_DEFAULT_H0 = {1: 0.25, 2: 0.4, 4: 0.6}
_FD_CONTRACT = 1.6
_FD_LEVELS = 10


def _ridders_ladder(f, x, offsets, coeffs, power, h):
    fx = complex(f(x)) if 0 in offsets else None

    def stencil(step: float) -> complex:
        acc = 0.0 + 0.0j
        for off, cf in zip(offsets, coeffs):
            val = fx if off == 0 else complex(f(x + off * step))
            acc += cf * val
        return acc / step**power

    fac = _FD_CONTRACT**2
    tab: list[list[complex]] = []
    best = None
    best_err = math.inf
    for i in range(_FD_LEVELS):
        row = [stencil(h / _FD_CONTRACT**i)]
        if i == 0:
            best = row[0]
        for j in range(1, i + 1):
            fj = fac**j
            row.append((row[j - 1] * fj - tab[i - 1][j - 1]) / (fj - 1.0))
            err = max(abs(row[j] - row[j - 1]), abs(row[j] - tab[i - 1][j - 1]))
            if err <= best_err:
                best, best_err = row[j], err
        if i > 0 and abs(row[i] - tab[i - 1][i - 1]) >= 2.0 * best_err:
            break
        tab.append(row)
    return best, best_err


def fd_derivative_n(
    f: Callable[[float], complex],
    x: float,
    order: int,
    tol: float = 1e-6,
    h0: float | None = None,
) -> complex:
    """Richardson-extrapolated central-difference derivative of order 1, 2 or 4.

    Walks a shrinking step ladder, extrapolating the O(h^2) error away and
    tracking the most trustworthy entry; stops once roundoff makes successive
    extrapolants diverge.  An unlucky initial step can end the ladder early,
    so one retry with a smaller step precedes giving up.  Raises
    :class:`NoiseFloor` (best value attached) when the requested tolerance is
    unreachable.
    """
    if order not in _FD_STENCILS:
        raise ValueError(f"unsupported derivative order {order}")
    offsets, coeffs, power = _FD_STENCILS[order]
    h = h0 if h0 is not None else _FD_DEFAULT_H0[order] * max(1.0, abs(x))
    best, best_err = _ridders_ladder(f, x, offsets, coeffs, power, h)
    if best_err > 0.0 and best_err > tol * max(1.0, abs(best)):
        retry, retry_err = _ridders_ladder(f, x, offsets, coeffs, power, h / 3.2)
        if retry_err < best_err:
            best, best_err = retry, retry_err
    if best_err > 0.0 and best_err > tol * max(1.0, abs(best)):
        raise NoiseFloor(
            f"finite-difference noise floor {best_err:.3g} above tolerance",
            result=best,
        )
    return best


def fd_derivative(f: Callable[[float], complex], x: float, tol: float = 1e-8) -> complex:
    """First derivative of f at x by Richardson-extrapolated central differences."""
    return fd_derivative_n(f, x, 1, tol)


def airy_oracle(z: complex, tol: float = 1e-10) -> QuadratureResult:
    """Airy Ai(z) from its contour-integral representation, by quadrature only.

    The two half-line pieces of ``integral exp(i(t^3/3 + z t)) dt`` are
    rotated into the decay sectors of the cubic factor: t = s e^(i pi/6) for
    the right piece and t = s e^(-i pi/6) for the left one (after t -> -t),
    both giving |exp(i t^3/3)| = exp(-s^3/3).  For real z the two pieces are
    conjugate and a single integral suffices.  Intended for moderate |z|:
    the target value is exponentially smaller than the ray integrals, so
    double precision runs out of cancellation headroom beyond |z| ~ 15 on
    the decaying side.
    """
    z = complex(z)
    w1 = cmath.exp(1j * math.pi / 6.0)
    if z.imag == 0.0:
        zr = z.real

        def g(s: float) -> complex:
            return cmath.exp(-(s**3) / 3.0 + 1j * zr * w1 * s)

        r = quad_semi_infinite(g, tol)
        value = (w1 * r.value).real / math.pi
        return QuadratureResult(
            complex(value, 0.0), r.error_estimate / math.pi, r.evaluations, r.converged
        )
    w2 = cmath.exp(-1j * math.pi / 6.0)

    def ray(w, sign):
        def g(s: float) -> complex:
            t = s * w
            return cmath.exp(sign * 1j * (t**3 / 3.0 + z * t))

        return quad_semi_infinite(g, tol)

    r1 = ray(w1, +1)
    r2 = ray(w2, -1)
    value = (w1 * r1.value + w2 * r2.value) / (2.0 * math.pi)
    err = (r1.error_estimate + r2.error_estimate) / (2.0 * math.pi)
    return QuadratureResult(
        value, err, r1.evaluations + r2.evaluations, r1.converged and r2.converged
    )
