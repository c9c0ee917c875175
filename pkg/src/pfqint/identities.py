"""Numeric residual checks for the product identity and the six series identities.

Each check assembles both sides from the shared series blocks and reports the
relative residual |lhs - rhs| / max(|lhs|, |rhs|, 1); the floor of 1 keeps the
ratio meaningful when both sides vanish together.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import PochhammerPole
from .series_integrals import IntegrandSpec, series_block
from .special_functions import DEFAULT_POLICY, TruncationPolicy, pochhammer

__all__ = ["IDENTITY_IDS", "IdentityCase", "lemma1_residual", "theorem_residual"]

IDENTITY_IDS = ("lemma1", "t1", "t2", "t3", "t4", "t5", "t6")

_POCHHAMMER_ZERO_TOL = 1e-300


@dataclass(frozen=True)
class IdentityCase:
    identity_id: str
    spec: IntegrandSpec | None = None
    x: float = 1.0
    n: int = 0
    j: int = 0

    def __post_init__(self):
        if self.identity_id not in IDENTITY_IDS:
            raise ValueError(f"identity_id must be one of {IDENTITY_IDS}")
        if self.identity_id == "lemma1" and (self.n < 0 or self.j < 0):
            raise ValueError("lemma1 requires n >= 0 and j >= 0")


def lemma1_residual(
    alpha: complex, beta: complex, gamma: complex, n: int, j: int
) -> float:
    """Residual of the shifted-product identity

        prod_{m=0..j} (n*gamma + alpha + m*beta + 1)
          = prod_{m=0..j} (alpha + m*beta + 1)
            * prod_m ((alpha+gamma+m*beta+1)/gamma)_n
            / prod_m ((alpha+m*beta+1)/gamma)_n

    evaluated two-sided with independent products, relative with floor 1.
    """
    alpha, beta, gamma = complex(alpha), complex(beta), complex(gamma)
    if gamma == 0:
        raise ValueError("gamma must be nonzero")
    if n < 0 or j < 0:
        raise ValueError("n and j must be nonnegative integers")
    lhs = 1.0 + 0.0j
    for m in range(j + 1):
        lhs *= n * gamma + alpha + m * beta + 1.0
    rhs = 1.0 + 0.0j
    for m in range(j + 1):
        rhs *= alpha + m * beta + 1.0
        rhs *= pochhammer((alpha + gamma + m * beta + 1.0) / gamma, n)
        denom = pochhammer((alpha + m * beta + 1.0) / gamma, n)
        if abs(denom) < _POCHHAMMER_ZERO_TOL:
            raise PochhammerPole(
                f"((alpha + {m}*beta + 1)/gamma)_{n} vanishes"
            )
        rhs /= denom
    return abs(lhs - rhs) / max(abs(lhs), 1.0)


def _relative_residual(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)


def theorem_residual(
    case: IdentityCase, policy: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """Relative residual of one of the six series identities at case.x.

    Both sides are assembled from the same primitive blocks the
    antiderivatives use: the hyperbolic identities relate the even/odd split
    sums (non-alternating) to exponential sums at +/-eta, and the
    trigonometric ones relate the alternating split sums to exponential sums
    at +/-i*eta.
    """
    if case.identity_id == "lemma1":
        s = case.spec
        return lemma1_residual(s.alpha, s.beta, s.gamma, case.n, case.j)
    spec = case.spec
    x = float(case.x)
    w = spec.eta * x**spec.beta

    def blk(parity, alternating=False, eta_scale=1.0):
        return series_block(spec, x, policy, parity, alternating, eta_scale).value

    tid = case.identity_id
    if tid in ("t1", "t2", "t3"):
        even = blk("even")
        odd = blk("odd")
        p_plus = blk("all", eta_scale=1.0)
        p_minus = blk("all", eta_scale=-1.0)
        if tid == "t1":
            lhs = cmath.cosh(w) * even - cmath.sinh(w) * odd
            rhs = 0.5 * (cmath.exp(w) * p_plus + cmath.exp(-w) * p_minus)
        elif tid == "t2":
            lhs = cmath.sinh(w) * even - cmath.cosh(w) * odd
            rhs = 0.5 * (cmath.exp(w) * p_plus - cmath.exp(-w) * p_minus)
        else:
            lhs = cmath.exp(w) * p_plus
            rhs = (
                cmath.cosh(w) * even
                - cmath.sinh(w) * odd
                + cmath.sinh(w) * even
                - cmath.cosh(w) * odd
            )
        return _relative_residual(lhs, rhs)

    even = blk("even", alternating=True)
    odd = blk("odd", alternating=True)
    p_plus = blk("all", eta_scale=1.0j)
    p_minus = blk("all", eta_scale=-1.0j)
    e_plus = cmath.exp(1j * w)
    e_minus = cmath.exp(-1j * w)
    if tid == "t4":
        lhs = cmath.cos(w) * even + cmath.sin(w) * odd
        rhs = 0.5 * (e_plus * p_plus + e_minus * p_minus)
    elif tid == "t5":
        lhs = cmath.sin(w) * even - cmath.cos(w) * odd
        rhs = (e_plus * p_plus - e_minus * p_minus) / 2.0j
    else:  # t6
        lhs = e_plus * p_plus
        rhs = (
            cmath.cos(w) * even
            + cmath.sin(w) * odd
            + 1j * (cmath.sin(w) * even - cmath.cos(w) * odd)
        )
    return _relative_residual(lhs, rhs)
