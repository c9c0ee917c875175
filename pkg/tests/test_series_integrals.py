import math
import random

import pytest

from conftest import SEED, random_integrand_spec, relerr
from pfqint import (
    IntegrandSpec,
    LiftedLowerPole,
    NotConverged,
    PFqParams,
    ProductPole,
    TruncationPolicy,
    antiderivative,
    definite_integral,
    integrand_value,
    lifted_params,
    quad_finite,
)
from pfqint.oracle import fd_derivative


def _spec(**kw):
    base = dict(kernel="exp", alpha=0.0, beta=1.0, eta=1.0, lam=0.0, gamma=1.0,
                pfq=PFqParams())
    base.update(kw)
    return IntegrandSpec(**base)


class TestLiftedParams:
    def test_basic_append(self):
        spec = _spec(gamma=2.0)
        lp = lifted_params(spec, 0)
        assert lp.upper == (0.5 + 0.0j,)
        assert lp.lower == (1.5 + 0.0j,)

    def test_append_keeps_base_lower(self):
        spec = _spec(beta=2.0, gamma=2.0, pfq=PFqParams((), (0.5,)))
        lp = lifted_params(spec, 0)
        assert lp.upper == (0.5 + 0.0j,)
        assert lp.lower == (0.5 + 0.0j, 1.5 + 0.0j)

    def test_each_count_adds_one_pair(self):
        spec = _spec(alpha=0.3, beta=0.7, gamma=1.3, pfq=PFqParams((1.1,), (2.2,)))
        for count in range(5):
            lp = lifted_params(spec, count)
            assert lp.p == 1 + count + 1
            assert lp.q == 1 + count + 1

    def test_lower_pole_detection(self):
        # alpha + gamma + 1 = 0 with gamma = 1 appends lower parameter 0.
        spec = _spec(alpha=-2.0, gamma=1.0)
        with pytest.raises(LiftedLowerPole):
            lifted_params(spec, 0)


class TestAntiderivative:
    def test_cos_kernel_collapses_to_sin(self):
        spec = _spec(kernel="cos")
        v = antiderivative(spec, math.pi / 2.0)
        assert relerr(v.value, 1.0) < 1e-12

    def test_exp_kernel_definite_is_e_minus_one(self):
        spec = _spec()
        oracle = quad_finite(math.exp, 0.0, 1.0, 1e-13)
        v = definite_integral(spec, 0.0, 1.0)
        assert relerr(v.value, oracle.value) < 1e-12

    def test_hidden_cosine_integrand(self):
        # eta = 0 and a 0F1 factor make the integrand cos(x).
        spec = _spec(eta=0.0, gamma=2.0, lam=-0.25, pfq=PFqParams((), (0.5,)))
        v = definite_integral(spec, 0.0, 1.0)
        assert relerr(v.value, math.sin(1.0)) < 1e-12
        oracle = quad_finite(math.cos, 0.0, 1.0, 1e-13)
        assert relerr(v.value, oracle.value) < 1e-12

    def test_x_cosh_definite(self):
        spec = _spec(kernel="cosh", alpha=1.0)
        oracle = quad_finite(lambda x: x * math.cosh(x), 0.0, 1.0, 1e-13)
        v = definite_integral(spec, 0.0, 1.0)
        assert relerr(v.value, oracle.value) < 1e-12

    def test_degenerate_interval(self):
        spec = _spec(kernel="sin", alpha=0.5)
        assert definite_integral(spec, 0.8, 0.8).value == 0.0

    def test_power_only_shape(self):
        # p = q = 0, gamma = 1, lam = 0: plain x^alpha e^(eta x^beta) against
        # the quadrature oracle.
        spec = _spec(alpha=0.7, beta=1.5, eta=-0.8)
        oracle = quad_finite(
            lambda x: x**0.7 * math.exp(-0.8 * x**1.5), 0.5, 1.5, 1e-13
        )
        v = definite_integral(spec, 0.5, 1.5)
        assert relerr(v.value, oracle.value) < 1e-11

    def test_lambda_zero_ignores_parameter_lists(self):
        a = _spec(kernel="sin", alpha=0.4, lam=0.0, pfq=PFqParams((1.3,), (0.7,)))
        b = _spec(kernel="sin", alpha=0.4, lam=0.0, pfq=PFqParams((), (2.9,)))
        x = 1.3
        assert antiderivative(a, x).value == antiderivative(b, x).value

    def test_cosh_plus_sinh_equals_exp(self):
        rng = random.Random(SEED + 2)
        for _ in range(5):
            spec = random_integrand_spec(rng, kernel="exp")
            cosh_spec = IntegrandSpec("cosh", spec.alpha, spec.beta, spec.eta,
                                      spec.lam, spec.gamma, spec.pfq)
            sinh_spec = IntegrandSpec("sinh", spec.alpha, spec.beta, spec.eta,
                                      spec.lam, spec.gamma, spec.pfq)
            x = 1.4
            total = antiderivative(cosh_spec, x).value + antiderivative(sinh_spec, x).value
            assert relerr(total, antiderivative(spec, x).value) < 1e-10

    def test_fundamental_theorem_small_corpus(self):
        rng = random.Random(SEED + 3)
        checked = 0
        while checked < 6:
            spec = random_integrand_spec(rng)
            x = rng.uniform(0.4, 1.8)
            direct = integrand_value(spec, x)
            if abs(direct) < 5e-2:
                continue
            deriv = fd_derivative(
                lambda xx: antiderivative(spec, xx).value, x,
                tol=1e-6,
            )
            assert relerr(deriv, direct) < 1e-6
            checked += 1

    def test_against_high_precision_quadrature(self):
        # Entirely independent of the in-package oracle: 30-digit quadrature
        # of the directly evaluated integrand, complex parameters included.
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30
        rng = random.Random(SEED + 99)
        kernels = {"exp": mp.exp, "cosh": mp.cosh, "sinh": mp.sinh,
                   "cos": mp.cos, "sin": mp.sin}
        for i in range(4):
            spec = random_integrand_spec(rng)
            if i % 2 == 1:
                spec = IntegrandSpec(spec.kernel, spec.alpha, spec.beta,
                                     spec.eta + 0.4j, spec.lam * (1 + 0.5j),
                                     spec.gamma, spec.pfq)
            kern = kernels[spec.kernel]
            up = [mp.mpc(a.real, a.imag) for a in spec.pfq.upper]
            lo = [mp.mpc(b.real, b.imag) for b in spec.pfq.lower]
            al, be, et, la, ga = (
                mp.mpc(v.real, v.imag)
                for v in (spec.alpha, spec.beta, spec.eta, spec.lam, spec.gamma)
            )
            ref = mp.quad(
                lambda x: x**al * kern(et * x**be) * mp.hyper(up, lo, la * x**ga),
                [0.25, 1.75],
            )
            refc = complex(float(ref.real), float(ref.imag))
            mine = definite_integral(spec, 0.25, 1.75)
            assert relerr(mine.value, refc) < 1e-12

    def test_at_zero(self):
        spec = _spec(alpha=0.5)
        assert antiderivative(spec, 0.0).value == 0.0
        with pytest.raises(ValueError):
            antiderivative(_spec(alpha=-1.5), 0.0)

    def test_rejects_negative_or_complex_x(self):
        spec = _spec()
        with pytest.raises(ValueError):
            antiderivative(spec, -0.5)
        with pytest.raises(ValueError):
            antiderivative(spec, 1.0 + 1.0j)

    def test_product_pole(self):
        # alpha + beta + 1 = 0 at m = 1
        spec = _spec(alpha=-2.0, beta=1.0, gamma=2.0)
        with pytest.raises(ProductPole):
            antiderivative(spec, 0.5)

    def test_near_pole_warning(self):
        spec = _spec(alpha=-2.0 + 1e-8, beta=1.0, gamma=2.0)
        v = antiderivative(spec, 0.5)
        assert any("near pole" in w for w in v.warnings)

    def test_not_converged_propagates_with_payload(self):
        spec = _spec(eta=3.0, beta=2.0)
        policy = TruncationPolicy(max_terms=20)
        with pytest.raises(NotConverged) as info:
            antiderivative(spec, 2.0, policy)
        assert info.value.result is not None

    def test_error_estimate_covers_last_term(self):
        spec = _spec(kernel="cos", alpha=0.3, eta=0.9, lam=0.1,
                     pfq=PFqParams((), (1.2,)))
        v = antiderivative(spec, 1.2)
        oracle = quad_finite(
            lambda x: integrand_value(spec, x), 0.1, 1.2, 1e-13
        )
        w = antiderivative(spec, 0.1)
        assert abs((v.value - w.value) - oracle.value) <= max(
            1e-13, v.error_estimate + w.error_estimate + oracle.error_estimate
        )
