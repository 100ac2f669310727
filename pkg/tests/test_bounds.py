import numpy as np
import pytest

from heatbvm import bounds
from heatbvm.prior import SeriesPrior, sample_prior
from heatbvm.spectral import SineCoefficients, apply_k, apply_kdot, operator_diff_norm, taylor_remainder_norm

M = 200


def slack(b):
    return b * (1 + 1e-12) + 1e-12


def draws(count, seed=0):
    rng = np.random.default_rng(seed)
    for i in range(count):
        theta, theta0 = rng.uniform(0.001, 0.1, size=2)
        eta = int(rng.choice([0, 1, 2]))
        f = sample_prior(SeriesPrior(rng.uniform(0.5, 3.5), M), seed * 100_000 + i)
        yield theta, theta0, eta, f


def test_contraction_and_derivative():
    for theta, _, _, f in draws(200):
        assert apply_k(f, theta, 1.0).l2_norm() <= slack(bounds.contraction_bound() * f.l2_norm())
        assert apply_kdot(f, theta, 1.0).l2_norm() <= slack(bounds.derivative_bound(theta) * f.l2_norm())


def test_operator_difference():
    for theta, theta0, eta, _ in draws(500):
        assert operator_diff_norm(theta, theta0, 1.0, eta, M) <= slack(bounds.operator_diff_bound(theta, theta0, 1.0, eta))


def test_taylor_remainder_above_theta0():
    for theta, theta0, eta, _ in draws(500):
        lo, hi = sorted((theta, theta0))
        assert taylor_remainder_norm(hi, lo, 1.0, eta, M) <= slack(bounds.taylor_remainder_bound(hi, lo, 1.0, eta))


def test_taylor_remainder_printed_bound_fails_below_theta0():
    # |exp(-x) - 1 + x| <= x^2/2 needs x >= 0
    rem = taylor_remainder_norm(0.001, 0.1, 1.0, 0.0, M)
    assert rem == pytest.approx(0.913645214047960863, rel=1e-12)
    assert rem > bounds.taylor_remainder_bound(0.001, 0.1, 1.0, 0.0)


def test_taylor_remainder_symmetric_bound():
    for theta, theta0, eta, _ in draws(500, seed=1):
        assert taylor_remainder_norm(theta, theta0, 1.0, eta, M) <= slack(
            bounds.taylor_remainder_bound_symmetric(theta, theta0, 1.0, eta)
        )


def test_lipschitz_printed_constant_too_small():
    f = SineCoefficients.basis(10, M)
    lhs = (apply_k(f, 0.001, 1.0) - apply_k(f, 0.002, 1.0)).l2_norm()
    assert lhs > bounds.lipschitz_bound(f, f, 0.001, 0.002, 1.0)


def test_lipschitz_sharp():
    rng = np.random.default_rng(7)
    for theta1, theta2, _, f1 in draws(500, seed=2):
        f2 = f1 + SineCoefficients(rng.standard_normal(M) * rng.choice([0.0, 1e-3, 1.0]))
        lhs = (apply_k(f1, theta1, 1.0) - apply_k(f2, theta2, 1.0)).l2_norm()
        assert lhs <= slack(bounds.lipschitz_bound_sharp(f1, f2, theta1, theta2, 1.0))


def test_identifiability():
    for theta, theta0, _, f0 in draws(200, seed=3):
        lhs = (apply_k(f0, theta, 1.0) - apply_k(f0, theta0, 1.0)).l2_norm()
        for k in (1, 2, 5, 50, 200):
            assert lhs * (1 + 1e-12) + 1e-300 >= bounds.identifiability_lower_bound(theta, theta0, f0, 1.0, k)
