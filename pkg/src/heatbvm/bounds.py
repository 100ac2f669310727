"""Analytic upper/lower bounds on the heat operators.

The ``*_bound`` functions give the constants as published for the operator
estimates (contraction, derivative, Lipschitz, first- and second-order
differences, identifiability). Two of them are not valid everywhere:

* :func:`taylor_remainder_bound` only holds for ``theta >= theta0``;
  :func:`taylor_remainder_bound_symmetric` holds for both orderings.
* :func:`lipschitz_bound` underestimates the constant for small theta;
  :func:`lipschitz_bound_sharp` uses ``1 / (e min(theta1, theta2))``.
"""
import math

from .spectral import SineCoefficients, ThetaLike, eigenvalues


def contraction_bound() -> float:
    return 1.0


def derivative_bound(theta: ThetaLike) -> float:
    return 1.0 / (2.0 * float(theta))


def operator_diff_bound(theta: ThetaLike, theta0: ThetaLike, T: float, eta: float) -> float:
    lo = min(float(theta), float(theta0))
    p = (2.0 + eta) / 2.0
    return abs(float(theta) - float(theta0)) / (math.pi**eta * T ** (eta / 2)) * ((2 + eta) / (2 * math.e * lo)) ** p


def _taylor(dt: float, base: float, T: float, eta: float) -> float:
    p = (4.0 + eta) / 2.0
    return dt**2 / (2 * math.pi**eta * T ** (eta / 2)) * ((4 + eta) / (2 * math.e * base)) ** p


def taylor_remainder_bound(theta: ThetaLike, theta0: ThetaLike, T: float, eta: float) -> float:
    return _taylor(float(theta) - float(theta0), float(theta0), T, eta)


def taylor_remainder_bound_symmetric(theta: ThetaLike, theta0: ThetaLike, T: float, eta: float) -> float:
    # for theta < theta0 the remainder picks up exp(-theta c) rather than exp(-theta0 c)
    return _taylor(float(theta) - float(theta0), min(float(theta), float(theta0)), T, eta)


def lipschitz_bound(f1: SineCoefficients, f2: SineCoefficients, theta1: ThetaLike, theta2: ThetaLike, T: float) -> float:
    lo = min(float(theta1), float(theta2))
    const = math.pi / 2 * math.sqrt(T / lo)
    return (f1 - f2).l2_norm() + const * abs(float(theta1) - float(theta2)) * min(f1.l2_norm(), f2.l2_norm())


def lipschitz_bound_sharp(f1: SineCoefficients, f2: SineCoefficients, theta1: ThetaLike, theta2: ThetaLike, T: float) -> float:
    lo = min(float(theta1), float(theta2))
    return (f1 - f2).l2_norm() + abs(float(theta1) - float(theta2)) / (math.e * lo) * min(f1.l2_norm(), f2.l2_norm())


def identifiability_lower_bound(theta: ThetaLike, theta0: ThetaLike, f0: SineCoefficients, T: float, k: int) -> float:
    """Lower bound on ``||(K_theta - K_theta0) f0||`` from the single mode ``k``."""
    hi = max(float(theta), float(theta0))
    decay = eigenvalues(hi, T, k)[-1]
    return T * decay * abs(f0.coeffs[k - 1]) * abs(float(theta) - float(theta0))
