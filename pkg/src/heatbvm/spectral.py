"""Diagonal spectral representation of the 1-D heat semigroup on [0, 1].

Functions are represented by their first ``m`` coefficients in the sine basis
``e_k(x) = sqrt(2) sin(k pi x)``. Every operator here is diagonal in that basis,
so operator norms are exact suprema over ``k <= m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

# exp(x) for x below this is treated as exactly zero
UNDERFLOW_EXPONENT = -745.0


@dataclass(frozen=True)
class SineCoefficients:
    """Truncated sine-basis coefficients ``(f_1, ..., f_m)``."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=float).reshape(-1)
        if arr.size < 1:
            raise ValueError("need at least one coefficient (m >= 1)")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def m(self) -> int:
        return self.coeffs.size

    @classmethod
    def zeros(cls, m: int) -> "SineCoefficients":
        return cls(np.zeros(m))

    @classmethod
    def basis(cls, k: int, m: int) -> "SineCoefficients":
        """The basis element ``e_k`` truncated at ``m``."""
        if not 1 <= k <= m:
            raise ValueError(f"basis index {k} outside 1..{m}")
        c = np.zeros(m)
        c[k - 1] = 1.0
        return cls(c)

    def l2_norm_sq(self) -> float:
        return math.fsum(self.coeffs**2)

    def l2_norm(self) -> float:
        return math.sqrt(self.l2_norm_sq())

    def dot(self, other: "SineCoefficients") -> float:
        _check_same_m(self, other)
        return math.fsum(self.coeffs * other.coeffs)

    def __add__(self, other):
        _check_same_m(self, other)
        return SineCoefficients(self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_same_m(self, other)
        return SineCoefficients(self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return SineCoefficients(self.coeffs * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return SineCoefficients(-self.coeffs)

    def __len__(self):
        return self.m


@dataclass(frozen=True)
class ModelConfig:
    theta_lo: float = 0.001
    theta_hi: float = 0.1
    T: float = 1.0
    n: float = 1e5
    m: int = 100

    def __post_init__(self):
        if not 0 < self.theta_lo < self.theta_hi:
            raise ValueError("need 0 < theta_lo < theta_hi")
        if not self.T > 0:
            raise ValueError("T must be positive")
        if not self.n > 0:
            raise ValueError("n must be positive")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError("m must be a positive integer")


@dataclass(frozen=True)
class Diffusivity:
    """A diffusivity value strictly inside ``(lo, hi)``."""

    value: float
    lo: float = 0.0
    hi: float = math.inf

    def __post_init__(self):
        if not self.lo < self.value < self.hi:
            raise ValueError(f"diffusivity {self.value} outside ({self.lo}, {self.hi})")

    def __float__(self):
        return float(self.value)


ThetaLike = Union[float, Diffusivity]


def _check_same_m(a: SineCoefficients, b: SineCoefficients):
    if a.m != b.m:
        raise ValueError(f"truncation mismatch: {a.m} != {b.m}")


def _theta(theta: ThetaLike) -> float:
    t = float(theta)
    if not t > 0:
        raise ValueError("theta must be positive")
    return t


def mode_indices(m: int) -> np.ndarray:
    return np.arange(1, m + 1, dtype=float)


def safe_exp(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.where(x < UNDERFLOW_EXPONENT, 0.0, np.exp(np.maximum(x, UNDERFLOW_EXPONENT)))


def eigenvalues(theta: ThetaLike, T: float, m: int) -> np.ndarray:
    """Diagonal of ``K_theta``: ``exp(-theta pi^2 T k^2)`` for ``k = 1..m``."""
    k = mode_indices(m)
    return safe_exp(-_theta(theta) * math.pi**2 * T * k**2)


def derivative_eigenvalues(theta: ThetaLike, T: float, m: int) -> np.ndarray:
    k = mode_indices(m)
    return -math.pi**2 * T * k**2 * eigenvalues(theta, T, m)


def apply_k(f: SineCoefficients, theta: ThetaLike, T: float) -> SineCoefficients:
    """Heat solution operator at time ``T`` applied to ``f``."""
    return SineCoefficients(f.coeffs * eigenvalues(theta, T, f.m))


def apply_kdot(f: SineCoefficients, theta: ThetaLike, T: float) -> SineCoefficients:
    """Derivative of :func:`apply_k` with respect to theta."""
    return SineCoefficients(f.coeffs * derivative_eigenvalues(theta, T, f.m))


def heat_solution(f: SineCoefficients, theta: ThetaLike, x: float, t: float) -> float:
    """Truncated series value of u(x, t) with initial condition ``f``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x={x} outside [0, 1]")
    if t < 0:
        raise ValueError("t must be nonnegative")
    if x == 0.0 or x == 1.0:
        return 0.0
    k = mode_indices(f.m)
    decay = safe_exp(-_theta(theta) * math.pi**2 * t * k**2)
    return math.sqrt(2.0) * math.fsum(f.coeffs * decay * np.sin(k * math.pi * x))


def sobolev_norm_sq(f: SineCoefficients, eta: float) -> float:
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    k = mode_indices(f.m)
    return math.fsum(k ** (2 * eta) * f.coeffs**2)


def l_inner_product(a1, g1, a2, g2, theta0: ThetaLike, f0: SineCoefficients, T: float) -> float:
    """Inner product on R x L^2 induced by the local expansion at ``(theta0, f0)``.

    ``<g1, g2> + <K g1 + a1 Kdot f0, K g2 + a2 Kdot f0>`` with both operators
    evaluated at ``theta0``.
    """
    _check_same_m(g1, g2)
    _check_same_m(g1, f0)
    kdot_f0 = apply_kdot(f0, theta0, T)
    h1 = apply_k(g1, theta0, T) + a1 * kdot_f0
    h2 = apply_k(g2, theta0, T) + a2 * kdot_f0
    return math.fsum(np.concatenate([g1.coeffs * g2.coeffs, h1.coeffs * h2.coeffs]))


def l_norm_sq(a, g, theta0, f0, T) -> float:
    return l_inner_product(a, g, a, g, theta0, f0, T)


def _lf_weights(theta0: ThetaLike, T: float, m: int) -> np.ndarray:
    sq = eigenvalues(theta0, T, m) ** 2
    return sq / (1.0 + sq)


def least_favourable_direction(theta0: ThetaLike, f0: SineCoefficients, T: float) -> SineCoefficients:
    """Least favourable nuisance direction ``(I + K^2)^{-1} K Kdot f0``."""
    k = mode_indices(f0.m)
    return SineCoefficients(-math.pi**2 * T * k**2 * f0.coeffs * _lf_weights(theta0, T, f0.m))


def parametric_fisher(theta0: ThetaLike, f0: SineCoefficients, T: float) -> float:
    """Fisher information for theta when ``f0`` is known."""
    return apply_kdot(f0, theta0, T).l2_norm_sq()


def efficient_fisher(theta0: ThetaLike, f0: SineCoefficients, T: float) -> float:
    """Efficient information for theta with the initial condition unknown (closed form)."""
    k = mode_indices(f0.m)
    c = math.pi**2 * T * k**2
    return math.fsum(c**2 * f0.coeffs**2 * _lf_weights(theta0, T, f0.m))


def efficient_fisher_projection(theta0: ThetaLike, f0: SineCoefficients, T: float) -> float:
    """Efficient information as ``||Kdot f0||^2 - <K Kdot f0, (I + K^2)^{-1} K Kdot f0>``.

    Independent of :func:`efficient_fisher`'s closed form; used as a cross-check.
    """
    kkdot = apply_k(apply_kdot(f0, theta0, T), theta0, T)
    resolvent = SineCoefficients(kkdot.coeffs / (1.0 + eigenvalues(theta0, T, f0.m) ** 2))
    return parametric_fisher(theta0, f0, T) - kkdot.dot(resolvent)


def operator_diff_norm(theta1: ThetaLike, theta2: ThetaLike, T: float, eta: float, m: int) -> float:
    """``||K_theta1 - K_theta2||`` as an operator L^2 -> S^eta, truncated at ``m``."""
    k = mode_indices(m)
    diff = np.abs(eigenvalues(theta1, T, m) - eigenvalues(theta2, T, m))
    return float(np.max(k**eta * diff))


def taylor_remainder_norm(theta: ThetaLike, theta0: ThetaLike, T: float, eta: float, m: int) -> float:
    """``||K_theta - K_theta0 - (theta - theta0) Kdot_theta0||`` as an operator L^2 -> S^eta."""
    k = mode_indices(m)
    dt = float(theta) - float(theta0)
    rem = eigenvalues(theta, T, m) - eigenvalues(theta0, T, m) - dt * derivative_eigenvalues(theta0, T, m)
    return float(np.max(k**eta * np.abs(rem)))
