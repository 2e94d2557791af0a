"""Characteristic functions of discrete laws and the estimates built on them.

Each ``check_*`` function returns ``(lhs, rhs)`` of one inequality so callers
(tests, the ``audit`` command) decide how to report a violation.  ``TOL`` is
the absolute slack folded into every comparison for double-precision
complex arithmetic.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .distributions import DiscreteDistribution, moments, view_moments
from .errors import ModulusExceedsOne, PreconditionViolated
from .wasserstein import Law, law_arrays

TOL = 1e-9


def charfn(d: Law, zeta: float) -> complex:
    """``E[exp(i zeta X)]`` over the (affine-viewed) support."""
    values, weights = law_arrays(d)
    return complex(np.dot(weights, np.exp(1j * zeta * values)))


def _centered(d: DiscreteDistribution) -> tuple[DiscreteDistribution, Fraction, float]:
    m = moments(d.exact())
    return d.exact().with_view(m.mean, Fraction(1)), m.variance, m.abs_third


def _fourier_lhs(centered, var, s_n, zeta):
    return abs(charfn(centered, zeta / s_n) - math.exp(-(zeta**2) * float(var) / (2 * s_n**2)))


def _check_ratio(var, s_n, zeta):
    if s_n <= 0:
        raise PreconditionViolated("s_n must be positive")
    if zeta**2 * float(var) / s_n**2 > 1.0 + 1e-12:
        raise PreconditionViolated(f"zeta^2 Var / s_n^2 = {zeta**2 * float(var) / s_n**2:.6g} > 1")


def check_lindeberg_bound(d: DiscreteDistribution, s_n: float, zeta: float) -> tuple[float, float]:
    """``|E exp(i zeta X/s_n) - exp(-zeta^2 Var/2s_n^2)|`` against
    ``|zeta|^3 E|X|^3 / s_n^3 + zeta^4 Var^2 / s_n^4`` for ``X = t - E t``."""
    centered, var, third = _centered(d)
    _check_ratio(var, s_n, zeta)
    lhs = _fourier_lhs(centered, var, s_n, zeta)
    rhs = abs(zeta) ** 3 / s_n**3 * third + zeta**4 / s_n**4 * float(var) ** 2
    return lhs, rhs


def check_simplified_bound(
    d: DiscreteDistribution, s_n: float, zeta: float, k_bound: float
) -> tuple[float, float]:
    """Same left side as :func:`check_lindeberg_bound`, right side
    ``2 K^2 |zeta|^3 Var / s_n^3`` for a law supported in ``[-K, K]``."""
    if max(abs(float(x)) for x in d.exact().support) > k_bound:
        raise PreconditionViolated(f"support exceeds K = {k_bound}")
    if abs(zeta) > s_n:
        raise PreconditionViolated("need |zeta| <= s_n")
    centered, var, _ = _centered(d)
    _check_ratio(var, s_n, zeta)
    lhs = _fourier_lhs(centered, var, s_n, zeta)
    rhs = 2 * k_bound**2 * abs(zeta) ** 3 * float(var) / s_n**3
    return lhs, rhs


def product_difference_bound(a: Sequence[complex], b: Sequence[complex]) -> tuple[float, float]:
    """``|prod a_i - prod b_i|`` against ``sum |a_i - b_i|`` on the unit disk."""
    if len(a) != len(b):
        raise ValueError("sequences must have equal length")
    if any(abs(x) > 1.0 + 1e-15 for x in list(a) + list(b)):
        raise ModulusExceedsOne("all numbers must have modulus at most one")
    pa = pb = 1 + 0j
    for x, y in zip(a, b):
        pa *= x
        pb *= y
    return abs(pa - pb), math.fsum(abs(x - y) for x, y in zip(a, b))


def check_lipschitz_bound(
    d: DiscreteDistribution, weight: float, zeta: float, d2_value: float
) -> tuple[float, float]:
    """``|E exp(i zeta w X) - exp(-zeta^2 w^2 / 2)|`` against ``|zeta| d2(X, Z)``."""
    if not 0.0 <= weight <= 1.0:
        raise PreconditionViolated("weight must lie in [0, 1]")
    mean, var = view_moments(d)
    if abs(float(mean)) > 1e-12 or abs(float(var) - 1.0) > 1e-12:
        raise PreconditionViolated("law must be standardized")
    lhs = abs(charfn(d, zeta * weight) - cmath.exp(-(zeta**2) * weight**2 / 2))
    return lhs, abs(zeta) * d2_value
