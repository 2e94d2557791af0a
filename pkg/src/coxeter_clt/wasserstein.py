"""Mallows / Wasserstein-2 distance between one-dimensional laws.

In one dimension the optimal coupling is the quantile (comonotone) coupling,
so ``d2(mu, nu)**2 = integral_0^1 (F^-1(u) - G^-1(u))**2 du``.  For discrete
laws the integrand is piecewise constant on the merged cumulative
breakpoints.  Against the standard normal each piece integrates in closed
form:

    int_a^b Phi^-1(u) du    = phi(z_a) - phi(z_b)
    int_a^b Phi^-1(u)^2 du  = (b - a) - (z_b phi(z_b) - z_a phi(z_a))

with ``z_u = Phi^-1(u)``; both stay finite at ``u = 0`` and ``u = 1``.
Normal quantiles come from ``scipy.special.ndtri`` (Cephes rational
approximations, relative error near 1e-16).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.special import ndtri

from .distributions import DiscreteDistribution, view_moments
from .errors import ConstraintViolated

Law = Union[DiscreteDistribution, tuple]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def law_arrays(d: Law) -> tuple[np.ndarray, np.ndarray]:
    """Sorted distinct support values and their weights, as floats.

    Accepts a :class:`DiscreteDistribution` (its affine view is applied) or a
    ``(values, weights)`` pair.
    """
    if isinstance(d, DiscreteDistribution):
        return d.values(), d.weights()
    values, weights = (np.asarray(a, dtype=float) for a in d)
    uniq, inv = np.unique(values, return_inverse=True)
    w = np.zeros(len(uniq))
    np.add.at(w, inv, weights)
    keep = w > 0
    return uniq[keep], w[keep] / w[keep].sum()


def _cumulative(d: Law) -> np.ndarray:
    if isinstance(d, DiscreteDistribution):
        # exact partial sums avoid drift of the last breakpoint away from 1
        acc, out = 0, []
        for p in d.probs[:-1]:
            acc += p
            out.append(float(acc))
        return np.array(out)
    _, w = law_arrays(d)
    return np.cumsum(w)[:-1]


@dataclass(frozen=True)
class QuantileView:
    """Right-continuous inverse CDF: ``values[k]`` on ``(breakpoints[k-1], breakpoints[k])``."""

    breakpoints: np.ndarray
    values: np.ndarray

    def __call__(self, u):
        idx = np.searchsorted(self.breakpoints, np.asarray(u, dtype=float), side="right")
        return self.values[np.minimum(idx, len(self.values) - 1)]


def quantile_view(d: Law) -> QuantileView:
    values, _ = law_arrays(d)
    return QuantileView(_cumulative(d), values)


def d2_discrete(mu: Law, nu: Law) -> float:
    """Wasserstein-2 distance between two finitely supported laws."""
    qa, qb = quantile_view(mu), quantile_view(nu)
    cuts = np.unique(np.concatenate([[0.0], qa.breakpoints, qb.breakpoints, [1.0]]))
    cuts = cuts[(cuts >= 0.0) & (cuts <= 1.0)]
    widths = np.diff(cuts)
    mids = cuts[:-1] + widths / 2
    diff = qa(mids) - qb(mids)
    return math.sqrt(max(math.fsum(widths * diff * diff), 0.0))


def _phi(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.exp(-0.5 * z * z) / _SQRT_2PI
    return np.where(np.isfinite(z), out, 0.0)


def _z_phi(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore", invalid="ignore"):
        out = z * np.exp(-0.5 * z * z) / _SQRT_2PI
    return np.where(np.isfinite(z), out, 0.0)


def normal_partial_moments(a: float, b: float) -> tuple[float, float]:
    """``(int_a^b Phi^-1(u) du, int_a^b Phi^-1(u)^2 du)`` for ``0 <= a <= b <= 1``."""
    if not 0.0 <= a <= b <= 1.0:
        raise ValueError(f"need 0 <= a <= b <= 1, got a={a}, b={b}")
    if a == b:
        return 0.0, 0.0
    z = ndtri(np.array([a, b]))
    phi, zphi = _phi(z), _z_phi(z)
    return float(phi[0] - phi[1]), float((b - a) - (zphi[1] - zphi[0]))


def d2_to_normal(mu: Law) -> float:
    """Wasserstein-2 distance from a finitely supported law to N(0, 1)."""
    values, _ = law_arrays(mu)
    cuts = np.concatenate([[0.0], _cumulative(mu), [1.0]])
    z = ndtri(cuts)
    phi, zphi = _phi(z), _z_phi(z)
    widths = np.diff(cuts)
    first = phi[:-1] - phi[1:]
    second = widths - (zphi[1:] - zphi[:-1])
    terms = values * values * widths - 2.0 * values * first + second
    return math.sqrt(max(math.fsum(terms), 0.0))


def scaled_sum_law(laws: Sequence[Law], coeffs: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    """Law of ``sum_j a_j X_j`` for independent ``X_j``, as float arrays."""
    values, weights = np.zeros(1), np.ones(1)
    for law, a in zip(laws, coeffs):
        v, w = law_arrays(law)
        values = (values[:, None] + a * v[None, :]).ravel()
        weights = (weights[:, None] * w[None, :]).ravel()
        values, weights = law_arrays((values, weights))
    return values, weights


def check_mallows_sum_inequality(
    laws: Sequence[Law], coeffs: Sequence[float], tol: float = 1e-12
) -> tuple[float, float]:
    """Both sides of ``d2(sum a_j X_j, Z) <= sum a_j^2 d2(X_j, Z)``.

    Every law must be centred with unit variance and ``sum a_j^2 = 1``.
    """
    if len(laws) != len(coeffs) or not laws:
        raise ConstraintViolated("need one coefficient per law, and at least one law")
    if abs(math.fsum(a * a for a in coeffs) - 1.0) > tol:
        raise ConstraintViolated("coefficients must satisfy sum a_j^2 = 1")
    for law in laws:
        if isinstance(law, DiscreteDistribution):
            mean, var = view_moments(law)
            mean, var = float(mean), float(var)
        else:
            v, w = law_arrays(law)
            mean = float(np.dot(w, v))
            var = float(np.dot(w, (v - mean) ** 2))
        if abs(mean) > tol or abs(var - 1.0) > tol:
            raise ConstraintViolated(f"law has mean {mean} and variance {var}, expected 0 and 1")
    lhs = d2_to_normal(scaled_sum_law(laws, coeffs))
    rhs = math.fsum(a * a * d2_to_normal(law) for law, a in zip(laws, coeffs))
    return lhs, rhs
