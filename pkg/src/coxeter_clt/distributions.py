"""Exact laws of the two-sided descent statistic and their convolution.

A :class:`DiscreteDistribution` keeps its support and probabilities as exact
``Fraction`` values.  Standardization does not touch that data; it attaches an
affine view ``x -> (x - shift) / scale`` with ``shift`` the exact mean and
``scale**2`` the exact variance, so the viewed law has mean 0 and variance 1
exactly in the affine algebra.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .coxeter import CoxeterGroup, IrreducibleType
from .enumeration import DEFAULT_CAP, factor_table
from .errors import OrderExceedsCap, ZeroVariance

SCHEMA_FIELDS = ("support", "probs", "shift", "scale")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {x!r}")


@dataclass(frozen=True)
class DiscreteDistribution:
    support: tuple[Fraction, ...]
    probs: tuple[Fraction, ...]
    shift: Fraction | None = None
    scale_sq: Fraction | None = None

    def __post_init__(self):
        support = tuple(_as_fraction(x) for x in self.support)
        probs = tuple(_as_fraction(p) for p in self.probs)
        if len(support) != len(probs) or not support:
            raise ValueError("support and probabilities must be nonempty and of equal length")
        if any(b <= a for a, b in zip(support, support[1:])):
            raise ValueError("support must be strictly increasing")
        if any(p <= 0 for p in probs):
            raise ValueError("probabilities must be positive")
        if sum(probs) != 1:
            raise ValueError(f"probabilities sum to {sum(probs)}, not 1")
        if (self.shift is None) != (self.scale_sq is None):
            raise ValueError("shift and scale must be given together")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "probs", probs)
        if self.shift is not None:
            scale_sq = _as_fraction(self.scale_sq)
            if scale_sq <= 0:
                raise ValueError("scale must be positive")
            object.__setattr__(self, "shift", _as_fraction(self.shift))
            object.__setattr__(self, "scale_sq", scale_sq)

    @classmethod
    def from_mapping(cls, mapping) -> "DiscreteDistribution":
        items = sorted((_as_fraction(k), _as_fraction(v)) for k, v in mapping.items() if v != 0)
        return cls(tuple(k for k, _ in items), tuple(v for _, v in items))

    @classmethod
    def point_mass(cls, x=0) -> "DiscreteDistribution":
        return cls((_as_fraction(x),), (Fraction(1),))

    @classmethod
    def from_samples(cls, values) -> "DiscreteDistribution":
        """Empirical law of integer samples, with exact count ratios."""
        vals, counts = np.unique(np.asarray(values, dtype=np.int64), return_counts=True)
        n = int(counts.sum())
        return cls(tuple(Fraction(int(v)) for v in vals), tuple(Fraction(int(c), n) for c in counts))

    @property
    def is_exact(self) -> bool:
        return self.shift is None

    @property
    def scale(self) -> float | None:
        return None if self.scale_sq is None else math.sqrt(self.scale_sq)

    def as_dict(self) -> dict[Fraction, Fraction]:
        return dict(zip(self.support, self.probs))

    def values(self) -> np.ndarray:
        """Support points under the affine view, as floats."""
        if self.shift is None:
            return np.array([float(x) for x in self.support])
        return np.array([float(x - self.shift) for x in self.support]) / self.scale

    def weights(self) -> np.ndarray:
        return np.array([float(p) for p in self.probs])

    def exact(self) -> "DiscreteDistribution":
        """Drop the affine view, recovering the underlying law."""
        return DiscreteDistribution(self.support, self.probs)

    def with_view(self, shift, scale_sq) -> "DiscreteDistribution":
        return DiscreteDistribution(self.support, self.probs, shift, scale_sq)

    def to_json(self) -> dict:
        out = {
            "support": [str(x) for x in self.support],
            "probs": [str(p) for p in self.probs],
            "shift": None if self.shift is None else float(self.shift),
            "scale": self.scale,
        }
        if self.shift is not None:
            # the float view fields lose exactness; these keep round trips lossless
            out["shift_exact"] = str(self.shift)
            out["scale_sq_exact"] = str(self.scale_sq)
        return out

    @classmethod
    def from_json(cls, obj) -> "DiscreteDistribution":
        if isinstance(obj, str):
            obj = json.loads(obj)
        shift, scale_sq = obj.get("shift_exact"), obj.get("scale_sq_exact")
        if shift is None and obj.get("shift") is not None:
            shift = Fraction(obj["shift"])
            scale_sq = Fraction(obj["scale"]) ** 2
        return cls(tuple(obj["support"]), tuple(obj["probs"]), shift, scale_sq)


@dataclass(frozen=True)
class Moments:
    mean: Fraction
    variance: Fraction
    abs_third: float


def moments(d: DiscreteDistribution) -> Moments:
    """Exact mean and variance of the underlying law, plus E|X - EX|^3."""
    mean = sum((p * x for x, p in zip(d.support, d.probs)), Fraction(0))
    var = sum((p * (x - mean) ** 2 for x, p in zip(d.support, d.probs)), Fraction(0))
    third = sum((p * abs(x - mean) ** 3 for x, p in zip(d.support, d.probs)), Fraction(0))
    return Moments(mean, var, float(third))


def view_moments(d: DiscreteDistribution) -> tuple[Fraction | float, Fraction]:
    """Mean and variance of the affine view.

    The variance is always exact.  The mean is exact (zero) whenever the shift
    is the true mean, which is the case for every standardized law.
    """
    m = moments(d)
    if d.shift is None:
        return m.mean, m.variance
    offset = m.mean - d.shift
    mean = Fraction(0) if offset == 0 else float(offset) / d.scale
    return mean, m.variance / d.scale_sq


def convolve(d1: DiscreteDistribution, d2: DiscreteDistribution) -> DiscreteDistribution:
    """Law of the sum of independent draws from two exact laws."""
    if not (d1.is_exact and d2.is_exact):
        raise ValueError("convolve expects exact laws without an affine view")
    acc: dict[Fraction, Fraction] = {}
    for x, p in zip(d1.support, d1.probs):
        for y, q in zip(d2.support, d2.probs):
            acc[x + y] = acc.get(x + y, Fraction(0)) + p * q
    return DiscreteDistribution.from_mapping(acc)


def standardize(d: DiscreteDistribution) -> DiscreteDistribution:
    m = moments(d)
    if m.variance == 0:
        raise ZeroVariance("cannot standardize a point mass")
    return d.exact().with_view(m.mean, m.variance)


def dihedral_t_law(m: int) -> DiscreteDistribution:
    return DiscreteDistribution(
        (0, 2, 4), (Fraction(1, 2 * m), Fraction(m - 1, m), Fraction(1, 2 * m))
    )


@lru_cache(maxsize=64)
def _factor_law(t: IrreducibleType, cap: int) -> DiscreteDistribution:
    table = factor_table(t, cap)
    vals, counts = np.unique(table.t, return_counts=True)
    n = len(table)
    return DiscreteDistribution(
        tuple(int(v) for v in vals), tuple(Fraction(int(c), n) for c in counts)
    )


def exact_t_distribution(t: IrreducibleType, cap: int = DEFAULT_CAP) -> DiscreteDistribution:
    """Exact law of ``t`` under the uniform measure on one irreducible factor."""
    if t.family == "I2":
        return dihedral_t_law(t.parameter)
    if t.order > cap:
        raise OrderExceedsCap(f"|{t}| = {t.order} exceeds cap {cap}", t.order, cap, t)
    return _factor_law(t, cap)


def product_t_distribution(g: CoxeterGroup, cap: int = DEFAULT_CAP) -> DiscreteDistribution:
    """Left fold of :func:`convolve` over the exact factor laws."""
    for f in g.factors:
        if f.family != "I2" and f.order > cap:
            raise OrderExceedsCap(f"factor {f} of {g} has order {f.order} > cap {cap}", f.order, cap, f)
    law = DiscreteDistribution.point_mass(0)
    for f in g.factors:
        law = convolve(law, exact_t_distribution(f, cap))
    return law


def law_from_values(values) -> DiscreteDistribution:
    """Exact law of a finite list of equally likely outcomes."""
    counts = Counter(int(v) for v in values)
    n = sum(counts.values())
    return DiscreteDistribution.from_mapping({k: Fraction(c, n) for k, c in counts.items()})
