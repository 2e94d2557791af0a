"""Irreducible finite Coxeter types, their direct products, and Coxeter matrices.

Generator ordering, fixed so that descent sets are reproducible:

* ``A_p``: ``s_1 .. s_p`` are the adjacent transpositions ``(i, i+1)``,
  left to right, acting on positions of the one-line notation.
* ``B_p``: ``s_0`` negates the first entry, then ``s_1 .. s_{p-1}`` as in A.
* ``D_p``: ``s_0'`` swaps the first two entries and negates both, then
  ``s_1 .. s_{p-1}`` as in A.
* ``I2(m)``: ``s`` then ``t``.
* exceptional types: Bourbaki numbering (``E6``: ``1-3-4-5-6`` with ``2``
  attached to ``4``; ``F4``: ``1-2=3-4``; ``H3``/``H4``: the 5-bond between
  generators 1 and 2).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce

from .errors import ParameterOutOfRange, ParseError

FAMILIES = ("A", "B", "D", "I2", "H3", "H4", "F4", "E6", "E7", "E8")
EXCEPTIONAL = ("H3", "H4", "F4", "E6", "E7", "E8")

_EXCEPTIONAL_RANK = {"H3": 3, "H4": 4, "F4": 4, "E6": 6, "E7": 7, "E8": 8}
_EXCEPTIONAL_ORDER = {
    "H3": 120,
    "H4": 14400,
    "F4": 1152,
    "E6": 51840,
    "E7": 2903040,
    "E8": 696729600,
}
_MIN_PARAMETER = {"A": 1, "B": 2, "D": 4, "I2": 3}

# (i, j, m_ij) for the non-commuting pairs, 0-based generator indices
_EXCEPTIONAL_BONDS = {
    "H3": [(0, 1, 5), (1, 2, 3)],
    "H4": [(0, 1, 5), (1, 2, 3), (2, 3, 3)],
    "F4": [(0, 1, 3), (1, 2, 4), (2, 3, 3)],
    "E6": [(0, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (1, 3, 3)],
    "E7": [(0, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (5, 6, 3), (1, 3, 3)],
    "E8": [(0, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (5, 6, 3), (6, 7, 3), (1, 3, 3)],
}


@dataclass(frozen=True)
class IrreducibleType:
    """One irreducible factor: a family tag plus its rank or dihedral order."""

    family: str
    parameter: int | None = None

    @property
    def rank(self) -> int:
        if self.family in ("A", "B", "D"):
            return self.parameter
        if self.family == "I2":
            return 2
        return _EXCEPTIONAL_RANK[self.family]

    @property
    def order(self) -> int:
        f, p = self.family, self.parameter
        if f == "A":
            return math.factorial(p + 1)
        if f == "B":
            return 2**p * math.factorial(p)
        if f == "D":
            return 2 ** (p - 1) * math.factorial(p)
        if f == "I2":
            return 2 * p
        return _EXCEPTIONAL_ORDER[f]

    @property
    def is_exceptional(self) -> bool:
        return self.family in EXCEPTIONAL

    def __str__(self):
        if self.family == "I2":
            return f"I2({self.parameter})"
        if self.family in EXCEPTIONAL:
            return self.family
        return f"{self.family}{self.parameter}"


def make_irreducible(family: str, parameter: int | None = None) -> IrreducibleType:
    """Validate a family/parameter pair against the classification."""
    fam = family.strip().upper()
    if fam not in FAMILIES:
        raise ParameterOutOfRange(f"unknown Coxeter family {family!r}")
    if fam in EXCEPTIONAL:
        if parameter is not None and parameter != _EXCEPTIONAL_RANK[fam]:
            raise ParameterOutOfRange(f"{fam} takes no parameter (got {parameter})")
        return IrreducibleType(fam, None)
    if parameter is None or isinstance(parameter, bool) or not isinstance(parameter, int):
        raise ParameterOutOfRange(f"{fam} requires an integer parameter")
    lo = _MIN_PARAMETER[fam]
    if parameter < lo:
        label = "m" if fam == "I2" else "p"
        raise ParameterOutOfRange(f"{fam} requires {label} >= {lo}, got {parameter}")
    return IrreducibleType(fam, parameter)


@dataclass(frozen=True)
class CoxeterGroup:
    """Ordered direct product of irreducible factors (empty = trivial group)."""

    factors: tuple[IrreducibleType, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def order(self) -> int:
        return reduce(lambda acc, f: acc * f.order, self.factors, 1)

    @property
    def log10_order(self) -> float:
        return sum(math.log10(f.order) for f in self.factors)

    def generator_offsets(self) -> list[int]:
        """Global index of the first generator of each factor."""
        out, k = [], 0
        for f in self.factors:
            out.append(k)
            k += f.rank
        return out

    def __str__(self):
        return "x".join(str(f) for f in self.factors) if self.factors else "1"


_FACTOR_RE = re.compile(r"^(?:I2\((\d+)\)|([ABD])(\d+)|(H3|H4|F4|E6|E7|E8))$")


def parse_factor(text: str) -> IrreducibleType:
    token = "".join(text.split()).upper()
    m = _FACTOR_RE.match(token)
    if m is None:
        raise ParseError(f"cannot parse Coxeter factor {text!r}")
    if m.group(1) is not None:
        return make_irreducible("I2", int(m.group(1)))
    if m.group(2) is not None:
        return make_irreducible(m.group(2), int(m.group(3)))
    return make_irreducible(m.group(4))


def parse_group(text: str) -> CoxeterGroup:
    """Parse strings such as ``"A4xI2(5)xB3"``; case and whitespace are ignored.

    The empty string and ``"1"`` denote the trivial group.
    """
    token = "".join(text.split()).upper()
    if token in ("", "1"):
        return CoxeterGroup(())
    parts = token.split("X")
    if any(p == "" for p in parts):
        raise ParseError(f"empty factor in group string {text!r}")
    return CoxeterGroup(tuple(parse_factor(p) for p in parts))


def coxeter_matrix(t: IrreducibleType) -> list[list[int]]:
    """Standard Coxeter matrix of ``t`` in the documented generator order."""
    n = t.rank
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]

    def bond(i, j, k):
        m[i][j] = m[j][i] = k

    f = t.family
    if f == "A":
        for i in range(n - 1):
            bond(i, i + 1, 3)
    elif f == "B":
        bond(0, 1, 4)
        for i in range(1, n - 1):
            bond(i, i + 1, 3)
    elif f == "D":
        bond(0, 2, 3)
        for i in range(1, n - 1):
            bond(i, i + 1, 3)
    elif f == "I2":
        bond(0, 1, t.parameter)
    else:
        for i, j, k in _EXCEPTIONAL_BONDS[f]:
            bond(i, j, k)
    return m


def group_coxeter_matrix(g: CoxeterGroup) -> list[list[int]]:
    """Block-diagonal Coxeter matrix of a product (cross-factor entries are 2)."""
    n = g.rank
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for off, f in zip(g.generator_offsets(), g.factors):
        block = coxeter_matrix(f)
        for i in range(f.rank):
            for j in range(f.rank):
                m[off + i][off + j] = block[i][j]
    return m
