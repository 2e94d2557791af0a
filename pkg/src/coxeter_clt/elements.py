"""Group elements of finite Coxeter groups and the two-sided descent statistic.

Components per factor family:

* ``A_p``: one-line permutation of ``1..p+1``.
* ``B_p``: signed permutation of ``±1..±p`` in one-line notation.
* ``D_p``: as ``B_p`` with an even number of negative entries.
* ``I2(m)``: ``(k, side)`` where ``k`` is the length and ``side`` is the first
  letter of the reduced word (0 for ``s``, 1 for ``t``); ``k = 0`` and
  ``k = m`` always carry ``side = 0``.
* exceptional: root-index images of the simple roots (see :mod:`.roots`).

Products are composed as functions, ``(uv)(i) = u(v(i))``, so multiplying by a
generator on the right acts on positions.  Descents are right descents,
``l(ws) < l(w)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coxeter import CoxeterGroup, IrreducibleType
from .errors import GroupMismatch
from .roots import root_system


def _inversions(w) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


class _SymmetricOps:
    @staticmethod
    def identity(t):
        return tuple(range(1, t.parameter + 2))

    @staticmethod
    def generator(t, i):
        w = list(range(1, t.parameter + 2))
        w[i], w[i + 1] = w[i + 1], w[i]
        return tuple(w)

    @staticmethod
    def mul(t, a, b):
        return tuple(a[j - 1] for j in b)

    @staticmethod
    def inv(t, a):
        out = [0] * len(a)
        for i, v in enumerate(a, start=1):
            out[v - 1] = i
        return tuple(out)

    @staticmethod
    def length(t, a):
        return _inversions(a)

    @staticmethod
    def right_descents(t, a):
        return frozenset(i for i in range(len(a) - 1) if a[i] > a[i + 1])

    @staticmethod
    def validate(t, a):
        return len(a) == t.parameter + 1 and sorted(a) == list(range(1, len(a) + 1))


class _SignedOps:
    """Shared by B_p and D_p; the family changes generators, length and descents."""

    @staticmethod
    def identity(t):
        return tuple(range(1, t.parameter + 1))

    @staticmethod
    def generator(t, i):
        w = list(range(1, t.parameter + 1))
        if i == 0:
            if t.family == "B":
                w[0] = -1
            else:
                w[0], w[1] = -2, -1
        else:
            w[i - 1], w[i] = w[i], w[i - 1]
        return tuple(w)

    @staticmethod
    def mul(t, a, b):
        return tuple(a[j - 1] if j > 0 else -a[-j - 1] for j in b)

    @staticmethod
    def inv(t, a):
        out = [0] * len(a)
        for i, v in enumerate(a, start=1):
            out[abs(v) - 1] = i if v > 0 else -i
        return tuple(out)

    @staticmethod
    def length(t, a):
        n = len(a)
        nsp = sum(1 for i in range(n) for j in range(i + 1, n) if a[i] + a[j] < 0)
        if t.family == "B":
            return _inversions(a) + nsp + sum(1 for v in a if v < 0)
        return _inversions(a) + nsp

    @staticmethod
    def right_descents(t, a):
        ds = {i for i in range(1, len(a)) if a[i - 1] > a[i]}
        if t.family == "B":
            if a[0] < 0:
                ds.add(0)
        elif a[0] + a[1] < 0:
            ds.add(0)
        return frozenset(ds)

    @staticmethod
    def validate(t, a):
        if len(a) != t.parameter or sorted(abs(v) for v in a) != list(range(1, len(a) + 1)):
            return False
        return t.family == "B" or sum(1 for v in a if v < 0) % 2 == 0


class _DihedralOps:
    """I2(m) as pairs (length, side), multiplied via rotation/reflection form."""

    @staticmethod
    def _to_rf(m, k, side):
        i, odd = divmod(k, 2)
        if side == 0:
            return i % m, odd
        return (-(i + odd)) % m, odd

    @staticmethod
    def _from_rf(m, j, f):
        if f == 0:
            if j == 0:
                return (0, 0)
            k0, k1 = 2 * j, 2 * (m - j)
        else:
            k0, k1 = 2 * j + 1, 2 * m - 2 * j - 1
        if k0 < k1:
            return (k0, 0)
        if k1 < k0:
            return (k1, 1)
        return (m, 0)

    @staticmethod
    def identity(t):
        return (0, 0)

    @staticmethod
    def generator(t, i):
        return (1, i)

    @classmethod
    def mul(cls, t, a, b):
        m = t.parameter
        j1, f1 = cls._to_rf(m, *a)
        j2, f2 = cls._to_rf(m, *b)
        return cls._from_rf(m, (j1 + (j2 if f1 == 0 else -j2)) % m, f1 ^ f2)

    @classmethod
    def inv(cls, t, a):
        m = t.parameter
        j, f = cls._to_rf(m, *a)
        return cls._from_rf(m, j if f else (-j) % m, f)

    @staticmethod
    def length(t, a):
        return a[0]

    @staticmethod
    def right_descents(t, a):
        k, side = a
        if k == 0:
            return frozenset()
        if k == t.parameter:
            return frozenset((0, 1))
        return frozenset((side if k % 2 else 1 - side,))

    @staticmethod
    def validate(t, a):
        if len(a) != 2:
            return False
        k, side = a
        if not 0 <= k <= t.parameter or side not in (0, 1):
            return False
        return side == 0 or 0 < k < t.parameter


class _ExceptionalOps:
    @staticmethod
    def identity(t):
        return root_system(t).identity_key

    @staticmethod
    def generator(t, i):
        rs = root_system(t)
        return tuple(int(x) for x in rs.gen_perm[i][: rs.rank])

    @staticmethod
    def mul(t, a, b):
        perm = root_system(t).full_perm(a)
        return tuple(int(perm[j]) for j in b)

    @staticmethod
    def inv(t, a):
        rs = root_system(t)
        perm = rs.full_perm(a)
        back = np.empty_like(perm)
        back[perm] = np.arange(len(perm))
        return tuple(int(x) for x in back[: rs.rank])

    @staticmethod
    def length(t, a):
        rs = root_system(t)
        perm = rs.full_perm(a)
        return int(np.count_nonzero(perm[: rs.n_positive] >= rs.n_positive))

    @staticmethod
    def right_descents(t, a):
        n = root_system(t).n_positive
        return frozenset(i for i, k in enumerate(a) if k >= n)

    @staticmethod
    def validate(t, a):
        rs = root_system(t)
        if len(a) != rs.rank or not all(0 <= k < 2 * rs.n_positive for k in a):
            return False
        try:
            perm = rs.full_perm(a)
        except KeyError:
            return False
        return len(set(perm.tolist())) == len(perm)


_OPS = {
    "A": _SymmetricOps,
    "B": _SignedOps,
    "D": _SignedOps,
    "I2": _DihedralOps,
}


def factor_ops(t: IrreducibleType):
    return _OPS.get(t.family, _ExceptionalOps)


@dataclass(frozen=True)
class GroupElement:
    group: CoxeterGroup
    components: tuple

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        return f"GroupElement({self.group}, {self.components})"


def make_element(g: CoxeterGroup, components) -> GroupElement:
    comps = tuple(tuple(c) for c in components)
    if len(comps) != len(g.factors):
        raise GroupMismatch(f"expected {len(g.factors)} components, got {len(comps)}")
    for f, c in zip(g.factors, comps):
        if not factor_ops(f).validate(f, c):
            raise ValueError(f"{c!r} is not an element of {f}")
    return GroupElement(g, comps)


def identity(g: CoxeterGroup) -> GroupElement:
    return GroupElement(g, tuple(factor_ops(f).identity(f) for f in g.factors))


def generators(g: CoxeterGroup) -> list[GroupElement]:
    """Simple generators in global order (factor by factor)."""
    ident = [factor_ops(f).identity(f) for f in g.factors]
    out = []
    for j, f in enumerate(g.factors):
        for i in range(f.rank):
            comps = list(ident)
            comps[j] = factor_ops(f).generator(f, i)
            out.append(GroupElement(g, tuple(comps)))
    return out


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.group != b.group:
        raise GroupMismatch(f"cannot multiply elements of {a.group} and {b.group}")
    return GroupElement(
        a.group,
        tuple(factor_ops(f).mul(f, x, y) for f, x, y in zip(a.group.factors, a.components, b.components)),
    )


def inverse(a: GroupElement) -> GroupElement:
    return GroupElement(
        a.group, tuple(factor_ops(f).inv(f, x) for f, x in zip(a.group.factors, a.components))
    )


def length(w: GroupElement) -> int:
    return sum(factor_ops(f).length(f, x) for f, x in zip(w.group.factors, w.components))


def descent_set(w: GroupElement) -> frozenset[int]:
    """Right descents, as global generator indices, via the family rules."""
    out = set()
    for off, f, x in zip(w.group.generator_offsets(), w.group.factors, w.components):
        out.update(off + i for i in factor_ops(f).right_descents(f, x))
    return frozenset(out)


def descent_set_by_length(w: GroupElement) -> frozenset[int]:
    """Right descents straight from the definition ``l(ws) < l(w)``."""
    lw = length(w)
    return frozenset(i for i, s in enumerate(generators(w.group)) if length(multiply(w, s)) < lw)


def des(w: GroupElement) -> int:
    return len(descent_set(w))


def two_sided_descent(w: GroupElement) -> int:
    return des(w) + des(inverse(w))


def longest_element(g: CoxeterGroup) -> GroupElement:
    """The unique element whose descent set is every generator."""
    comps = []
    for f in g.factors:
        if f.family == "A":
            comps.append(tuple(range(f.parameter + 1, 0, -1)))
        elif f.family == "B" or (f.family == "D" and f.parameter % 2 == 0):
            comps.append(tuple(-v for v in range(1, f.parameter + 1)))
        elif f.family == "D":
            comps.append((1,) + tuple(-v for v in range(2, f.parameter + 1)))
        elif f.family == "I2":
            comps.append((f.parameter, 0))
        else:
            rs = root_system(f)
            # w0 sends every positive root to a negative one; climb until stuck
            key = rs.identity_key
            while True:
                ascents = [i for i, k in enumerate(key) if k < rs.n_positive]
                if not ascents:
                    break
                key = _ExceptionalOps.mul(f, key, _ExceptionalOps.generator(f, ascents[0]))
            comps.append(key)
    return GroupElement(g, tuple(comps))
