"""Exact root systems for the exceptional types.

Roots are coordinate vectors over ``Z[phi]`` in the basis of simple roots.
The simple reflection ``s_i`` acts by ``s_i(a_j) = a_j - C[i][j] a_i`` where
``C`` is a Cartan matrix: ``-2cos(pi/m)`` for the non-crystallographic bonds
of H3/H4, and the usual integer Cartan matrix for F4 and E6..E8 (the F4
4-bond cannot be written symmetrically over Q(sqrt 5)).

A group element ``w`` is stored as the tuple of root indices of
``w(a_1), ..., w(a_r)``.  These are the columns of the exact matrix of ``w``
in the reflection representation, so the tuple is a canonical form.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .coxeter import IrreducibleType, coxeter_matrix
from .golden import Golden, two_cos_pi_over


def cartan_matrix(t: IrreducibleType) -> list[list[Golden]]:
    m = coxeter_matrix(t)
    n = len(m)
    c = [[Golden(2) if i == j else Golden(0) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j or m[i][j] == 2:
                continue
            if m[i][j] == 4:
                # long root first in the Bourbaki ordering of F4
                c[i][j] = Golden(-1) if i < j else Golden(-2)
            else:
                c[i][j] = -two_cos_pi_over(m[i][j])
    return c


class RootSystem:
    """Roots of one exceptional type, with generator actions as index permutations.

    Roots ``0 .. N-1`` are positive (simple roots first, then by height);
    root ``i + N`` is ``-root[i]``.
    """

    def __init__(self, t: IrreducibleType):
        self.type = t
        self.rank = r = t.rank
        self.cartan = cartan_matrix(t)
        simple = [tuple(Golden(int(i == j)) for j in range(r)) for i in range(r)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(r):
                    img = self._reflect(i, beta)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        positive = [b for b in seen if all(c >= 0 for c in b)]
        assert len(positive) * 2 == len(seen), "root system is not split by sign"

        def sort_key(beta):
            height = sum(beta, Golden(0))
            return (float(height), tuple(-float(c) for c in beta))

        positive.sort(key=sort_key)
        self.n_positive = len(positive)
        self.roots = positive + [tuple(-c for c in b) for b in positive]
        self.index = {b: k for k, b in enumerate(self.roots)}
        self.gen_perm = np.array(
            [[self.index[self._reflect(i, b)] for b in self.roots] for i in range(r)],
            dtype=np.int64,
        )
        if not all(c.is_integral() for b in self.roots for c in b):
            raise ValueError(f"non-integral root coordinates for {t}")
        self.coord_a = np.array([[int(c.a) for c in b] for b in self.roots], dtype=np.int64)
        self.coord_b = np.array([[int(c.b) for c in b] for b in self.roots], dtype=np.int64)
        self._row_index = {
            (tuple(a), tuple(bb)): k
            for k, (a, bb) in enumerate(zip(self.coord_a.tolist(), self.coord_b.tolist()))
        }

    def _reflect(self, i: int, beta: tuple) -> tuple:
        pairing = sum((self.cartan[i][j] * beta[j] for j in range(self.rank)), Golden(0))
        return tuple(beta[j] - pairing if j == i else beta[j] for j in range(self.rank))

    @property
    def identity_key(self) -> tuple[int, ...]:
        return tuple(range(self.rank))

    def full_perm(self, key) -> np.ndarray:
        """Images of every root under the element with the given key."""
        k = np.asarray(key, dtype=np.int64)
        ka, kb = self.coord_a[k], self.coord_b[k]
        ba, bb = self.coord_a, self.coord_b
        a = ba @ ka + bb @ kb
        b = ba @ kb + bb @ ka + bb @ kb
        idx = self._row_index
        return np.array(
            [idx[(tuple(x), tuple(y))] for x, y in zip(a.tolist(), b.tolist())],
            dtype=np.int64,
        )

    def is_negative(self, root_index) -> bool:
        return root_index >= self.n_positive

    def matrix(self, key) -> list[list[Golden]]:
        """Exact matrix of the element in the simple-root basis (columns = images)."""
        cols = [self.roots[k] for k in key]
        return [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]

    def key_from_matrix(self, mat) -> tuple[int, ...]:
        return tuple(self.index[tuple(mat[i][j] for i in range(self.rank))] for j in range(self.rank))


@lru_cache(maxsize=None)
def root_system(t: IrreducibleType) -> RootSystem:
    return RootSystem(t)
