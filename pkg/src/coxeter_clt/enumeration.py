"""Exhaustive element tables.

Classical families are generated combinatorially.  Exceptional types are
enumerated by breadth-first search over the Cayley graph, where an element is
its canonical key (images of the simple roots, i.e. the columns of its exact
reflection matrix) packed into one integer code.  BFS levels are lengths,
which gives Poincaré level sizes and left descents for free.
"""

from __future__ import annotations

import bisect
import itertools
import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .batch import two_sided_counts
from .coxeter import CoxeterGroup, IrreducibleType
from .elements import GroupElement
from .errors import OrderExceedsCap
from .roots import root_system

log = logging.getLogger(__name__)

DEFAULT_CAP = 10**7
CACHE_ENV = "COXETER_CLT_CACHE"
CACHE_FORMAT_VERSION = 1


@dataclass(frozen=True, eq=False)
class FactorTable:
    """All elements of one irreducible factor, one row per element.

    ``rows`` holds the component data (one-line notation, ``(k, side)`` pairs
    or root-index keys); ``t`` the two-sided descent value of every row.
    """

    type: IrreducibleType
    rows: np.ndarray
    t: np.ndarray
    level_sizes: tuple[int, ...] | None = None
    _lookup: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.rows)

    def component(self, i: int) -> tuple:
        return tuple(int(x) for x in self.rows[i])

    def position(self, component) -> int:
        if "order" not in self._lookup:
            self._lookup["order"] = np.lexsort(self.rows.T[::-1])
        order, rows = self._lookup["order"], self.rows
        target = tuple(int(x) for x in component)
        k = bisect.bisect_left(range(len(order)), target, key=lambda i: tuple(rows[order[i]].tolist()))
        if k == len(order) or tuple(rows[order[k]].tolist()) != target:
            raise KeyError(component)
        return int(order[k])


def all_permutations(n: int) -> np.ndarray:
    """Every permutation of ``1..n`` as rows, in lexicographic order."""
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.permutations(range(1, n + 1))),
        dtype=np.int8,
        count=n * _factorial(n),
    )
    return flat.reshape(-1, n) if n else np.zeros((1, 0), dtype=np.int8)


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _signed_rows(p: int, even_only: bool) -> np.ndarray:
    perms = all_permutations(p)
    signs = np.array(list(itertools.product((1, -1), repeat=p)), dtype=np.int8)
    if even_only:
        signs = signs[np.count_nonzero(signs < 0, axis=1) % 2 == 0]
    rows = perms[:, None, :] * signs[None, :, :]
    return rows.reshape(-1, p)


def _dihedral_rows(m: int) -> np.ndarray:
    rows = [(0, 0)]
    for k in range(1, m):
        rows += [(k, 0), (k, 1)]
    rows.append((m, 0))
    return np.array(rows, dtype=np.int64)


def _dihedral_t(rows: np.ndarray, m: int) -> np.ndarray:
    k = rows[:, 0]
    return np.where(k == 0, 0, np.where(k == m, 4, 2)).astype(np.int8)


def _pack(keys: np.ndarray, base: int) -> np.ndarray:
    codes = np.zeros(len(keys), dtype=np.uint64)
    for j in range(keys.shape[1]):
        codes = codes * np.uint64(base) + keys[:, j].astype(np.uint64)
    return codes


def bfs_exceptional(t: IrreducibleType) -> FactorTable:
    """Enumerate an exceptional group level by level over its Cayley graph."""
    rs = root_system(t)
    r, npos = rs.rank, rs.n_positive
    base = 2 * npos
    perms = rs.gen_perm
    prev_codes = np.zeros(0, dtype=np.uint64)
    level = np.array([rs.identity_key], dtype=np.int64)
    level_codes = _pack(level, base)
    all_keys, all_t, sizes = [], [], []
    while len(level):
        # right descents: the image of a simple root is negative
        right = np.count_nonzero(level >= npos, axis=1)
        left = np.zeros(len(level), dtype=np.int64)
        candidates = []
        for s in range(r):
            moved = perms[s][level]
            codes = _pack(moved, base)
            # left multiplication lowers length exactly when s w lies one level down
            down = np.isin(codes, prev_codes, assume_unique=False)
            left += down
            candidates.append(moved[~down])
        all_keys.append(level.astype(np.int16))
        all_t.append((right + left).astype(np.int8))
        sizes.append(len(level))
        cand = np.concatenate(candidates) if candidates else np.zeros((0, r), dtype=np.int64)
        cand_codes = _pack(cand, base)
        uniq, first = np.unique(cand_codes, return_index=True)
        prev_codes, level_codes = level_codes, uniq
        level = cand[first]
        log.debug("%s: level %d has %d elements", t, len(sizes), len(level))
    return FactorTable(t, np.concatenate(all_keys), np.concatenate(all_t), tuple(sizes))


def _cache_dir(cache_dir) -> Path | None:
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV)
    return Path(cache_dir) if cache_dir else None


def _cache_file(directory: Path, t: IrreducibleType) -> Path:
    return directory / f"{t}.v{CACHE_FORMAT_VERSION}.npz"


def save_table(table: FactorTable, path) -> None:
    np.savez_compressed(
        path,
        format_version=np.array(CACHE_FORMAT_VERSION),
        type=np.array(str(table.type)),
        keys=table.rows,
        t=table.t,
        level_sizes=np.array(table.level_sizes or (), dtype=np.int64),
    )


def load_table(path, t: IrreducibleType) -> FactorTable:
    with np.load(path, allow_pickle=False) as data:
        if int(data["format_version"]) != CACHE_FORMAT_VERSION or str(data["type"]) != str(t):
            raise ValueError(f"{path} is not a version-{CACHE_FORMAT_VERSION} table for {t}")
        sizes = tuple(int(x) for x in data["level_sizes"])
        return FactorTable(t, data["keys"], data["t"], sizes or None)


_EXCEPTIONAL_TABLES: dict[IrreducibleType, FactorTable] = {}


def prebuilt_table(t: IrreducibleType) -> FactorTable | None:
    return _EXCEPTIONAL_TABLES.get(t)


def factor_table(t: IrreducibleType, cap: int = DEFAULT_CAP, cache_dir=None) -> FactorTable:
    """Element table of one irreducible factor (built once, then shared)."""
    if t.order > cap:
        raise OrderExceedsCap(f"|{t}| = {t.order} exceeds cap {cap}", t.order, cap, t)
    if not t.is_exceptional:
        return _classical_table(t)
    table = _EXCEPTIONAL_TABLES.get(t)
    if table is not None:
        return table
    directory = _cache_dir(cache_dir)
    path = _cache_file(directory, t) if directory else None
    if path is not None and path.exists():
        table = load_table(path, t)
    else:
        table = bfs_exceptional(t)
        if path is not None:
            directory.mkdir(parents=True, exist_ok=True)
            save_table(table, path)
    _EXCEPTIONAL_TABLES[t] = table
    return table


@lru_cache(maxsize=32)
def _classical_table(t: IrreducibleType) -> FactorTable:
    f, p = t.family, t.parameter
    if f == "I2":
        rows = _dihedral_rows(p)
        return FactorTable(t, rows, _dihedral_t(rows, p))
    if f == "A":
        rows = all_permutations(p + 1)
    else:
        rows = _signed_rows(p, even_only=(f == "D"))
    return FactorTable(t, rows, two_sided_counts(f, rows).astype(np.int8))


class ElementTable(Sequence):
    """All elements of a product group, indexed in mixed radix (first factor slowest)."""

    def __init__(self, group: CoxeterGroup, tables: Sequence[FactorTable]):
        self.group = group
        self.tables = tuple(tables)
        self._sizes = [len(tb) for tb in self.tables]

    def __len__(self):
        out = 1
        for s in self._sizes:
            out *= s
        return out

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[k] for k in range(*i.indices(len(self)))]
        n = len(self)
        if i < 0:
            i += n
        if not 0 <= i < n:
            raise IndexError(i)
        comps = []
        for size, tb in zip(reversed(self._sizes), reversed(self.tables)):
            i, k = divmod(i, size)
            comps.append(tb.component(k))
        return GroupElement(self.group, tuple(reversed(comps)))

    def __iter__(self) -> Iterator[GroupElement]:
        for combo in itertools.product(*(range(s) for s in self._sizes)):
            yield GroupElement(
                self.group, tuple(tb.component(k) for tb, k in zip(self.tables, combo))
            )

    def index(self, w: GroupElement) -> int:
        """Position of ``w``; the canonical-form lookup of the table."""
        if w.group != self.group:
            raise KeyError(w)
        pos = 0
        for size, tb, comp in zip(self._sizes, self.tables, w.components):
            pos = pos * size + tb.position(comp)
        return pos

    def __contains__(self, w):
        try:
            self.index(w)
        except KeyError:
            return False
        return True


def enumerate_group(g: CoxeterGroup, cap: int = DEFAULT_CAP, cache_dir=None) -> ElementTable:
    """Complete element table of ``g``; raises :class:`OrderExceedsCap` above ``cap``."""
    if g.order > cap:
        raise OrderExceedsCap(f"|{g}| = {g.order} exceeds cap {cap}", g.order, cap)
    return ElementTable(g, [factor_table(f, cap, cache_dir) for f in g.factors])
