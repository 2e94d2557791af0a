"""Uniform sampling of group elements and batched two-sided descent values.

Randomness comes from numpy's Philox, a counter-based generator.  A batch of
``n`` draws is cut into fixed-size chunks and chunk ``c`` of a
``SeededRng(seed, stream)`` uses the child key ``(stream, c)``, so the output
depends only on ``(seed, stream, group, n)`` and never on how many threads
process the chunks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .batch import two_sided_counts
from .coxeter import CoxeterGroup, IrreducibleType
from .elements import GroupElement
from .enumeration import FactorTable, factor_table, prebuilt_table
from .errors import TableMissing

CHUNK_SIZE = 1 << 15


@dataclass(frozen=True)
class SeededRng:
    seed: int
    stream: int = 0

    def generator(self, chunk: int = 0) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream, chunk))
        return np.random.Generator(np.random.Philox(ss))


def _exceptional(t: IrreducibleType, tables) -> FactorTable:
    table = (tables or {}).get(t) or prebuilt_table(t)
    if table is None:
        raise TableMissing(f"no element table for exceptional factor {t}; enumerate it first")
    return table


def _signed_perms(gen, size, p, even):
    perms = gen.permuted(np.tile(np.arange(1, p + 1, dtype=np.int16), (size, 1)), axis=1)
    signs = np.where(gen.integers(0, 2, size=(size, p), dtype=np.int8) == 1, -1, 1).astype(np.int16)
    if even:
        # flipping the first sign is a bijection from odd to even sign vectors
        odd = np.count_nonzero(signs < 0, axis=1) % 2 == 1
        signs[odd, 0] *= -1
    return perms * signs


def _factor_rows(t: IrreducibleType, gen, size, tables):
    """Uniform draws from one factor, as component rows plus their t-values."""
    f, p = t.family, t.parameter
    if f == "A":
        rows = gen.permuted(np.tile(np.arange(1, p + 2, dtype=np.int16), (size, 1)), axis=1)
        return rows, two_sided_counts(f, rows)
    if f in ("B", "D"):
        rows = _signed_perms(gen, size, p, f == "D")
        return rows, two_sided_counts(f, rows)
    table = factor_table(t) if f == "I2" else _exceptional(t, tables)
    idx = gen.integers(0, len(table), size=size)
    return table.rows[idx], table.t[idx].astype(np.int64)


def sample_uniform(g: CoxeterGroup, rng: SeededRng, tables=None) -> GroupElement:
    """One uniformly random element of ``g`` (uses chunk 0 of the stream)."""
    gen = rng.generator(0)
    comps = []
    for f in g.factors:
        rows, _ = _factor_rows(f, gen, 1, tables)
        comps.append(tuple(int(x) for x in rows[0]))
    return GroupElement(g, tuple(comps))


def _chunk_t(g, gen, size, tables):
    out = np.zeros(size, dtype=np.int64)
    for f in g.factors:
        out += _factor_rows(f, gen, size, tables)[1]
    return out


def sample_batch(
    g: CoxeterGroup,
    n: int,
    rng: SeededRng,
    threads: int = 1,
    tables=None,
    chunk_size: int = CHUNK_SIZE,
) -> np.ndarray:
    """``n`` independent values of ``t`` at uniform random elements of ``g``."""
    if n < 0:
        raise ValueError("sample size must be nonnegative")
    for f in g.factors:
        if f.is_exceptional:
            _exceptional(f, tables)
    bounds = [(c, start, min(chunk_size, n - start)) for c, start in enumerate(range(0, n, chunk_size))]

    def work(job):
        c, _, size = job
        return _chunk_t(g, rng.generator(c), size, tables)

    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, bounds))
    else:
        parts = [work(b) for b in bounds]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
