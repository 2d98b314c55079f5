"""Exhaustive generators: unitary magmas by Cayley table, homomorphisms,
isomorphism classes, and deterministic parallel mapping.

An order-n table has (n-1)^2 free cells (everything off row 0 and column 0).
Tables are numbered by reading the free cells row by row as base-n digits,
most significant first, so the numbering is lexicographic.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .core import INDEX, Hom, Magma, _iso_constraints

log = logging.getLogger(__name__)

CHUNK = 1 << 14


@dataclass(frozen=True)
class SearchBudget:
    max_order: int = 2
    max_candidates: Optional[int] = None
    workers: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("max_order must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("MAGMAKIT_WORKERS", "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, items: Sequence, workers: int = 1) -> list:
    """Map in input order; with several workers, across processes."""
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- magmas ----------------------------------------------------------------


def magma_count(n: int) -> int:
    return n ** ((n - 1) ** 2)


def magma_tables(n: int, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    """Tables numbered ``start .. stop-1`` as an array of shape (k, n, n)."""
    total = magma_count(n)
    stop = total if stop is None else min(stop, total)
    idx = np.arange(start, stop, dtype=np.int64)
    free = (n - 1) ** 2
    t = np.empty((len(idx), n, n), dtype=INDEX)
    t[:, 0, :] = np.arange(n)
    t[:, :, 0] = np.arange(n)
    if free:
        powers = n ** np.arange(free - 1, -1, -1, dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % n
        t[:, 1:, 1:] = digits.reshape(len(idx), n - 1, n - 1)
    return t


def associative_mask(tables: np.ndarray) -> np.ndarray:
    """Per-table associativity for a stack of shape (k, n, n)."""
    k, n = tables.shape[0], tables.shape[1]
    flat = tables.reshape(k, -1)
    off = (np.arange(k) * n * n)[:, None, None, None]
    ab = tables[:, :, :, None]  # (a+b), later added to c
    left = flat.reshape(-1)[off + ab * n + np.arange(n)]
    bc = tables[:, None, :, :]
    right = flat.reshape(-1)[off + np.arange(n)[:, None, None] * n + bc]
    return (left == right).reshape(k, -1).all(axis=1)


def enumerate_magmas(n: int, associative_only: bool = False) -> Iterator[Magma]:
    """Every unitary magma of order ``n`` (monoids only, if asked) in lexicographic order."""
    if n < 1:
        raise ValueError("order must be at least 1")
    total = magma_count(n)
    for start in range(0, total, CHUNK):
        tables = magma_tables(n, start, start + CHUNK)
        if associative_only:
            tables = tables[associative_mask(tables)]
        for t in tables:
            yield Magma._trusted(t)


def _count_chunk(args) -> int:
    n, start, stop, associative_only = args
    tables = magma_tables(n, start, stop)
    if associative_only:
        return int(associative_mask(tables).sum())
    return len(tables)


def count_magmas(
    n: int,
    associative_only: bool = False,
    workers: int = 1,
    checkpoint: Optional[str | Path] = None,
    chunk: int = CHUNK,
) -> int:
    """Count by materialising every table, in chunks.

    With a ``checkpoint`` path the cursor and running count are written after
    every batch of chunks, and a later call resumes from them.
    """
    total = magma_count(n)
    cursor, found = 0, 0
    key = f"{n} {int(associative_only)}"
    if checkpoint is not None and Path(checkpoint).exists():
        parts = Path(checkpoint).read_text().split()
        if len(parts) == 4 and " ".join(parts[:2]) == key:
            cursor, found = int(parts[2]), int(parts[3])
            log.info("resuming at table %d with %d counted", cursor, found)
    step = chunk * max(1, workers) * 4
    while cursor < total:
        stop = min(total, cursor + step)
        jobs = [(n, s, min(s + chunk, stop), associative_only) for s in range(cursor, stop, chunk)]
        found += sum(pmap(_count_chunk, jobs, workers))
        cursor = stop
        if checkpoint is not None:
            Path(checkpoint).write_text(f"{key} {cursor} {found}\n")
    return found


# -- homomorphisms ---------------------------------------------------------


def enumerate_homs(m: Magma, n: Magma, fixed: Optional[dict[int, int]] = None) -> Iterator[Hom]:
    """All homomorphisms ``m -> n`` in lexicographic order of value arrays.

    ``fixed`` pins chosen elements to given images.
    """
    size, target = m.order, n.order
    fixed = dict(fixed or {})
    if fixed.get(0, 0) != 0:
        return
    buckets = _iso_constraints(m.table)
    u = n.table.tolist()
    choices = [[fixed[k]] if k in fixed else range(target) for k in range(size)]
    vals = [0] * size

    def extend(k: int) -> Iterator[Hom]:
        if k == size:
            yield Hom._trusted(m, n, vals)
            return
        for v in choices[k]:
            vals[k] = v
            if all(vals[c] == u[vals[a]][vals[b]] for a, b, c in buckets[k]):
                yield from extend(k + 1)

    yield from extend(1)


# -- isomorphism classes ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class IsoClass:
    representative: Magma
    size: int


def _zero_fixing_perms(n: int) -> np.ndarray:
    return np.array([(0, *p) for p in permutations(range(1, n))], dtype=INDEX).reshape(-1, n)


def canonical_table(m: Magma, perms: Optional[np.ndarray] = None) -> np.ndarray:
    """Least relabelled table over all 0-fixing permutations."""
    n = m.order
    if perms is None:
        perms = _zero_fixing_perms(n)
    inv = np.argsort(perms, axis=1)
    rows = m.table[inv[:, :, None], inv[:, None, :]]
    relabelled = np.take_along_axis(perms, rows.reshape(len(perms), -1), axis=1)
    best = np.lexsort(relabelled.T[::-1])[0]
    return relabelled[best].reshape(n, n)


def iso_classes(magmas: Iterable[Magma]) -> list[IsoClass]:
    """Group by isomorphism.  Each class is represented by its least member
    in the input; classes are listed in order of their representatives."""
    perms: dict[int, np.ndarray] = {}
    groups: dict[tuple, list] = {}
    for m in magmas:
        p = perms.setdefault(m.order, _zero_fixing_perms(m.order))
        key = (m.order, canonical_table(m, p).tobytes())
        g = groups.get(key)
        if g is None:
            groups[key] = [m, 1]
        else:
            g[1] += 1
            if _table_key(m) < _table_key(g[0]):
                g[0] = m
    out = [IsoClass(rep, size) for rep, size in groups.values()]
    out.sort(key=lambda c: _table_key(c.representative))
    return out


def _table_key(m: Magma) -> tuple:
    return (m.order, tuple(m.table.ravel().tolist()))
