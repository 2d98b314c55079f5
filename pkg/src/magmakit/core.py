"""Finite unitary magmas given by Cayley tables, and maps between them.

The carrier of an order-``n`` magma is always ``{0, ..., n-1}`` with the unit
at index 0, so ``table[0, j] == j`` and ``table[i, 0] == i``.  Maps are index
arrays.  Everything here is immutable once validated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    EntryOutOfRange,
    NotAHomomorphism,
    NotClosed,
    ShapeError,
    UnitLawViolation,
    ZeroNotPreserved,
)

INDEX = np.intp


def _first(mask: np.ndarray) -> Optional[tuple[int, ...]]:
    """Row-major first index where ``mask`` is true."""
    if not mask.any():
        return None
    return tuple(int(i) for i in np.unravel_index(int(np.argmax(mask)), mask.shape))


@dataclass(frozen=True, eq=False)
class Magma:
    """A finite unitary magma.  Equality and hashing use the table only."""

    table: np.ndarray
    name: Optional[str] = field(default=None)

    def __post_init__(self):
        try:
            t = np.array(self.table, dtype=INDEX)
        except (TypeError, ValueError) as exc:
            raise ShapeError(f"table is not an integer array: {exc}") from None
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
            raise ShapeError(f"table must be a non-empty square array, got shape {t.shape}")
        n = t.shape[0]
        bad = _first((t < 0) | (t >= n))
        if bad is not None:
            raise EntryOutOfRange(bad, t[bad], n)
        ident = np.arange(n)
        if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
            # scan row 0 then column 0 so the reported cell is the first in row-major order
            cells = [(0, j) for j in range(n)] + [(i, 0) for i in range(1, n)]
            cells.sort()
            for i, j in cells:
                if t[i, j] != (j if i == 0 else i):
                    raise UnitLawViolation(i, j, t[i, j])
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def add(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Magma):
            return NotImplemented
        return self.table.shape == other.table.shape and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.order, self.table.tobytes()))

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"Magma({label}order={self.order}, table={self.table.tolist()})"

    @classmethod
    def _trusted(cls, table: np.ndarray, name: Optional[str] = None) -> "Magma":
        # caller guarantees a valid unitary table
        m = object.__new__(cls)
        t = np.asarray(table, dtype=INDEX)
        t.setflags(write=False)
        object.__setattr__(m, "table", t)
        object.__setattr__(m, "name", name)
        return m


def validate_magma(order: int, table, name: Optional[str] = None) -> Magma:
    try:
        t = np.asarray(table)
    except ValueError as exc:
        raise ShapeError(f"table is not rectangular: {exc}") from None
    if t.shape != (order, order):
        raise ShapeError(f"expected a {order}x{order} table, got shape {t.shape}")
    return Magma(t, name)


@dataclass(frozen=True, eq=False)
class ZeroMap:
    """A zero-preserving map between magma carriers."""

    dom: Magma
    cod: Magma
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=INDEX)
        if v.shape != (self.dom.order,):
            raise ShapeError(f"map needs {self.dom.order} values, got shape {v.shape}")
        bad = _first((v < 0) | (v >= self.cod.order))
        if bad is not None:
            raise EntryOutOfRange(bad, v[bad], self.cod.order)
        if v[0] != 0:
            raise ZeroNotPreserved(v[0])
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def _trusted(cls, dom: Magma, cod: Magma, values) -> "ZeroMap":
        m = object.__new__(cls)
        v = np.asarray(values, dtype=INDEX)
        v.setflags(write=False)
        object.__setattr__(m, "dom", dom)
        object.__setattr__(m, "cod", cod)
        object.__setattr__(m, "values", v)
        return m

    def __call__(self, a: int) -> int:
        return int(self.values[a])

    def __matmul__(self, other: "ZeroMap") -> "ZeroMap":
        return compose_maps(self, other)

    def __eq__(self, other):
        if not isinstance(other, ZeroMap):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self):
        return hash((self.dom, self.cod, self.values.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}({self.dom.order}->{self.cod.order}, {self.values.tolist()})"

    def is_bijective(self) -> bool:
        return self.dom.order == self.cod.order and len(np.unique(self.values)) == self.dom.order

    def is_injective(self) -> bool:
        return len(np.unique(self.values)) == self.dom.order


def additivity_witness(dom: Magma, cod: Magma, values: np.ndarray) -> Optional[tuple[int, int]]:
    lhs = values[dom.table]
    rhs = cod.table.ravel()[(values * cod.order)[:, None] + values[None, :]]
    if np.array_equal(lhs, rhs):
        return None
    return _first(lhs != rhs)


class Hom(ZeroMap):
    """A magma homomorphism."""

    def __post_init__(self):
        super().__post_init__()
        w = additivity_witness(self.dom, self.cod, self.values)
        if w is not None:
            raise NotAHomomorphism(*w)


def is_hom(m: ZeroMap) -> bool:
    return additivity_witness(m.dom, m.cod, m.values) is None


def as_hom(m: ZeroMap) -> Hom:
    if isinstance(m, Hom):
        return m
    return Hom(m.dom, m.cod, m.values)


def identity(m: Magma) -> Hom:
    return Hom._trusted(m, m, np.arange(m.order))


def zero_map(dom: Magma, cod: Magma) -> Hom:
    return Hom._trusted(dom, cod, np.zeros(dom.order, dtype=INDEX))


def compose_maps(g: ZeroMap, f: ZeroMap) -> ZeroMap:
    """``g`` after ``f``.  The result is a ``Hom`` when both factors are."""
    if f.cod != g.dom:
        raise ShapeError("codomain of the first map differs from domain of the second")
    cls = Hom if isinstance(f, Hom) and isinstance(g, Hom) else ZeroMap
    return cls._trusted(f.dom, g.cod, g.values[f.values])


def associativity_witness(m: Magma) -> Optional[tuple[int, int, int]]:
    t = m.table
    n = m.order
    left = t[t[:, :, None], np.arange(n)[None, None, :]]
    right = t[np.arange(n)[:, None, None], t[None, :, :]]
    return _first(left != right)


def is_associative(m: Magma) -> bool:
    return associativity_witness(m) is None


def is_commutative(m: Magma) -> bool:
    return bool(np.array_equal(m.table, m.table.T))


def submagma(m: Magma, subset: Iterable[int], name: Optional[str] = None) -> tuple[Magma, Hom]:
    """Induced submagma on ``subset`` with its inclusion.

    Elements are re-indexed in increasing ambient order, so 0 stays first.
    """
    elems = sorted(set(int(s) for s in subset))
    if not elems or elems[0] != 0:
        raise ValueError("subset must contain 0")
    if elems[-1] >= m.order:
        raise EntryOutOfRange((len(elems) - 1,), elems[-1], m.order)
    s = np.array(elems, dtype=INDEX)
    lookup = np.full(m.order, -1, dtype=INDEX)
    lookup[s] = np.arange(len(s))
    sums = m.table[np.ix_(s, s)]
    w = _first(lookup[sums] < 0)
    if w is not None:
        i, j = w
        raise NotClosed(s[i], s[j], sums[i, j])
    sub = Magma._trusted(lookup[sums], name)
    return sub, Hom._trusted(sub, m, s)


def generated_submagma(m: Magma, gens: Iterable[int]) -> frozenset[int]:
    """Smallest subset containing 0 and ``gens`` that is closed under addition."""
    current = {0, *(int(g) for g in gens)}
    frontier = set(current)
    while frontier:
        new = set()
        for a in current:
            for b in frontier:
                for c in (m.table[a, b], m.table[b, a]):
                    c = int(c)
                    if c not in current and c not in new:
                        new.add(c)
        current |= new
        frontier = new
    return frozenset(current)


def _iso_constraints(t: np.ndarray) -> list[list[tuple[int, int, int]]]:
    # constraint (i, j, t[i,j]) becomes checkable once the largest of the three is assigned
    n = t.shape[0]
    buckets: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for i in range(1, n):
        for j in range(1, n):
            k = int(t[i, j])
            buckets[max(i, j, k)].append((i, j, k))
    return buckets


def are_isomorphic(m: Magma, n: Magma) -> Optional[Hom]:
    """First isomorphism ``m -> n`` in lexicographic permutation order, or None."""
    if m.order != n.order:
        return None
    size = m.order
    # isomorphisms preserve the number of idempotents
    if int((np.diag(m.table) == np.arange(size)).sum()) != int(
        (np.diag(n.table) == np.arange(size)).sum()
    ):
        return None
    buckets = _iso_constraints(m.table)
    u = n.table
    sigma = [0] * size
    used = [False] * size
    used[0] = True

    def extend(k: int) -> bool:
        if k == size:
            return True
        for v in range(1, size):
            if used[v]:
                continue
            sigma[k] = v
            if all(sigma[c] == u[sigma[a], sigma[b]] for a, b, c in buckets[k]):
                used[v] = True
                if extend(k + 1):
                    return True
                used[v] = False
        return False

    if extend(1):
        return Hom._trusted(m, n, sigma)
    return None


def permute_magma(m: Magma, sigma: Sequence[int], name: Optional[str] = None) -> Magma:
    """Transport ``m`` along the 0-fixing bijection ``sigma`` (old index -> new index)."""
    s = np.asarray(sigma, dtype=INDEX)
    if s[0] != 0 or sorted(s.tolist()) != list(range(m.order)):
        raise ValueError("sigma must be a 0-fixing permutation")
    inv = np.argsort(s)
    return Magma._trusted(s[m.table[np.ix_(inv, inv)]], name)


def direct_product(m: Magma, n: Magma, name: Optional[str] = None) -> Magma:
    """Componentwise product; the pair (a, b) has index ``a * n.order + b``."""
    k = n.order
    idx = np.arange(m.order * k)
    first, second = idx // k, idx % k
    t = m.table[first[:, None], first[None, :]] * k + n.table[second[:, None], second[None, :]]
    return Magma._trusted(t, name)


def trivial_magma() -> Magma:
    return Magma._trusted(np.zeros((1, 1), dtype=INDEX), "trivial")


def cyclic_group(n: int) -> Magma:
    idx = np.arange(n)
    return Magma._trusted((idx[:, None] + idx[None, :]) % n, f"Z{n}")


def or_monoid() -> Magma:
    """({0, 1}, max): the two-element idempotent commutative monoid."""
    return Magma._trusted(np.array([[0, 1], [1, 1]]), "OR")


def max_monoid(n: int) -> Magma:
    idx = np.arange(n)
    return Magma._trusted(np.maximum(idx[:, None], idx[None, :]), f"max{n}")


STANDARD = {
    "trivial": trivial_magma,
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "OR": or_monoid,
    "max3": lambda: max_monoid(3),
}
