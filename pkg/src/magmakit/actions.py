"""Actions of one unitary magma on another and the semidirect product.

An action of B on X is a table ``h[b, x]`` with ``h[0, x] == x`` and
``h[b, 0] == 0``; nothing involving addition is required.  The semidirect
product ``X x| B`` lives on pair indices ``x * |B| + b``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import laws
from .core import INDEX, Hom, Magma, ZeroMap, _first
from .errors import (
    EntryOutOfRange,
    InternalDefect,
    ShapeError,
    UnitActsNontrivially,
    ValidationError,
    ZeroNotFixed,
)
from .extensions import SplitExtension


@dataclass(frozen=True, eq=False)
class Action:
    b: Magma
    x: Magma
    table: np.ndarray

    def __post_init__(self):
        t = np.array(self.table, dtype=INDEX)
        nb, nx = self.b.order, self.x.order
        if t.shape != (nb, nx):
            raise ShapeError(f"action table must have shape {(nb, nx)}, got {t.shape}")
        bad = _first((t < 0) | (t >= nx))
        if bad is not None:
            raise EntryOutOfRange(bad, t[bad], nx)
        w = _first(t[0] != np.arange(nx))
        if w is not None:
            raise UnitActsNontrivially(w[0])
        w = _first(t[:, 0] != 0)
        if w is not None:
            raise ZeroNotFixed(w[0])
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def _trusted(cls, b: Magma, x: Magma, table) -> "Action":
        a = object.__new__(cls)
        t = np.asarray(table, dtype=INDEX)
        t.setflags(write=False)
        object.__setattr__(a, "b", b)
        object.__setattr__(a, "x", x)
        object.__setattr__(a, "table", t)
        return a

    def act(self, b: int, x: int) -> int:
        return int(self.table[b, x])

    def __eq__(self, other):
        if not isinstance(other, Action):
            return NotImplemented
        return self.b == other.b and self.x == other.x and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.b, self.x, self.table.tobytes()))

    def __repr__(self):
        return f"Action(|B|={self.b.order}, |X|={self.x.order}, table={self.table.tolist()})"


def validate_action(b: Magma, x: Magma, table) -> Action:
    return Action(b, x, table)


def trivial_action(b: Magma, x: Magma) -> Action:
    """bx = x for every b; its semidirect product is the direct product."""
    return Action._trusted(b, x, np.tile(np.arange(x.order), (b.order, 1)))


@dataclass(frozen=True, eq=False)
class SemidirectDiagram:
    action: Action
    total: Magma
    inj1: Hom
    inj2: Hom
    proj1: ZeroMap
    proj2: Hom
    extension: SplitExtension

    def pair(self, x: int, b: int) -> int:
        return x * self.action.b.order + b

    def unpair(self, i: int) -> tuple[int, int]:
        return divmod(int(i), self.action.b.order)


def semidirect(a: Action) -> SemidirectDiagram:
    """The semidirect product diagram of ``a``, verified as a split extension.

    The verification cannot fail for a valid action; if it does, that is a
    bug and ``InternalDefect`` is raised.
    """
    B, X = a.b, a.x
    nb, nx = B.order, X.order
    total = Magma._trusted(laws.semidirect_tables(B.table, X.table, a.table[None])[0])
    idx = np.arange(nx * nb)
    inj1 = Hom._trusted(X, total, np.arange(nx) * nb)
    inj2 = Hom._trusted(B, total, np.arange(nb))
    proj1 = ZeroMap._trusted(total, X, idx // nb)
    proj2 = Hom._trusted(total, B, idx % nb)
    try:
        ext = SplitExtension(B, X, total, proj2, inj2, inj1, proj1)
    except ValidationError as exc:
        raise InternalDefect(f"semidirect product diagram fails: {exc}") from exc
    return SemidirectDiagram(a, total, inj1, inj2, proj1, proj2, ext)


def associated_action(e: SplitExtension) -> Action:
    """bx = lam(beta(b) + kappa(x))."""
    A = e.a.table
    t = e.lam.values[A[e.beta.values[:, None], e.kappa.values[None, :]]]
    return Action(e.b, e.x, t)


def firmness_witness(a: Action) -> Optional[tuple[int, int, int]]:
    """First (b', b, x) in lexicographic order with b'(bx) != (b' + b)x."""
    return laws.firmness_violation(a.b.table, a.table)


def is_firm(a: Action) -> bool:
    return firmness_witness(a) is None


def distributivity_witness(a: Action) -> Optional[tuple[int, int, int]]:
    """First (b, x, x') with b(x + x') != bx + bx'."""
    return laws.distributivity_violation(a.x.table, a.table)


def is_distributive(a: Action) -> bool:
    return distributivity_witness(a) is None


def restrict_action(a: Action, f: Hom) -> Action:
    """The action of ``f.dom`` on X given by b'x = f(b')x."""
    if f.cod != a.b:
        raise ShapeError("f must land in the acting magma")
    return Action._trusted(f.dom, a.x, a.table[f.values])


def action_count(b: Magma, x: Magma) -> int:
    return x.order ** ((b.order - 1) * (x.order - 1))


def enumerate_actions(b: Magma, x: Magma) -> Iterator[Action]:
    """All actions of b on x, lexicographic in the free cells (b != 0, x != 0)
    read row by row."""
    nb, nx = b.order, x.order
    base = np.zeros((nb, nx), dtype=INDEX)
    base[0] = np.arange(nx)
    for cells in itertools.product(range(nx), repeat=(nb - 1) * (nx - 1)):
        t = base.copy()
        if cells:
            t[1:, 1:] = np.reshape(cells, (nb - 1, nx - 1))
        yield Action._trusted(b, x, t)
