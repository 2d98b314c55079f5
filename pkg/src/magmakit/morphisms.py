"""Morphisms of split extensions and of actions, the comparison isomorphism
with the semidirect product, the two equivalence functors, and pullbacks
(cartesian liftings) along homomorphisms.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .actions import (
    Action,
    SemidirectDiagram,
    associated_action,
    restrict_action,
    semidirect,
)
from .core import Hom, ZeroMap, additivity_witness, identity
from .errors import EquationViolation, HomViolation, InternalDefect, ShapeError
from .extensions import SplitExtension

log = logging.getLogger(__name__)

MORPHISM_EQUATIONS = ("p_kappa", "p_beta", "lam_p", "alpha_p")


class CanonicalIso(NamedTuple):
    phi: Hom  # A -> X x| B
    psi: Hom  # X x| B -> A
    diagram: SemidirectDiagram


def canonical_iso(e: SplitExtension) -> CanonicalIso:
    """phi(a) = (lam(a), alpha(a)) and psi(x, b) = kappa(x) + beta(b).

    Both are checked to be mutually inverse homomorphisms commuting with the
    structure maps; any failure means a bug and raises ``InternalDefect``.
    """
    d = semidirect(associated_action(e))
    nb = e.b.order
    A = e.a.table
    phi_v = e.lam.values * nb + e.alpha.values
    psi_v = A[e.kappa.values[:, None], e.beta.values[None, :]].reshape(-1)
    n = e.a.order
    if not (np.array_equal(phi_v[psi_v], np.arange(n)) and np.array_equal(psi_v[phi_v], np.arange(n))):
        raise InternalDefect("phi and psi are not mutually inverse")
    if additivity_witness(d.total, e.a, psi_v) is not None:
        raise InternalDefect("psi is not a homomorphism")
    if additivity_witness(e.a, d.total, phi_v) is not None:
        raise InternalDefect("phi is not a homomorphism")
    checks = (
        (phi_v[e.kappa.values], d.inj1.values),
        (phi_v[e.beta.values], d.inj2.values),
        (d.proj1.values[phi_v], e.lam.values),
        (d.proj2.values[phi_v], e.alpha.values),
        (psi_v[d.inj1.values], e.kappa.values),
        (psi_v[d.inj2.values], e.beta.values),
        (e.lam.values[psi_v], d.proj1.values),
        (e.alpha.values[psi_v], d.proj2.values),
    )
    if not all(np.array_equal(u, v) for u, v in checks):
        raise InternalDefect("comparison maps do not commute with the structure maps")
    return CanonicalIso(Hom._trusted(e.a, d.total, phi_v), Hom._trusted(d.total, e.a, psi_v), d)


def swap_identity_holds(e: SplitExtension) -> bool:
    """beta(b) + kappa(x) == kappa(bx) + beta(b) for all b, x."""
    A = e.a.table
    h = associated_action(e).table
    k, bt = e.kappa.values, e.beta.values
    left = A[bt[:, None], k[None, :]]
    right = A[k[h], bt[:, None]]
    return bool(np.array_equal(left, right))


@dataclass(frozen=True, eq=False)
class SplitExtMorphism:
    source: SplitExtension
    target: SplitExtension
    f: Hom  # B -> B'
    u: Hom  # X -> X'
    p: Hom  # A -> A'

    def __post_init__(self):
        s, t = self.source, self.target
        for name, m, dom, cod in (
            ("f", self.f, s.b, t.b),
            ("u", self.u, s.x, t.x),
            ("p", self.p, s.a, t.a),
        ):
            if m.dom != dom or m.cod != cod:
                raise ShapeError(f"{name} has the wrong domain or codomain")
            w = additivity_witness(m.dom, m.cod, m.values)
            if w is not None:
                raise HomViolation(name, w)
        fails = _morphism_failures(s, t, self.f.values, self.u.values, self.p.values)
        # the first two equalities hold exactly when the last two do
        first_pair = fails[0] is None and fails[1] is None
        last_pair = fails[2] is None and fails[3] is None
        if first_pair != last_pair:
            raise InternalDefect("morphism equalities disagree pairwise")
        for label, w in zip(MORPHISM_EQUATIONS, fails):
            if w is not None:
                raise EquationViolation(label, w)

    def __eq__(self, other):
        if not isinstance(other, SplitExtMorphism):
            return NotImplemented
        return (self.source, self.target, self.f, self.u, self.p) == (
            other.source, other.target, other.f, other.u, other.p,
        )

    __hash__ = None


def _morphism_failures(s, t, f, u, p) -> list[Optional[dict]]:
    def first(mask, var):
        idx = np.flatnonzero(mask)
        return None if len(idx) == 0 else {var: int(idx[0])}

    return [
        first(p[s.kappa.values] != t.kappa.values[u], "x"),
        first(p[s.beta.values] != t.beta.values[f], "b"),
        first(t.lam.values[p] != u[s.lam.values], "a"),
        first(t.alpha.values[p] != f[s.alpha.values], "a"),
    ]


def validate_morphism(source: SplitExtension, target: SplitExtension, f, u, p) -> SplitExtMorphism:
    def coerce(m, dom, cod):
        if isinstance(m, Hom):
            return m
        if not isinstance(m, ZeroMap):
            m = ZeroMap(dom, cod, m)
        return Hom._trusted(m.dom, m.cod, m.values)

    return SplitExtMorphism(
        source,
        target,
        coerce(f, source.b, target.b),
        coerce(u, source.x, target.x),
        coerce(p, source.a, target.a),
    )


def identity_morphism(e: SplitExtension) -> SplitExtMorphism:
    return SplitExtMorphism(e, e, identity(e.b), identity(e.x), identity(e.a))


def compose_morphisms(g: SplitExtMorphism, m: SplitExtMorphism) -> SplitExtMorphism:
    """``g`` after ``m``, componentwise."""
    return SplitExtMorphism(m.source, g.target, g.f @ m.f, g.u @ m.u, g.p @ m.p)


def equivariance_witness(source: Action, target: Action, f: Hom, u: Hom) -> Optional[tuple[int, int]]:
    """First (b, x) with u(bx) != f(b)u(x)."""
    left = u.values[source.table]
    right = target.table[f.values[:, None], u.values[None, :]]
    bad = np.argwhere(left != right)
    return None if len(bad) == 0 else (int(bad[0][0]), int(bad[0][1]))


@dataclass(frozen=True, eq=False)
class ActionMorphism:
    source: Action
    target: Action
    f: Hom
    u: Hom

    def __post_init__(self):
        if self.f.dom != self.source.b or self.f.cod != self.target.b:
            raise ShapeError("f has the wrong domain or codomain")
        if self.u.dom != self.source.x or self.u.cod != self.target.x:
            raise ShapeError("u has the wrong domain or codomain")
        for name in ("f", "u"):
            m = getattr(self, name)
            w = additivity_witness(m.dom, m.cod, m.values)
            if w is not None:
                raise HomViolation(name, w)
        w = equivariance_witness(self.source, self.target, self.f, self.u)
        if w is not None:
            raise EquationViolation("equivariance", {"b": w[0], "x": w[1]})


def complete_morphism(source: SplitExtension, target: SplitExtension, f: Hom, u: Hom) -> Optional[SplitExtMorphism]:
    """The unique p with (f, u, p) a morphism, or None when u is not
    equivariant along f for the associated actions."""
    w = equivariance_witness(associated_action(source), associated_action(target), f, u)
    if w is not None:
        log.debug("no completion: equivariance fails at (b, x) = %s", w)
        return None
    # p = kappa' u lam + beta' f alpha, added pointwise in A'
    left = target.kappa.values[u.values[source.lam.values]]
    right = target.beta.values[f.values[source.alpha.values]]
    p = Hom._trusted(source.a, target.a, target.a.table[left, right])
    try:
        return SplitExtMorphism(source, target, f, u, p)
    except (HomViolation, EquationViolation) as exc:
        raise InternalDefect(f"completion of an equivariant pair fails: {exc}") from exc


def splext_to_act(m: SplitExtMorphism) -> ActionMorphism:
    return ActionMorphism(associated_action(m.source), associated_action(m.target), m.f, m.u)


def act_to_splext(m: ActionMorphism) -> SplitExtMorphism:
    """(f, u) goes to (f, u, p) between semidirect products, p(x, b) = (u(x), f(b))."""
    src, tgt = semidirect(m.source), semidirect(m.target)
    nb, nb2 = m.source.b.order, m.target.b.order
    idx = np.arange(src.total.order)
    p = m.u.values[idx // nb] * nb2 + m.f.values[idx % nb]
    return SplitExtMorphism(
        src.extension, tgt.extension, m.f, m.u, Hom._trusted(src.total, tgt.total, p)
    )


def comparison_morphisms(e: SplitExtension) -> tuple[SplitExtMorphism, SplitExtMorphism]:
    """(1, 1, phi): E -> semidirect form and (1, 1, psi) back."""
    phi, psi, d = canonical_iso(e)
    there = SplitExtMorphism(e, d.extension, identity(e.b), identity(e.x), phi)
    back = SplitExtMorphism(d.extension, e, identity(e.b), identity(e.x), psi)
    return there, back


def pullback(e: SplitExtension, f: Hom) -> tuple[SplitExtension, SplitExtMorphism]:
    """Pull ``e`` back along ``f: B' -> B``.

    The result is the semidirect extension of B' acting on X through f,
    with the morphism (f, 1, p) into ``e``, p(x, b') = kappa(x) + beta(f(b')).
    """
    if f.cod != e.b:
        raise ShapeError("f must land in the base of the extension")
    d = semidirect(restrict_action(associated_action(e), f))
    nb2 = f.dom.order
    idx = np.arange(d.total.order)
    p = e.a.table[e.kappa.values[idx // nb2], e.beta.values[f.values[idx % nb2]]]
    m = SplitExtMorphism(d.extension, e, f, identity(e.x), Hom._trusted(d.total, e.a, p))
    return d.extension, m


def is_set_pullback(m: SplitExtMorphism) -> bool:
    """a' -> (p(a'), alpha'(a')) is a bijection onto {(a, b') : alpha(a) = f(b')}."""
    e, top = m.target, m.source
    pairs = set(zip(m.p.values.tolist(), top.alpha.values.tolist()))
    if len(pairs) != top.a.order:
        return False
    expected = {
        (a, b2)
        for a in range(e.a.order)
        for b2 in range(top.b.order)
        if e.alpha.values[a] == m.f.values[b2]
    }
    return pairs == expected
