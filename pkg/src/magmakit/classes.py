"""Which split epimorphisms underlie split extensions, and how nice ones.

A split epimorphism ``alpha: A -> B`` with section ``beta`` is classified as

* ``NOT_IN_E``: no split extension has this (alpha, beta);
* ``E``: some split extension does;
* ``E_PRIME``: that extension is firm, b'(bx) = (b' + b)x;
* ``E_DOUBLE_PRIME``: firm and b(x + x') = bx + bx'.

Also here: the three hypothesis sets for the split short five lemma.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional

import numpy as np

from .actions import (
    Action,
    SemidirectDiagram,
    associated_action,
    is_distributive,
    is_firm,
    semidirect,
    trivial_action,
)
from .core import (
    Hom,
    Magma,
    ZeroMap,
    additivity_witness,
    is_associative,
    is_commutative,
    submagma,
)
from .errors import (
    EquationViolation,
    HomViolation,
    InternalDefect,
    NotClosed,
    NotSplit,
    PreconditionViolation,
    ShapeError,
)
from .extensions import SplitExtension


class SplitEpiClass(IntEnum):
    NOT_IN_E = 0
    E = 1
    E_PRIME = 2
    E_DOUBLE_PRIME = 3

    @property
    def label(self) -> str:
        return {0: "NotInE", 1: "E", 2: "E'", 3: "E''"}[int(self)]


def class_of_action(h: Action) -> SplitEpiClass:
    if not is_firm(h):
        return SplitEpiClass.E
    if not is_distributive(h):
        return SplitEpiClass.E_PRIME
    return SplitEpiClass.E_DOUBLE_PRIME


def class_of_extension(e: SplitExtension) -> SplitEpiClass:
    return class_of_action(associated_action(e))


@dataclass(frozen=True)
class Classification:
    cls: SplitEpiClass
    extension: Optional[SplitExtension] = None
    reason: str = ""


def _as_hom(name: str, m, dom: Magma, cod: Magma) -> Hom:
    if not isinstance(m, ZeroMap):
        m = ZeroMap(dom, cod, m)
    if m.dom != dom or m.cod != cod:
        raise ShapeError(f"{name} has the wrong domain or codomain")
    w = additivity_witness(dom, cod, m.values)
    if w is not None:
        raise HomViolation(name, w)
    return Hom._trusted(dom, cod, m.values)


def classify_split_epi(a: Magma, b: Magma, alpha, beta) -> Classification:
    """Classify ``alpha: a -> b`` with the given section ``beta``.

    The kernel of alpha, with its inclusion, is the only candidate for the
    kernel part; the retraction is then forced by the unique decomposition
    a = kappa(x) + beta(alpha(a)), if that decomposition exists.
    """
    alpha = _as_hom("alpha", alpha, a, b)
    beta = _as_hom("beta", beta, b, a)
    bad = np.flatnonzero(alpha.values[beta.values] != np.arange(b.order))
    if len(bad):
        raise NotSplit(bad[0])
    try:
        x, kappa = submagma(a, np.flatnonzero(alpha.values == 0))
    except NotClosed as exc:
        raise InternalDefect(f"kernel of a homomorphism is not closed: {exc}") from exc
    sums = a.table[kappa.values[:, None], beta.values[alpha.values][None, :]]
    matches = sums == np.arange(a.order)[None, :]
    counts = matches.sum(axis=0)
    if (counts != 1).any():
        at = int(np.flatnonzero(counts != 1)[0])
        how = "no" if counts[at] == 0 else "more than one"
        return Classification(SplitEpiClass.NOT_IN_E, reason=f"{how} decomposition of {at}")
    lam = ZeroMap._trusted(a, x, np.argmax(matches, axis=0))
    try:
        e = SplitExtension(b, x, a, alpha, beta, kappa, lam)
    except EquationViolation as exc:
        return Classification(SplitEpiClass.NOT_IN_E, reason=str(exc))
    return Classification(class_of_extension(e), e)


def classify_split_epi_any(a: Magma, b: Magma, alpha) -> tuple[Classification, Optional[Hom]]:
    """Best class over every section of ``alpha``; ties go to the first
    section in lexicographic order."""
    from .enumeration import enumerate_homs

    alpha = _as_hom("alpha", alpha, a, b)
    best, best_beta = Classification(SplitEpiClass.NOT_IN_E, reason="no section"), None
    for beta in enumerate_homs(b, a):
        if not np.array_equal(alpha.values[beta.values], np.arange(b.order)):
            continue
        c = classify_split_epi(a, b, alpha, beta)
        if best_beta is None or c.cls > best.cls:
            best, best_beta = c, beta
        if best.cls == SplitEpiClass.E_DOUBLE_PRIME:
            break
    return best, best_beta


# -- split short five lemma ------------------------------------------------


@dataclass(frozen=True)
class ShortFiveReport:
    case: str
    p: Hom
    is_hom: bool
    injective: bool
    surjective: bool
    isomorphism: bool

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "p": self.p.values.tolist(),
            "is_hom": self.is_hom,
            "injective": self.injective,
            "surjective": self.surjective,
            "isomorphism": self.isomorphism,
        }


def _report(case: str, p: Hom) -> ShortFiveReport:
    injective = p.is_injective()
    surjective = len(np.unique(p.values)) == p.cod.order
    iso = False
    if injective and surjective:
        inv = np.argsort(p.values)
        iso = additivity_witness(p.cod, p.dom, inv) is None
    return ShortFiveReport(case, p, True, injective, surjective, iso)


def _same_ends(top: SemidirectDiagram, bottom: SemidirectDiagram):
    if top.action.b != bottom.action.b or top.action.x != bottom.action.x:
        raise PreconditionViolation("both rows must have the same B and X")


def short_five_projections(top: SemidirectDiagram, bottom: SemidirectDiagram, p: Hom) -> ShortFiveReport:
    """Case (a): p commutes with both projections."""
    _same_ends(top, bottom)
    if additivity_witness(top.total, bottom.total, p.values) is not None:
        raise PreconditionViolation("p is not a homomorphism")
    if not (
        np.array_equal(bottom.proj1.values[p.values], top.proj1.values)
        and np.array_equal(bottom.proj2.values[p.values], top.proj2.values)
    ):
        raise PreconditionViolation("p does not commute with the projections")
    return _report("a", Hom._trusted(top.total, bottom.total, p.values))


def short_five_injections(top: SemidirectDiagram, bottom: SemidirectDiagram, p: Hom) -> ShortFiveReport:
    """Case (b): p commutes with both injections."""
    _same_ends(top, bottom)
    if additivity_witness(top.total, bottom.total, p.values) is not None:
        raise PreconditionViolation("p is not a homomorphism")
    if not (
        np.array_equal(p.values[top.inj1.values], bottom.inj1.values)
        and np.array_equal(p.values[top.inj2.values], bottom.inj2.values)
    ):
        raise PreconditionViolation("p does not commute with the injections")
    return _report("b", Hom._trusted(top.total, bottom.total, p.values))


def short_five_mixed(x: Magma, b: Magma, s: Hom) -> ShortFiveReport:
    """Case (c): X a commutative monoid, both actions trivial, p(x, b) = (x + s(b), b).

    p always commutes with the first injection and the second projection;
    whether it is bijective depends on X.
    """
    if not (is_associative(x) and is_commutative(x)):
        raise PreconditionViolation("X must be a commutative monoid")
    if s.dom != b or s.cod != x or additivity_witness(b, x, s.values) is not None:
        raise PreconditionViolation("s must be a homomorphism B -> X")
    d = semidirect(trivial_action(b, x))
    nb = b.order
    idx = np.arange(d.total.order)
    xs, bs = idx // nb, idx % nb
    pv = x.table[xs, s.values[bs]] * nb + bs
    if additivity_witness(d.total, d.total, pv) is not None:
        raise InternalDefect("p(x, b) = (x + s(b), b) is not a homomorphism")
    if not (
        np.array_equal(pv[d.inj1.values], d.inj1.values)
        and np.array_equal(d.proj2.values[pv], d.proj2.values)
    ):
        raise InternalDefect("p fails the hypotheses of the mixed case")
    return _report("c", Hom._trusted(d.total, d.total, pv))


def short_five_check(case: str, **data) -> ShortFiveReport:
    """Dispatch on ``case`` in {"a", "b", "c"}.

    Cases a and b take ``top``, ``bottom`` (semidirect diagrams) and ``p``;
    case c takes ``x``, ``b`` and ``s``.
    """
    if case == "a":
        rep = short_five_projections(data["top"], data["bottom"], data["p"])
    elif case == "b":
        rep = short_five_injections(data["top"], data["bottom"], data["p"])
    elif case == "c":
        return short_five_mixed(data["x"], data["b"], data["s"])
    else:
        raise ValueError(f"unknown case {case!r}")
    if not rep.isomorphism:
        raise InternalDefect(f"case {case}: p satisfies the hypotheses but is not an isomorphism")
    return rep
