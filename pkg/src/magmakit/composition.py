"""Composing an outer extension F = (D, Y, B, gamma, delta, mu, nu) with an
inner one E = (B, X, A, alpha, beta, kappa, lam) into
G = (D, Z, A, gamma alpha, beta delta, mu', nu').

Z is the preimage under alpha of mu(Y), mu' its inclusion into A, and
nu'(a) = kappa lam(a) + beta mu nu alpha(a).  The candidate G always satisfies
every defining equality except possibly ``assoc_left``; whether it does is
decided three ways, which must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import laws
from .actions import associated_action, is_distributive, is_firm, restrict_action, semidirect
from .core import INDEX, Hom, Magma, ZeroMap, submagma
from .errors import (
    InternalDefect,
    MiddleMismatch,
    NotClosed,
    NotComposable,
    PreconditionViolation,
)
from .extensions import SplitExtension
from .morphisms import canonical_iso


@dataclass(frozen=True, eq=False)
class CompositionDiagram:
    outer: SplitExtension  # F
    inner: SplitExtension  # E
    z: Magma
    mu_prime: Hom  # Z -> A
    alpha_prime: Hom  # Z -> Y
    beta_prime: Hom  # Y -> Z
    nu_prime: ZeroMap  # A -> Z

    def candidate(self) -> tuple:
        """The raw seven-tuple (D, Z, A, gamma alpha, beta delta, mu', nu')."""
        f, e = self.outer, self.inner
        return (
            f.b,
            self.z,
            e.a,
            f.alpha.values[e.alpha.values],
            e.beta.values[f.beta.values],
            self.mu_prime.values,
            self.nu_prime.values,
        )

    def candidate_violation(self, skip: tuple[str, ...] = ()) -> laws.Violation:
        d, z, a, ga, bd, mp, np_ = self.candidate()
        return laws.split_extension_violation(d.table, z.table, a.table, ga, bd, mp, np_, skip)


def _check_middle(outer: SplitExtension, inner: SplitExtension):
    if inner.b != outer.a:
        raise MiddleMismatch("the inner base and the outer total magma differ")


def build_composition_diagram(outer: SplitExtension, inner: SplitExtension) -> CompositionDiagram:
    _check_middle(outer, inner)
    e, f = inner, outer
    A = e.a.table
    alpha, beta, kappa, lam = e.alpha.values, e.beta.values, e.kappa.values, e.lam.values
    mu, nu = f.kappa.values, f.lam.values
    # mu is injective because nu mu = 1, so it inverts on its image
    mu_inv = np.full(f.a.order, -1, dtype=INDEX)
    mu_inv[mu] = np.arange(f.x.order)
    try:
        z, mu_p = submagma(e.a, np.flatnonzero(mu_inv[alpha] >= 0))
    except NotClosed as exc:
        raise InternalDefect(f"preimage of mu(Y) is not closed: {exc}") from exc
    in_z = np.full(e.a.order, -1, dtype=INDEX)
    in_z[mu_p.values] = np.arange(z.order)
    alpha_p = mu_inv[alpha[mu_p.values]]
    beta_p = in_z[beta[mu]]
    nu_p = in_z[A[kappa[lam], beta[mu[nu[alpha]]]]]
    if (beta_p < 0).any() or (nu_p < 0).any():
        raise InternalDefect("beta mu or nu' leaves Z")
    diag = CompositionDiagram(
        f,
        e,
        z,
        mu_p,
        Hom._trusted(z, f.x, alpha_p),
        Hom._trusted(f.x, z, beta_p),
        ZeroMap._trusted(e.a, z, nu_p),
    )
    # the squares mu alpha' = alpha mu' and mu' beta' = beta mu commute by construction
    if not (
        np.array_equal(mu[alpha_p], alpha[mu_p.values])
        and np.array_equal(mu_p.values[beta_p], beta[mu])
    ):
        raise InternalDefect("composition diagram squares do not commute")
    bad = diag.candidate_violation(skip=("assoc_left",))
    if bad is not None:
        raise InternalDefect(f"candidate composite fails {bad[0]!r} at {bad[1]}")
    return diag


def left_assoc_witness(diag: CompositionDiagram) -> Optional[tuple[int, int, int]]:
    """First (z, d, a) with mu'(z) + (beta delta(d) + a) != (mu'(z) + beta delta(d)) + a."""
    A = diag.inner.a.table
    mp = diag.mu_prime.values
    bd = diag.inner.beta.values[diag.outer.beta.values]
    n = A.shape[0]
    left = A[mp[:, None, None], A[bd][None, :, :]]
    right = A[A[mp[:, None], bd[None, :]][:, :, None], np.arange(n)[None, None, :]]
    return laws.first_true(left != right)


def action_witness(outer: SplitExtension, inner: SplitExtension) -> Optional[tuple[int, int, int]]:
    """First (y, d, x) with mu(y)(delta(d)x) != (mu(y) + delta(d))x."""
    h = associated_action(inner).table
    B = inner.b.table
    mu, delta = outer.kappa.values, outer.beta.values
    left = h[mu[:, None, None], h[delta][None, :, :]]
    right = h[B[mu[:, None], delta[None, :]][:, :, None], np.arange(h.shape[1])[None, None, :]]
    return laws.first_true(left != right)


@dataclass(frozen=True, eq=False)
class Composability:
    composable: bool
    by_extension: bool
    by_left_assoc: bool
    by_action: bool
    witness: Optional[tuple[int, int, int]]  # (y, d, x)
    assoc_witness: Optional[tuple[int, int, int]]  # (z, d, a)
    violation: laws.Violation
    diagram: CompositionDiagram

    def to_dict(self) -> dict:
        d = {
            "composable": self.composable,
            "criteria": {
                "extension": self.by_extension,
                "left_assoc": self.by_left_assoc,
                "action": self.by_action,
            },
        }
        if self.witness is not None:
            d["witness"] = list(self.witness)
        return d


def is_composable(outer: SplitExtension, inner: SplitExtension) -> Composability:
    diag = build_composition_diagram(outer, inner)
    violation = diag.candidate_violation()
    aw = left_assoc_witness(diag)
    w = action_witness(outer, inner)
    verdicts = (violation is None, aw is None, w is None)
    if len(set(verdicts)) != 1:
        raise InternalDefect(f"composability criteria disagree: {verdicts}")
    if violation is not None and violation[0] != "assoc_left":
        raise InternalDefect(f"candidate composite fails {violation[0]!r}")
    return Composability(verdicts[0], *verdicts, w, aw, violation, diag)


def composite_of(diag: CompositionDiagram) -> SplitExtension:
    d, z, a, ga, bd, mp, np_ = diag.candidate()
    return SplitExtension(
        d,
        z,
        a,
        Hom._trusted(a, d, ga),
        Hom._trusted(d, a, bd),
        diag.mu_prime,
        diag.nu_prime,
    )


def compose(outer: SplitExtension, inner: SplitExtension) -> SplitExtension:
    """G = F E, or ``NotComposable`` with the first failing (y, d, x)."""
    c = is_composable(outer, inner)
    if not c.composable:
        raise NotComposable(c.witness)
    return composite_of(c.diagram)


@dataclass(frozen=True)
class FirmClosureReport:
    inner_firm: bool
    outer_firm: bool
    composable: bool
    composite_firm: Optional[bool]


def check_firm_closure(outer: SplitExtension, inner: SplitExtension) -> FirmClosureReport:
    inner_firm = is_firm(associated_action(inner))
    outer_firm = is_firm(associated_action(outer))
    c = is_composable(outer, inner)
    composite_firm = None
    if c.composable:
        composite_firm = is_firm(associated_action(composite_of(c.diagram)))
    if inner_firm and not c.composable:
        raise InternalDefect(f"firm inner extension does not compose, witness {c.witness}")
    if inner_firm and outer_firm and not composite_firm:
        raise InternalDefect("composite of firm extensions is not firm")
    return FirmClosureReport(inner_firm, outer_firm, c.composable, composite_firm)


def normal_form_pair(outer: SplitExtension, inner: SplitExtension) -> tuple[SplitExtension, SplitExtension]:
    """Replace F by its semidirect form Y x| D and E by the semidirect form
    of its action transported along psi: Y x| D -> B."""
    _check_middle(outer, inner)
    psi = canonical_iso(outer).psi
    f_norm = semidirect(associated_action(outer)).extension
    e_norm = semidirect(restrict_action(associated_action(inner), psi)).extension
    return f_norm, e_norm


def normal_form_witness(outer: SplitExtension, inner: SplitExtension) -> Optional[tuple[int, int, int]]:
    """On semidirect normal forms, the first (y, d, x) with
    (y, 0)((0, d)x) != (y, d)x."""
    f_norm, e_norm = normal_form_pair(outer, inner)
    h = associated_action(e_norm).table
    nd = f_norm.b.order
    ys, ds = np.arange(f_norm.x.order), np.arange(nd)
    left = h[(ys * nd)[:, None, None], h[ds][None, :, :]]
    right = h[(ys[:, None] * nd + ds[None, :])[:, :, None], np.arange(h.shape[1])[None, None, :]]
    return laws.first_true(left != right)


@dataclass(frozen=True)
class DistributiveClosureReport:
    composite_firm: bool
    composite_distributive: bool
    normal_form_distributive: bool


def check_distributive_closure(outer: SplitExtension, inner: SplitExtension) -> DistributiveClosureReport:
    """Both extensions must be firm with distributive actions; then so is the composite."""
    _check_middle(outer, inner)
    for name, e in (("outer", outer), ("inner", inner)):
        h = associated_action(e)
        if not (is_firm(h) and is_distributive(h)):
            raise PreconditionViolation(f"{name} extension is not firm and distributive")
    g = compose(outer, inner)
    hg = associated_action(g)
    f_norm, e_norm = normal_form_pair(outer, inner)
    g_norm = compose(f_norm, e_norm)
    rep = DistributiveClosureReport(
        is_firm(hg), is_distributive(hg), is_distributive(associated_action(g_norm))
    )
    if not (rep.composite_firm and rep.composite_distributive and rep.normal_form_distributive):
        raise InternalDefect(f"composite of firm distributive extensions: {rep}")
    return rep
