"""Split extensions of unitary magmas as validated seven-tuples.

A split extension ``(B, X, A, alpha, beta, kappa, lam)`` has homomorphisms
``alpha: A -> B``, ``beta: B -> A``, ``kappa: X -> A`` and a zero-preserving
map ``lam: A -> X`` satisfying the equalities listed in
:data:`magmakit.laws.EQUATIONS`.  ``lam`` is never assumed additive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import laws
from .core import (
    INDEX,
    Hom,
    Magma,
    ZeroMap,
    additivity_witness,
    generated_submagma,
    permute_magma,
)
from .errors import EquationViolation, HomViolation, ShapeError

MAP_NAMES = ("alpha", "beta", "kappa", "lam")


def _check_ends(name: str, m: ZeroMap, dom: Magma, cod: Magma):
    if m.dom != dom or m.cod != cod:
        raise ShapeError(f"{name} has the wrong domain or codomain")


@dataclass(frozen=True, eq=False)
class SplitExtension:
    b: Magma
    x: Magma
    a: Magma
    alpha: Hom
    beta: Hom
    kappa: Hom
    lam: ZeroMap

    def __post_init__(self):
        _check_ends("alpha", self.alpha, self.a, self.b)
        _check_ends("beta", self.beta, self.b, self.a)
        _check_ends("kappa", self.kappa, self.x, self.a)
        _check_ends("lam", self.lam, self.a, self.x)
        for name in ("alpha", "beta", "kappa"):
            m = getattr(self, name)
            w = additivity_witness(m.dom, m.cod, m.values)
            if w is not None:
                raise HomViolation(name, w)
            if not isinstance(m, Hom):
                object.__setattr__(self, name, Hom._trusted(m.dom, m.cod, m.values))
        bad = laws.split_extension_violation(
            self.b.table,
            self.x.table,
            self.a.table,
            self.alpha.values,
            self.beta.values,
            self.kappa.values,
            self.lam.values,
        )
        if bad is not None:
            raise EquationViolation(*bad)

    def maps(self) -> dict[str, np.ndarray]:
        return {k: getattr(self, k).values for k in MAP_NAMES}

    def __eq__(self, other):
        if not isinstance(other, SplitExtension):
            return NotImplemented
        return all(
            getattr(self, k) == getattr(other, k)
            for k in ("b", "x", "a", "alpha", "beta", "kappa", "lam")
        )

    def __hash__(self):
        return hash((self.a, self.alpha.values.tobytes(), self.kappa.values.tobytes()))

    def __repr__(self):
        return f"SplitExtension(|B|={self.b.order}, |X|={self.x.order}, |A|={self.a.order})"


def validate_split_extension(b: Magma, x: Magma, a: Magma, alpha, beta, kappa, lam) -> SplitExtension:
    """Build a :class:`SplitExtension`, accepting maps or raw value arrays.

    Raises ``HomViolation`` naming the first non-additive map among alpha,
    beta, kappa, then ``EquationViolation`` for the first failing equality.
    """

    def coerce(m, dom, cod):
        return m if isinstance(m, ZeroMap) else ZeroMap(dom, cod, m)

    return SplitExtension(
        b, x, a, coerce(alpha, a, b), coerce(beta, b, a), coerce(kappa, x, a), coerce(lam, a, x)
    )


def transport_extension(e: SplitExtension, sigma) -> tuple[SplitExtension, Hom]:
    """Relabel the middle object along a 0-fixing permutation ``sigma`` of A.

    Returns the transported extension and the isomorphism ``A -> A'``.
    """
    s = np.asarray(sigma, dtype=INDEX)
    inv = np.argsort(s)
    a2 = permute_magma(e.a, s)
    e2 = SplitExtension(
        e.b,
        e.x,
        a2,
        Hom._trusted(a2, e.b, e.alpha.values[inv]),
        Hom._trusted(e.b, a2, s[e.beta.values]),
        Hom._trusted(e.x, a2, s[e.kappa.values]),
        ZeroMap._trusted(a2, e.x, e.lam.values[inv]),
    )
    return e2, Hom._trusted(e.a, a2, s)


def random_permutation(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform 0-fixing permutation of ``range(n)``."""
    return np.concatenate([[0], 1 + rng.permutation(n - 1)]).astype(INDEX)


def scramble_extension(e: SplitExtension, rng: np.random.Generator) -> tuple[SplitExtension, Hom]:
    return transport_extension(e, random_permutation(e.a.order, rng))


# -- structural facts every split extension enjoys -------------------------


def pairing_is_bijective(e: SplitExtension) -> bool:
    """a -> (lam(a), alpha(a)) is a bijection onto X x B."""
    codes = e.lam.values * e.b.order + e.alpha.values
    return len(np.unique(codes)) == e.a.order == e.x.order * e.b.order


def kernel_matches(e: SplitExtension) -> bool:
    """kappa is injective with image exactly alpha^{-1}(0)."""
    image = set(e.kappa.values.tolist())
    kernel = set(np.flatnonzero(e.alpha.values == 0).tolist())
    return e.kappa.is_injective() and image == kernel


def jointly_generate(e: SplitExtension) -> bool:
    """No proper submagma of A contains both kappa(X) and beta(B)."""
    gens = set(e.kappa.values.tolist()) | set(e.beta.values.tolist())
    return len(generated_submagma(e.a, gens)) == e.a.order


def kernel_only_extension(m: Magma) -> SplitExtension:
    """``m`` as a split extension of the trivial magma with kernel ``m``:
    (0, m, m, 0, 0, 1, 1)."""
    from .core import identity, trivial_magma, zero_map

    t = trivial_magma()
    ident = identity(m)
    return SplitExtension(t, m, m, zero_map(m, t), zero_map(t, m), ident, ident)
