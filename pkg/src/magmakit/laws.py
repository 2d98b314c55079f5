"""Vectorised checks of the split-extension equalities on raw index arrays.

These kernels sit underneath the typed API and are shared by validation,
composition and the exhaustive sweeps.  They work on a batch: tables have
shape ``(K, n, n)`` and maps ``(K, n)``, and a single structure is simply a
batch of one.  ``*_ok`` kernels return a boolean per batch member; the
``*_violation`` functions work on one instance and return ``None`` or the
first failing instance, scanning variables in the order named in the
witness.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

# one label per defining equality, in validation order
EQUATIONS = (
    "retraction",  # lambda kappa = 1, alpha beta = 1
    "zero",  # lambda beta = 0, alpha kappa = 0
    "decomposition",  # kappa lambda(a) + beta alpha(a) = a
    "recovery",  # lambda(kappa(x) + beta(b)) = x
    "assoc_left",  # kappa(x) + (beta(b) + a) = (kappa(x) + beta(b)) + a
    "assoc_mid",  # kappa(x) + (a + beta(b)) = (kappa(x) + a) + beta(b)
    "assoc_right",  # a + (kappa(x) + beta(b)) = (a + kappa(x)) + beta(b)
)

Violation = Optional[tuple[str, dict]]


def first_true(mask: np.ndarray) -> Optional[tuple[int, ...]]:
    """Row-major first index where ``mask`` holds."""
    if not mask.any():
        return None
    return tuple(int(i) for i in np.unravel_index(int(np.argmax(mask)), mask.shape))


def batch(arr, k: int) -> np.ndarray:
    """Give a shared array a leading batch axis of length ``k``."""
    arr = np.asarray(arr)
    return np.broadcast_to(arr, (k,) + arr.shape)


def take(arr: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """Per-member gather: ``out[k, ...] = arr[k].ravel()[idx[k, ...]]``."""
    k = arr.shape[0]
    if k == 1:
        return arr.reshape(-1)[idx]
    size = arr[0].size
    off = (np.arange(k) * size).reshape((k,) + (1,) * (idx.ndim - 1))
    return np.ascontiguousarray(arr).reshape(-1)[idx + off]


def _all(mask: np.ndarray) -> np.ndarray:
    return mask.reshape(mask.shape[0], -1).all(axis=1)


def additivity_ok(dom: np.ndarray, cod: np.ndarray, values: np.ndarray) -> np.ndarray:
    """values(a + a') == values(a) + values(a') for every member."""
    m = cod.shape[1]
    lhs = take(values, dom)
    rhs = take(cod, values[:, :, None] * m + values[:, None, :])
    return _all(lhs == rhs)


def equation_flags(
    nb: int,
    nx: int,
    A: np.ndarray,
    alpha: np.ndarray,
    beta: np.ndarray,
    kappa: np.ndarray,
    lam: np.ndarray,
    labels: tuple[str, ...] = EQUATIONS,
) -> dict[str, np.ndarray]:
    """Per-member truth of each requested equality, keyed by label."""
    n = A.shape[1]
    ar_n, ar_x, ar_b = np.arange(n), np.arange(nx), np.arange(nb)
    out = {}
    kb = take(A, kappa[:, :, None] * n + beta[:, None, :])  # kappa(x) + beta(b)
    if "retraction" in labels:
        out["retraction"] = _all(take(lam, kappa) == ar_x) & _all(take(alpha, beta) == ar_b)
    if "zero" in labels:
        out["zero"] = _all(take(lam, beta) == 0) & _all(take(alpha, kappa) == 0)
    if "decomposition" in labels:
        out["decomposition"] = _all(take(A, take(kappa, lam) * n + take(beta, alpha)) == ar_n)
    if "recovery" in labels:
        out["recovery"] = _all(take(lam, kb) == ar_x[:, None])
    if "assoc_left" in labels:
        b_a = take(A, beta[:, :, None] * n + ar_n)
        left = take(A, kappa[:, :, None, None] * n + b_a[:, None, :, :])
        right = take(A, kb[:, :, :, None] * n + ar_n)
        out["assoc_left"] = _all(left == right)
    if "assoc_mid" in labels:
        a_b = take(A, ar_n[:, None] * n + beta[:, None, :])
        k_a = take(A, kappa[:, :, None] * n + ar_n)
        left = take(A, kappa[:, :, None, None] * n + a_b[:, None, :, :])
        right = take(A, k_a[:, :, :, None] * n + beta[:, None, None, :])
        out["assoc_mid"] = _all(left == right)
    if "assoc_right" in labels:
        a_k = take(A, ar_n[:, None] * n + kappa[:, None, :])
        left = take(A, ar_n[:, None, None] * n + kb[:, None, :, :])
        right = take(A, a_k[:, :, :, None] * n + beta[:, None, None, :])
        out["assoc_right"] = _all(left == right)
    return out


def equations_ok(
    nb: int,
    nx: int,
    A: np.ndarray,
    alpha: np.ndarray,
    beta: np.ndarray,
    kappa: np.ndarray,
    lam: np.ndarray,
    skip: tuple[str, ...] = (),
) -> np.ndarray:
    """Per-member truth of every equality in ``EQUATIONS`` not in ``skip``."""
    labels = tuple(e for e in EQUATIONS if e not in skip)
    ok = np.ones(A.shape[0], dtype=bool)
    for flag in equation_flags(nb, nx, A, alpha, beta, kappa, lam, labels).values():
        ok &= flag
    return ok


def _named(label: str, names: str, idx) -> tuple[str, dict]:
    return label, dict(zip(names, idx))


def split_extension_violation(
    B: np.ndarray,
    X: np.ndarray,
    A: np.ndarray,
    alpha: np.ndarray,
    beta: np.ndarray,
    kappa: np.ndarray,
    lam: np.ndarray,
    skip: tuple[str, ...] = (),
) -> Violation:
    """First failing equality for a single instance, or None.

    Homomorphism conditions on alpha, beta, kappa are not checked here.
    """
    if equations_ok(B.shape[0], X.shape[0], A[None], alpha[None], beta[None],
                    kappa[None], lam[None], skip)[0]:
        return None
    n, nb, nx = A.shape[0], B.shape[0], X.shape[0]
    kb = A[kappa[:, None], beta[None, :]]
    for label in EQUATIONS:
        if label in skip:
            continue
        if label == "retraction":
            w = first_true(lam[kappa] != np.arange(nx))
            if w:
                return _named(label, "x", w)
            w = first_true(alpha[beta] != np.arange(nb))
            if w:
                return _named(label, "b", w)
        elif label == "zero":
            w = first_true(lam[beta] != 0)
            if w:
                return _named(label, "b", w)
            w = first_true(alpha[kappa] != 0)
            if w:
                return _named(label, "x", w)
        elif label == "decomposition":
            w = first_true(A[kappa[lam], beta[alpha]] != np.arange(n))
            if w:
                return _named(label, "a", w)
        elif label == "recovery":
            w = first_true(lam[kb] != np.arange(nx)[:, None])
            if w:
                return _named(label, "xb", w)
        elif label == "assoc_left":
            left = A[kappa[:, None, None], A[beta][None, :, :]]
            right = A[kb[:, :, None], np.arange(n)[None, None, :]]
            w = first_true(left != right)
            if w:
                return _named(label, "xba", w)
        elif label == "assoc_mid":
            left = A[kappa[:, None, None], A[:, beta][None, :, :]]
            right = A[A[kappa][:, :, None], beta[None, None, :]]
            w = first_true(left != right)
            if w:
                return _named(label, "xab", w)
        elif label == "assoc_right":
            left = A[np.arange(n)[:, None, None], kb[None, :, :]]
            right = A[A[:, kappa][:, :, None], beta[None, None, :]]
            w = first_true(left != right)
            if w:
                return _named(label, "axb", w)
    raise AssertionError("batch kernel and witness search disagree")


def semidirect_tables(B: np.ndarray, X: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Tables of X x| B on pair indices ``x * |B| + b`` for a batch of actions
    ``h`` of shape (K, |B|, |X|):  (x, b) + (x', b') = (x + b x', b + b')."""
    nb, nx = B.shape[0], X.shape[0]
    idx = np.arange(nx * nb)
    xs, bs = idx // nb, idx % nb
    bx = h[:, bs[:, None], xs[None, :]]  # b x' for left operand (x, b), right (x', b')
    new_x = X[xs[None, :, None], bx]
    new_b = B[bs[:, None], bs[None, :]]
    return new_x * nb + new_b[None]


def firmness_ok(B: np.ndarray, h: np.ndarray) -> np.ndarray:
    """b'(bx) == (b' + b)x for every member of a batch of actions (K, nb, nx)."""
    nb, nx = h.shape[1], h.shape[2]
    left = take(h, np.arange(nb)[:, None, None] * nx + h[:, None, :, :])
    right = take(h, B[None, :, :, None] * nx + np.arange(nx))
    return _all(left == right)


def distributivity_ok(X: np.ndarray, h: np.ndarray) -> np.ndarray:
    """b(x + x') == bx + bx' for every member of a batch of actions."""
    nb, nx = h.shape[1], h.shape[2]
    left = take(h, np.arange(nb)[:, None, None] * nx + X[None, None, :, :])
    right = X.ravel()[h[:, :, :, None] * nx + h[:, :, None, :]]
    return _all(left == right)


def firmness_violation(B: np.ndarray, h: np.ndarray):
    """First (b', b, x) with b'(bx) != (b' + b)x."""
    left = h[np.arange(B.shape[0])[:, None, None], h[None, :, :]]
    right = h[B[:, :, None], np.arange(h.shape[1])[None, None, :]]
    return first_true(left != right)


def distributivity_violation(X: np.ndarray, h: np.ndarray):
    """First (b, x, x') with b(x + x') != bx + bx'."""
    nb = h.shape[0]
    left = h[np.arange(nb)[:, None, None], X[None, :, :]]
    right = X[h[:, :, None], h[:, None, :]]
    return first_true(left != right)


def propagate_forced(dom: np.ndarray, cod: np.ndarray, vals: np.ndarray) -> np.ndarray:
    """Extend partial maps (-1 = unknown) by everything additivity forces.

    Whenever a and a' have known images and a + a' does not, it receives
    vals[a] + vals[a'].  Conflicting forced values are not detected here; a
    final additivity check catches them.
    """
    vals = np.array(vals, copy=True)
    dom = np.ascontiguousarray(np.broadcast_to(dom, (vals.shape[0],) + dom.shape[-2:]))
    m = cod.shape[1]
    while True:
        known = vals >= 0
        if known.all():
            return vals
        safe = np.where(known, vals, 0)
        implied = take(cod, safe[:, :, None] * m + safe[:, None, :])
        sel = known[:, :, None] & known[:, None, :] & ~take(known, dom)
        if not sel.any():
            return vals
        kk, i, j = np.nonzero(sel)
        vals[kk, dom[kk, i, j]] = implied[kk, i, j]
