"""Canonical JSON for magmas, maps, actions, split extensions and morphisms.

Every payload is integers, strings and booleans only, written with sorted
keys, so re-serialising a parsed document reproduces it byte for byte.
Input kind is recognised from the exact set of top-level keys.
"""

from __future__ import annotations

import json
from typing import Any, Optional

import numpy as np

from .actions import Action
from .core import STANDARD, Magma, ZeroMap, validate_magma
from .errors import MagmaKitError
from .extensions import SplitExtension, validate_split_extension
from .morphisms import SplitExtMorphism, validate_morphism


class MalformedInput(MagmaKitError):
    """The document cannot be read as any known kind."""


KINDS = {
    frozenset({"order", "table"}): "magma",
    frozenset({"dom", "cod", "values"}): "map",
    frozenset({"B", "X", "table"}): "action",
    frozenset({"B", "X", "A", "alpha", "beta", "kappa", "lambda"}): "splitext",
    frozenset({"source", "target", "f", "u", "p"}): "morphism",
    frozenset({"outer", "inner"}): "pair",
    frozenset({"A", "B", "alpha", "beta"}): "split_epi",
    frozenset({"A", "B", "alpha"}): "split_epi",
    frozenset({"ext", "f"}): "pullback",
}


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not JSON: {exc}") from None


def detect_kind(doc: Any) -> str:
    if not isinstance(doc, dict):
        raise MalformedInput("top level must be an object")
    kind = KINDS.get(frozenset(doc) - {"name"})
    if kind is None:
        raise MalformedInput(f"unrecognised fields {sorted(doc)}")
    return kind


def _ints(value, what: str, depth: int) -> list:
    def ok(v, d):
        if d == 0:
            return isinstance(v, int) and not isinstance(v, bool)
        return isinstance(v, list) and all(ok(u, d - 1) for u in v)

    if not ok(value, depth):
        raise MalformedInput(f"{what} must be a {'nested ' * (depth - 1)}list of integers")
    return value


# -- magmas ----------------------------------------------------------------


def magma_to_json(m: Magma) -> dict:
    d = {"order": m.order, "table": m.table.tolist()}
    if m.name:
        d["name"] = m.name
    return d


class Resolver:
    """Reads magmas, resolving string references against the standard
    magmas and against named magmas appearing in the same document."""

    def __init__(self, doc: Any = None):
        self.named: dict[str, Magma] = {}
        if doc is not None:
            self._collect(doc)

    def _collect(self, node):
        if isinstance(node, dict):
            if set(node) - {"name"} == {"order", "table"} and isinstance(node.get("name"), str):
                self.named.setdefault(node["name"], self.magma(node))
            for v in node.values():
                self._collect(v)
        elif isinstance(node, list):
            for v in node:
                self._collect(v)

    def magma(self, node) -> Magma:
        if isinstance(node, str):
            if node in self.named:
                return self.named[node]
            if node in STANDARD:
                return STANDARD[node]()
            raise MalformedInput(f"unknown magma reference {node!r}")
        if not isinstance(node, dict) or set(node) - {"name"} != {"order", "table"}:
            raise MalformedInput("a magma needs exactly 'order' and 'table'")
        order = node["order"]
        if not isinstance(order, int) or isinstance(order, bool):
            raise MalformedInput("order must be an integer")
        return validate_magma(order, _ints(node["table"], "table", 2), node.get("name"))


def _values(node, what: str) -> np.ndarray:
    return np.array(_ints(node, what, 1), dtype=np.intp)


# -- maps and actions ------------------------------------------------------


def map_to_json(m: ZeroMap) -> dict:
    return {"dom": magma_to_json(m.dom), "cod": magma_to_json(m.cod), "values": m.values.tolist()}


def map_from_json(doc: dict, r: Optional[Resolver] = None) -> ZeroMap:
    r = r or Resolver(doc)
    return ZeroMap(r.magma(doc["dom"]), r.magma(doc["cod"]), _values(doc["values"], "values"))


def action_to_json(a: Action) -> dict:
    return {"B": magma_to_json(a.b), "X": magma_to_json(a.x), "table": a.table.tolist()}


def action_from_json(doc: dict, r: Optional[Resolver] = None) -> Action:
    r = r or Resolver(doc)
    return Action(r.magma(doc["B"]), r.magma(doc["X"]), _ints(doc["table"], "table", 2))


# -- extensions and morphisms ----------------------------------------------


def splitext_to_json(e: SplitExtension) -> dict:
    return {
        "B": magma_to_json(e.b),
        "X": magma_to_json(e.x),
        "A": magma_to_json(e.a),
        "alpha": e.alpha.values.tolist(),
        "beta": e.beta.values.tolist(),
        "kappa": e.kappa.values.tolist(),
        "lambda": e.lam.values.tolist(),
    }


def splitext_from_json(doc: dict, r: Optional[Resolver] = None) -> SplitExtension:
    r = r or Resolver(doc)
    if not isinstance(doc, dict) or frozenset(doc) - {"name"} != frozenset(
        {"B", "X", "A", "alpha", "beta", "kappa", "lambda"}
    ):
        raise MalformedInput("a split extension needs B, X, A, alpha, beta, kappa, lambda")
    return validate_split_extension(
        r.magma(doc["B"]),
        r.magma(doc["X"]),
        r.magma(doc["A"]),
        _values(doc["alpha"], "alpha"),
        _values(doc["beta"], "beta"),
        _values(doc["kappa"], "kappa"),
        _values(doc["lambda"], "lambda"),
    )


def morphism_to_json(m: SplitExtMorphism) -> dict:
    return {
        "source": splitext_to_json(m.source),
        "target": splitext_to_json(m.target),
        "f": m.f.values.tolist(),
        "u": m.u.values.tolist(),
        "p": m.p.values.tolist(),
    }


def morphism_from_json(doc: dict, r: Optional[Resolver] = None) -> SplitExtMorphism:
    r = r or Resolver(doc)
    s = splitext_from_json(doc["source"], r)
    t = splitext_from_json(doc["target"], r)
    maps = []
    for name, dom, cod in (("f", s.b, t.b), ("u", s.x, t.x), ("p", s.a, t.a)):
        maps.append(ZeroMap(dom, cod, _values(doc[name], name)))
    return validate_morphism(s, t, *maps)


def load_any(doc: Any):
    """Parse and validate a document of any single-object kind; returns (kind, value)."""
    kind = detect_kind(doc)
    r = Resolver(doc)
    if kind == "magma":
        return kind, r.magma(doc)
    if kind == "map":
        return kind, map_from_json(doc, r)
    if kind == "action":
        return kind, action_from_json(doc, r)
    if kind == "splitext":
        return kind, splitext_from_json(doc, r)
    if kind == "morphism":
        return kind, morphism_from_json(doc, r)
    raise MalformedInput(f"{kind} documents are inputs to a subcommand, not standalone values")


def to_json(value) -> dict:
    if isinstance(value, Magma):
        return magma_to_json(value)
    if isinstance(value, Action):
        return action_to_json(value)
    if isinstance(value, SplitExtension):
        return splitext_to_json(value)
    if isinstance(value, SplitExtMorphism):
        return morphism_to_json(value)
    if isinstance(value, ZeroMap):
        return map_to_json(value)
    raise TypeError(f"no JSON form for {type(value).__name__}")
