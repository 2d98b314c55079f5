"""Command-line front end.

Structures are read and written as canonical JSON (see :mod:`magmakit.io`).
Exit status: 0 on success, 1 on a failed check or a refused construction,
2 on input that cannot be parsed.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .actions import associated_action, semidirect
from .classes import classify_split_epi, classify_split_epi_any
from .composition import composite_of, is_composable
from .core import Hom, ZeroMap
from .enumeration import SearchBudget, count_magmas, default_workers, enumerate_magmas, iso_classes
from .errors import MagmaKitError
from .morphisms import pullback
from .search import search_firm_not_distributive, search_noncomposable_pair, search_sfl_c
from .verify import run_verification_suite

log = logging.getLogger("magmakit")

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED = 0, 1, 2


def _read(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise io.MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    return io.loads(text)


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _expect(doc, *kinds: str) -> None:
    kind = io.detect_kind(doc)
    if kind not in kinds:
        raise io.MalformedInput(f"expected {' or '.join(kinds)} input, got {kind}")


def _map(node, r: io.Resolver, what: str) -> ZeroMap:
    if not isinstance(node, dict):
        raise io.MalformedInput(f"{what} must be a map object")
    _expect(node, "map")
    return io.map_from_json(node, r)


# -- subcommands -----------------------------------------------------------


def cmd_validate(args) -> int:
    doc = _read(args.input)
    kind = io.detect_kind(doc)
    try:
        _, value = io.load_any(doc)
    except io.MalformedInput:
        raise
    except MagmaKitError as exc:
        if args.json:
            sys.stdout.write(io.dumps({"kind": kind, "valid": False, **exc.to_dict()}))
        else:
            print(f"invalid {kind}: {type(exc).__name__}: {exc}")
        return EXIT_FAIL
    if args.output:
        Path(args.output).write_text(io.dumps(io.to_json(value)))
    if args.json:
        sys.stdout.write(io.dumps({"kind": kind, "valid": True}))
    else:
        print(f"valid {kind}")
    return EXIT_OK


def cmd_semidirect(args) -> int:
    doc = _read(args.input)
    _expect(doc, "action")
    ext = semidirect(io.action_from_json(doc)).extension
    _emit(args, io.dumps(io.splitext_to_json(ext)))
    return EXIT_OK


def cmd_extract_action(args) -> int:
    doc = _read(args.input)
    _expect(doc, "splitext")
    _emit(args, io.dumps(io.action_to_json(associated_action(io.splitext_from_json(doc)))))
    return EXIT_OK


def cmd_compose(args) -> int:
    if args.input:
        if args.outer or args.inner:
            raise io.MalformedInput("give either a pair file or --outer/--inner, not both")
        doc = _read(args.input)
        _expect(doc, "pair")
        r = io.Resolver(doc)
        outer_doc, inner_doc = doc["outer"], doc["inner"]
    elif args.outer and args.inner:
        outer_doc, inner_doc = _read(args.outer), _read(args.inner)
        r = io.Resolver({"outer": outer_doc, "inner": inner_doc})
    else:
        raise io.MalformedInput("compose needs a pair file or both --outer and --inner")
    outer = io.splitext_from_json(outer_doc, r)
    inner = io.splitext_from_json(inner_doc, r)
    c = is_composable(outer, inner)
    report = c.to_dict()
    if c.composable:
        report["composite"] = io.splitext_to_json(composite_of(c.diagram))
    _emit(args, io.dumps(report))
    if not c.composable:
        y, d, x = c.witness
        print(f"not composable: action law fails at (y, d, x) = ({y}, {d}, {x})", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_classify(args) -> int:
    doc = _read(args.input)
    _expect(doc, "split_epi")
    r = io.Resolver(doc)
    a, b = r.magma(doc["A"]), r.magma(doc["B"])
    alpha = ZeroMap(a, b, io._ints(doc["alpha"], "alpha", 1))
    if "beta" in doc:
        c = classify_split_epi(a, b, alpha, ZeroMap(b, a, io._ints(doc["beta"], "beta", 1)))
        beta_values = doc["beta"]
    else:
        c, beta = classify_split_epi_any(a, b, alpha)
        beta_values = None if beta is None else beta.values.tolist()
    out = {"class": c.cls.label, "beta": beta_values}
    if c.reason:
        out["reason"] = c.reason
    if c.extension is not None:
        out["extension"] = io.splitext_to_json(c.extension)
    if args.json or args.output:
        _emit(args, io.dumps(out))
    else:
        print(c.cls.label + (f" ({c.reason})" if c.reason else ""))
    return EXIT_OK


def cmd_pullback(args) -> int:
    doc = _read(args.input)
    _expect(doc, "pullback")
    r = io.Resolver(doc)
    ext = io.splitext_from_json(doc["ext"], r)
    f = _map(doc["f"], r, "f")
    if f.cod != ext.b:
        raise io.MalformedInput("f must land in the base of ext")
    pulled, _ = pullback(ext, Hom(f.dom, f.cod, f.values))
    _emit(args, io.dumps(io.splitext_to_json(pulled)))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    associative = args.associative or args.kind == "monoid"
    n = args.order
    if n < 1 or args.workers < 1:
        raise io.MalformedInput("order and workers must be at least 1")
    if args.up_to_iso or args.output:
        found = list(enumerate_magmas(n, associative_only=associative))
        if args.up_to_iso:
            found = [c.representative for c in iso_classes(found)]
        count = len(found)
        if args.output:
            with open(args.output, "w") as fh:
                for m in found:
                    fh.write(io.dumps(io.magma_to_json(m)))
    else:
        count = count_magmas(n, associative_only=associative, workers=args.workers)
    if args.json:
        sys.stdout.write(io.dumps({
            "kind": args.kind,
            "order": n,
            "associative": associative,
            "up_to_iso": args.up_to_iso,
            "count": count,
        }))
    else:
        print(count)
    return EXIT_OK


def _budget(args) -> SearchBudget:
    try:
        return SearchBudget(
            max_order=args.max_order,
            max_candidates=args.max_candidates,
            workers=args.workers,
            seed=args.seed,
        )
    except ValueError as exc:
        raise io.MalformedInput(str(exc)) from None


def cmd_search(args) -> int:
    budget = _budget(args)
    if args.target == "noncomposable":
        hit = search_noncomposable_pair(budget)
        out = hit and {
            "outer": io.splitext_to_json(hit.outer),
            "inner": io.splitext_to_json(hit.inner),
            "witness": list(hit.result.witness),
            "candidates": hit.candidates,
        }
    elif args.target == "sfl-c":
        hit = search_sfl_c(budget)
        out = hit and {
            "X": io.magma_to_json(hit.x),
            "B": io.magma_to_json(hit.b),
            "s": hit.s.values.tolist(),
            "report": hit.report.to_dict(),
            "candidates": hit.candidates,
        }
    else:
        hit = search_firm_not_distributive(budget)
        out = hit and {
            "action": io.action_to_json(hit.action),
            "witness": list(hit.witness),
            "candidates": hit.candidates,
        }
    if out is None:
        print(f"{args.target}: no witness within budget", file=sys.stderr)
        return EXIT_FAIL if args.require_found else EXIT_OK
    _emit(args, io.dumps({"target": args.target, "found": True, **out}))
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verification_suite(_budget(args), workers=args.workers)
    if args.output:
        Path(args.output).write_text(report.to_json())
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        print(report.table())
    return EXIT_OK if report.passed else EXIT_FAIL


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("-v", "--verbose", action="store_true")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--workers", type=int, default=default_workers())
    budget.add_argument("--max-order", type=int, default=2)
    budget.add_argument("--max-candidates", type=int, default=None)
    budget.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="magmakit", description="Split extensions of unitary magmas.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a magma, map, action, extension or morphism")
    s.add_argument("input")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("semidirect", parents=[common], help="action -> semidirect split extension")
    s.add_argument("input")
    s.set_defaults(run=cmd_semidirect)

    s = sub.add_parser("extract-action", parents=[common], help="split extension -> associated action")
    s.add_argument("input")
    s.set_defaults(run=cmd_extract_action)

    s = sub.add_parser("compose", parents=[common], help="compose an outer and an inner extension")
    s.add_argument("input", nargs="?", help='file holding {"outer": ..., "inner": ...}')
    s.add_argument("--outer")
    s.add_argument("--inner")
    s.set_defaults(run=cmd_compose)

    s = sub.add_parser("classify", parents=[common], help="class of a split epimorphism")
    s.add_argument("input")
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("pullback", parents=[common], help="pull an extension back along f")
    s.add_argument("input")
    s.set_defaults(run=cmd_pullback)

    s = sub.add_parser("enumerate", parents=[common, budget], help="count (and dump) unitary magmas")
    s.add_argument("--kind", choices=("magma", "monoid"), default="magma")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--associative", action="store_true")
    s.add_argument("--up-to-iso", action="store_true")
    s.set_defaults(run=cmd_enumerate)

    s = sub.add_parser("search", parents=[common, budget], help="look for a counterexample")
    s.add_argument("target", choices=("noncomposable", "sfl-c", "e-prime-not-epp"))
    s.add_argument("--require-found", action="store_true")
    s.set_defaults(run=cmd_search)

    s = sub.add_parser("verify", parents=[common, budget], help="run the verification suite")
    s.set_defaults(run=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.run(args)
    except (io.MalformedInput, KeyError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except MagmaKitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        if args.json:
            sys.stdout.write(io.dumps(exc.to_dict()))
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
