"""Exception hierarchy.

Validation failures carry the first witness found, in lexicographic order of
the quantified variables, so error messages are reproducible.
"""

from __future__ import annotations


class MagmaKitError(Exception):
    """Base class for every error raised by magmakit."""

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class ValidationError(MagmaKitError, ValueError):
    pass


class ShapeError(ValidationError):
    pass


class EntryOutOfRange(ValidationError):
    def __init__(self, where: tuple[int, ...], value: int, bound: int):
        self.where = tuple(int(i) for i in where)
        self.value = int(value)
        self.bound = int(bound)
        super().__init__(f"entry {self.value} at {self.where} not in [0, {self.bound})")


class UnitLawViolation(ValidationError):
    def __init__(self, i: int, j: int, value: int):
        self.cell = (int(i), int(j))
        self.value = int(value)
        super().__init__(f"unit law fails at cell {self.cell}: {i}+{j}={value}")


class ZeroNotPreserved(ValidationError):
    def __init__(self, value: int):
        self.value = int(value)
        super().__init__(f"map sends 0 to {self.value}")


class NotAHomomorphism(ValidationError):
    def __init__(self, a: int, b: int):
        self.pair = (int(a), int(b))
        super().__init__(f"additivity fails at {self.pair}")


class NotClosed(ValidationError):
    def __init__(self, a: int, b: int, total: int):
        self.pair = (int(a), int(b))
        self.total = int(total)
        super().__init__(f"subset not closed: {a}+{b}={total}")


class UnitActsNontrivially(ValidationError):
    def __init__(self, x: int):
        self.x = int(x)
        super().__init__(f"0 does not act as identity on {self.x}")


class ZeroNotFixed(ValidationError):
    def __init__(self, b: int):
        self.b = int(b)
        super().__init__(f"{self.b} does not fix 0")


class HomViolation(ValidationError):
    def __init__(self, name: str, pair: tuple[int, int] | None = None, reason: str = ""):
        self.name = name
        self.pair = pair
        msg = f"{name} is not a homomorphism"
        if pair is not None:
            msg += f" (additivity fails at {pair})"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["map"] = self.name
        if self.pair is not None:
            d["witness"] = list(self.pair)
        return d


class EquationViolation(ValidationError):
    """A defining equality fails; ``equation`` is a short label, ``witness``
    maps variable names to element indices."""

    def __init__(self, equation: str, witness: dict[str, int]):
        self.equation = equation
        self.witness = {k: int(v) for k, v in witness.items()}
        super().__init__(f"equation {equation!r} fails at {self.witness}")

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["equation"] = self.equation
        d["witness"] = self.witness
        return d


class NotSplit(ValidationError):
    def __init__(self, b: int):
        self.b = int(b)
        super().__init__(f"alpha(beta({self.b})) != {self.b}")


class MiddleMismatch(MagmaKitError):
    pass


class NotComposable(MagmaKitError):
    def __init__(self, witness: tuple[int, int, int]):
        self.witness = tuple(int(i) for i in witness)
        super().__init__(
            "pair does not compose; action criterion fails at (y, d, x) = %s" % (self.witness,)
        )

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["witness"] = {"y": self.witness[0], "d": self.witness[1], "x": self.witness[2]}
        return d


class PreconditionViolation(MagmaKitError):
    pass


class InternalDefect(AssertionError):
    """A property guaranteed by the theory failed; indicates a bug."""
