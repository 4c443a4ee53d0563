"""Verification records and the error types raised on malformed input."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass
class Certificate:
    """Outcome of one verified claim.

    ``passed`` says whether the verification succeeded; a negative
    mathematical fact (say, "not normal") is still a passing certificate, with
    the fact in ``verdict`` and the evidence in ``counterexample``.
    """

    claim: str
    passed: bool
    verdict: str = ""
    checks: dict[str, bool] = field(default_factory=dict)
    witness: dict[str, Any] = field(default_factory=dict)
    counterexample: dict[str, Any] | None = None
    error: str | None = None
    anchor: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "anchor": self.anchor,
            "passed": self.passed,
            "verdict": self.verdict,
            "checks": {k: bool(v) for k, v in self.checks.items()},
            "witness": jsonable(self.witness),
            "counterexample": jsonable(self.counterexample),
            "error": self.error,
        }


def jsonable(x):
    if isinstance(x, Certificate):
        return x.to_dict()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if hasattr(x, "to_dict"):
        return x.to_dict()
    if hasattr(x, "to_dense"):
        return x.to_dense()
    return x


class HopfError(Exception):
    """Base class for input and precondition errors."""


class DimensionMismatch(HopfError):
    pass


class BialgebraInvalid(HopfError):
    pass


class AxiomFailure(HopfError):
    def __init__(self, axiom: str, detail: str = ""):
        super().__init__(f"axiom {axiom!r} fails" + (f": {detail}" if detail else ""))
        self.axiom = axiom


class CoalgebraMismatch(HopfError):
    pass


class AlgebraMismatch(HopfError):
    pass


class NotInjective(HopfError):
    pass


class NotHopfMap(HopfError):
    def __init__(self, identity: str, detail: str = ""):
        super().__init__(f"{identity} fails" + (f": {detail}" if detail else ""))
        self.identity = identity


class IdealNotSaturated(HopfError):
    def __init__(self, torsion: tuple[int, ...]):
        super().__init__(f"B A+ is not saturated; quotient torsion {list(torsion)}")
        self.torsion = tuple(torsion)


class AntipodeNotInvertible(HopfError):
    pass


class HypothesisUnmet(HopfError):
    def __init__(self, missing: list[str]):
        super().__init__("unmet hypotheses: " + ", ".join(missing))
        self.missing = missing


class InvalidTable(HopfError):
    pass


class NotASubgroup(HopfError):
    pass


class ParseError(HopfError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
