"""Axiom verdicts shared by the proximity checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional


@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: Optional[tuple] = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"axiom": self.name, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class AxiomReport:
    results: list[AxiomResult]
    compatible: Optional[bool] = None
    compatibility_witness: Optional[tuple] = None
    separated: Optional[bool] = None
    separation_witness: Optional[tuple] = None
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def to_json(self) -> dict:
        out: dict = {"pass": self.passed, "axioms": [r.to_json() for r in self.results]}
        if self.compatible is not None:
            out["compatible"] = self.compatible
            if self.compatibility_witness is not None:
                out["compatibility_witness"] = _jsonable(self.compatibility_witness)
        if self.separated is not None:
            out["separated"] = self.separated
            if self.separation_witness is not None:
                out["separation_witness"] = _jsonable(self.separation_witness)
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


def _jsonable(x):
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


def first_failure(name: str, cases, note: str = "") -> AxiomResult:
    """Consume ``(ok, witness)`` pairs; fail on the first falsified case."""
    for ok, witness in cases:
        if not ok:
            return AxiomResult(name, False, witness, note)
    return AxiomResult(name, True, None, note)
