"""Structured pass/fail records with exact slack values."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .rational import fmt

_RELATIONS = (">=", "==", "<=")


@dataclass(frozen=True)
class Check:
    """One exact comparison ``lhs <relation> rhs``.

    ``slack`` is always ``lhs - rhs`` so that equality cases can be asserted
    directly (slack 0) instead of through a boolean.
    """

    label: str
    lhs: Fraction
    rhs: Fraction
    relation: str = ">="

    def __post_init__(self) -> None:
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "lhs", Fraction(self.lhs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @property
    def slack(self) -> Fraction:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        if self.relation == ">=":
            return self.slack >= 0
        if self.relation == "<=":
            return self.slack <= 0
        return self.slack == 0

    @property
    def tight(self) -> bool:
        return self.slack == 0

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{self.label}: {fmt(self.lhs)} {self.relation} {fmt(self.rhs)} "
            f"(slack {fmt(self.slack)}) {status}"
        )


@dataclass(frozen=True)
class Certificate:
    title: str
    checks: tuple[Check, ...] = ()
    flags: tuple[str, ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, label: str) -> Check:
        for c in self.checks:
            if c.label == label:
                return c
        raise KeyError(label)

    def render(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        lines += [f"  {c}" for c in self.checks]
        if self.flags:
            lines.append("  flags: " + ", ".join(self.flags))
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)

    def kv(self, prefix: str = "") -> list[tuple[str, str]]:
        out = [(f"{prefix}passed", str(self.passed).lower())]
        for c in self.checks:
            key = prefix + c.label.replace(" ", "_")
            out.append((f"{key}.lhs", fmt(c.lhs)))
            out.append((f"{key}.rhs", fmt(c.rhs)))
            out.append((f"{key}.slack", fmt(c.slack)))
            out.append((f"{key}.passed", str(c.passed).lower()))
        if self.flags:
            out.append((f"{prefix}flags", ",".join(self.flags)))
        return out
