"""Uniform result record for verification runs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def format_value(value: Any) -> str:
    """Render report values; Fractions as num/den so machine output stays exact."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


@dataclass(frozen=True)
class ProbeReport:
    """What was checked, what came out, and whether it passed.

    quantity/bound are the computed figure and the value it was checked
    against (either may be None when the probe is purely structural);
    witness carries whatever object certifies the verdict (a strategy, a
    forced table cell, ...); notes are free-form context lines.
    """

    claim: str
    passed: bool
    quantity: Any = None
    bound: Any = None
    witness: Any = None
    notes: tuple[str, ...] = ()

    def lines(self) -> list[str]:
        """key=value lines, deterministic order, ending with status."""
        out = [f"claim={self.claim}"]
        if self.quantity is not None:
            out.append(f"quantity={format_value(self.quantity)}")
        if self.bound is not None:
            out.append(f"bound={format_value(self.bound)}")
        if self.witness is not None:
            out.append(f"witness={format_value(self.witness)}")
        for i, note in enumerate(self.notes):
            out.append(f"note.{i}={note}")
        out.append(f"status={'pass' if self.passed else 'fail'}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())
