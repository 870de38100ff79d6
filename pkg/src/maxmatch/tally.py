"""Match/gold/system counts and the exact recall, precision and F1 they imply."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple


@dataclass(frozen=True)
class ScoreTally:
    matches: int = 0
    gold_total: int = 0
    sys_total: int = 0

    def __post_init__(self):
        if min(self.matches, self.gold_total, self.sys_total) < 0:
            raise ValueError(f"negative count in {self}")
        if self.matches > self.gold_total or self.matches > self.sys_total:
            raise ValueError(f"matches exceed a total in {self}")

    def __add__(self, other: ScoreTally) -> ScoreTally:
        return ScoreTally(
            self.matches + other.matches,
            self.gold_total + other.gold_total,
            self.sys_total + other.sys_total,
        )


class PRF(NamedTuple):
    recall: Fraction
    precision: Fraction
    f1: Fraction


def prf(t: ScoreTally) -> PRF:
    """Exact R, P, F1.

    An empty gold side gives R = 1 and an empty system side gives P = 1, so
    empty-versus-empty scores perfectly; F1 is 0 whenever R + P is 0.
    """
    r = Fraction(t.matches, t.gold_total) if t.gold_total else Fraction(1)
    p = Fraction(t.matches, t.sys_total) if t.sys_total else Fraction(1)
    f = 2 * r * p / (r + p) if r + p else Fraction(0)
    return PRF(r, p, f)
