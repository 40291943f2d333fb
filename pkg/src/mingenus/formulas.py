"""Closed-form minimal genus functions and the :class:`GenusResult` record."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import WrongRoutine
from .reduction import cp2k_form, reduce_nonnegative
from .lattice import square


@dataclass
class GenusResult:
    """Exact genus or a certified interval ``[lower, upper]``.

    ``upper is None`` means no upper bound is known.  ``convention`` marks
    the zero class, whose value 0 is a convention rather than a formula.
    """

    lower: int
    upper: Optional[int]
    provenance: List[str] = field(default_factory=list)
    convention: bool = False

    def __post_init__(self):
        if self.lower < 0:
            raise ValueError("lower bound must be non-negative")
        if self.upper is not None and self.upper < self.lower:
            raise ValueError(f"inconsistent interval [{self.lower}, {self.upper}]")

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @classmethod
    def exact_value(cls, value: int, *provenance: str, convention=False) -> "GenusResult":
        return cls(value, value, list(provenance), convention)

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "exact": self.exact,
                "convention": self.convention, "provenance": list(self.provenance)}

    @classmethod
    def from_dict(cls, d) -> "GenusResult":
        res = cls(d["lower"], d["upper"], list(d["provenance"]), d.get("convention", False))
        if res.exact != d.get("exact", res.exact):
            raise ValueError("'exact' flag disagrees with the interval")
        return res

    def __str__(self):
        if self.exact:
            return f"{self.lower}"
        hi = "?" if self.upper is None else self.upper
        return f"[{self.lower}, {hi}]"


def genus_cp2(d: int) -> int:
    """Degree-d curves in CP2: (|d|-1)(|d|-2)/2, and 0 for d = 0."""
    d = abs(d)
    if d == 0:
        return 0
    return (d - 1) * (d - 2) // 2


def genus_cp2_cp2bar(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    if a == b:
        return 0
    if a < b:
        a, b = b, a
    return (a - 1) * (a - 2) // 2 - b * (b - 1) // 2


def genus_s2xs2(u: int, v: int) -> int:
    if u == 0 or v == 0:
        return 0
    return (abs(u) - 1) * (abs(v) - 1)


def genus_xn(a: int, b: int) -> int:
    """(|a|+1)(|b|+1) on non-zero classes of the homology S2 x S2's X_n.

    The zero class returns 0 by convention; :func:`xn_result` flags it.
    """
    if a == 0 and b == 0:
        return 0
    return (abs(a) + 1) * (abs(b) + 1)


def xn_result(a: int, b: int) -> GenusResult:
    if a == 0 and b == 0:
        return GenusResult.exact_value(0, "zero-class", convention=True)
    return GenusResult.exact_value(genus_xn(a, b), "formula:xn")


def arrangement_genus(a: int, b: Sequence[int]) -> int:
    """((a-1)(a-2) - sum b_i(b_i-1)) / 2 for a canonical class a >= sum(b).

    When every line passes through a single blown-up point the proper
    transform is a union of disjoint spheres, which tube to a sphere.
    """
    if a == 0:
        return 0
    nonzero = [x for x in b if x]
    if len(nonzero) == 1 and nonzero[0] == a:
        return 0
    twice = (a - 1) * (a - 2) - sum(x * (x - 1) for x in b)
    assert twice >= 0 and twice % 2 == 0, (a, b)
    return twice // 2


def arrangement_genus_printed(a: int, b1: int, b2: int) -> Fraction:
    """The variant with coefficient b1(b1-2); kept only to show it disagrees."""
    return Fraction((a - 1) * (a - 2) - b1 * (b1 - 2) - b2 * (b2 - 1), 2)


def genus_cp2k_nonnegative(a: int, b: Sequence[int]) -> int:
    """Minimal genus in CP2 # k(-CP2), k = len(b) in {2, 3}, for square >= 0.

    The class is first reduced to a >= sum(b); there it is represented by
    a symplectic line arrangement, whose genus is minimal.
    """
    cls = (int(a),) + tuple(int(x) for x in b)
    if len(cls) not in (3, 4):
        raise ValueError("b must have 2 or 3 entries")
    if square(cp2k_form(len(cls)), cls) < 0:
        raise WrongRoutine(f"class {cls} has negative square")
    canon, _ = reduce_nonnegative(cls)
    return arrangement_genus(canon[0], canon[1:])
