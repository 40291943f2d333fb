"""Seiberg-Witten bookkeeping: torus-surgery products and basic-class fixtures.

A basic class is stored through its covector ``kappa``: the pairing of the
class Poincare dual to c_1(s) with each basis class.  No gauge theory is
computed here; basic classes are data.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Dict, List, Sequence, Tuple


@dataclass(frozen=True)
class BasicClass:
    id: str
    kappa: Tuple[int, ...]
    sw_value: int

    def __post_init__(self):
        if self.sw_value == 0:
            raise ValueError(f"basic class {self.id!r} must have non-zero SW value")
        object.__setattr__(self, "kappa", tuple(int(x) for x in self.kappa))

    def evaluate(self, a: Sequence[int]) -> int:
        return sum(k * x for k, x in zip(self.kappa, a))


def surgery_sw(coefficients: Sequence[int], initial: int) -> int:
    """SW value after a sequence of (p, 1) torus surgeries.

    Each surgery multiplies by p, since F(p, 1) = p F(1, 0) + F(0, 1) and
    F(0, 1) vanishes in the situations modeled here.
    """
    return initial * prod(int(p) for p in coefficients)


def xn_surgery_sequence(n: int) -> List[int]:
    """Four -1 surgeries, three +1 surgeries, then the coefficient-n surgery."""
    return [-1] * 4 + [1] * 3 + [n]


def xn_basic_classes(n: int) -> List[BasicClass]:
    """The two basic classes of X_n; kappa is 2 on both generators."""
    if n < 1:
        raise ValueError("n must be >= 1")
    value = surgery_sw(xn_surgery_sequence(n), 1)
    return [BasicClass("s", (2, 2), value), BasicClass("-s", (-2, -2), -value)]


# --- Laurent polynomials as {exponent: coefficient} ---------------------------

def _mul(p: Dict[int, int], q: Dict[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def alexander_torus_2q(m: int) -> Dict[int, int]:
    """Symmetrized Alexander polynomial of the torus knot T(2, 2m+1)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return {m - j: (-1) ** j for j in range(2 * m + 1)}


def enk_sw_polynomial(n: int, m: int) -> Dict[int, int]:
    """Delta_{K_m}(t^2) (t - 1/t)^(n-2), with t standing for the fiber class."""
    if n < 2:
        raise ValueError("n must be >= 2")
    delta = {2 * e: c for e, c in alexander_torus_2q(m).items()}
    poly = delta
    for _ in range(n - 2):
        poly = _mul(poly, {1: 1, -1: -1})
    return poly


def fiber_covector(rank: int, r: int) -> Tuple[int, ...]:
    """kappa of r times the fiber class, in the section-first basis (S, F, ...).

    Only the section pairs non-trivially with the fiber, so kappa = (r, 0, ...).
    """
    return (r,) + (0,) * (rank - 1)


def enk_basic_classes(n: int, m: int) -> List[BasicClass]:
    """Basic classes r[F] of E(n)_{K_m}, highest r first (m = 0 gives E(n))."""
    rank = 12 * n - 2
    poly = enk_sw_polynomial(n, m)
    return [BasicClass(f"{r}F", fiber_covector(rank, r), c)
            for r, c in sorted(poly.items(), reverse=True)]


def e2p_sw_polynomial(p: int) -> Dict[int, int]:
    """(t^p - t^-p) / (t - t^-1) for odd p; t stands for the multiple-fiber class."""
    if p < 1 or p % 2 == 0:
        raise ValueError("p must be odd and >= 1")
    return {e: 1 for e in range(p - 1, -p, -2)}


def e2p_basic_classes(p: int) -> List[BasicClass]:
    rank = 22
    return [BasicClass(f"{r}z", fiber_covector(rank, r), c)
            for r, c in sorted(e2p_sw_polynomial(p).items(), reverse=True)]


def family_basic_classes(kappa: Sequence[int], n: int, surgeries: int = 4) -> List[BasicClass]:
    """+-K for the families Z_n and V_n: the last of the Luttinger surgeries
    is replaced by a coefficient-n torus surgery."""
    if n < 1:
        raise ValueError("n must be >= 1")
    value = surgery_sw([1] * (surgeries - 1) + [n], 1)
    neg = tuple(-k for k in kappa)
    return [BasicClass("K", tuple(kappa), value), BasicClass("-K", neg, -value)]
