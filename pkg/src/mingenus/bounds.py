"""Certified lower bounds on the minimal genus."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import Inapplicable
from .lattice import is_characteristic, square
from .reduction import cp2k_form


def _ceil_half(x: int) -> int:
    return -((-x) // 2)


@dataclass(frozen=True)
class BoundCertificate:
    value: int
    source: str
    inputs: dict = field(default_factory=dict, compare=False)

    def recompute(self) -> int:
        """Re-derive the value from the echoed inputs."""
        kind = self.source.split(":", 1)[0]
        if kind == "adjunction":
            raw = _ceil_half(abs(self.inputs["kappa"]) + self.inputs["square"] + 2)
            return max(raw, 0)
        if kind == "char-sphere-lemma":
            return 1
        if kind == "furuta-char":
            return _ceil_half((-self.inputs["square"] - 1) // 8)
        if kind == "trivial":
            return 0
        raise ValueError(f"unknown source {self.source!r}")

    def to_dict(self):
        return {"value": self.value, "source": self.source, "inputs": dict(self.inputs)}


TRIVIAL = BoundCertificate(0, "trivial")


def adjunction_applicable(model) -> bool:
    form = model.form
    if not (model.simple_type and model.adjunction_applicable and model.b1 == 0):
        return False
    if not model.basic_classes:
        return False
    return form.b2_plus > 1 or (form.b2_plus == 1 and form.b2_minus <= 9)


def adjunction_lower(model, a) -> BoundCertificate:
    """max over basic classes of ceil((|kappa(a)| + a.a + 2) / 2), floored at 0.

    The inequality only constrains surfaces of positive genus; a
    non-positive value is reported as the trivial bound.
    """
    if not adjunction_applicable(model):
        raise Inapplicable(f"adjunction inequality not applicable to {model.name!r}")
    sq = square(model.form, a)
    best = None
    for bc in model.basic_classes:
        k = bc.evaluate(a)
        val = _ceil_half(abs(k) + sq + 2)
        if best is None or val > best[0]:
            best = (val, bc, k)
    val, bc, k = best
    if val <= 0:
        return BoundCertificate(0, "trivial", {"kappa": k, "square": sq})
    return BoundCertificate(val, f"adjunction:{bc.id}", {"kappa": k, "square": sq})


def _rank3(a):
    a = tuple(a)
    if len(a) != 3:
        raise Inapplicable("bound is stated for CP2 # 2(-CP2) only")
    return a


def characteristic_sphere_obstruction(a) -> Optional[BoundCertificate]:
    """Characteristic classes of square -n, n > 1, carry no embedded sphere."""
    a = _rank3(a)
    form = cp2k_form(3)
    sq = square(form, a)
    if is_characteristic(form, a) and sq < -1:
        return BoundCertificate(1, "char-sphere-lemma", {"square": sq})
    return None


def furuta_char_bound(a) -> Optional[BoundCertificate]:
    """Genus >= n/2 for characteristic classes of square -8n-1."""
    a = _rank3(a)
    form = cp2k_form(3)
    sq = square(form, a)
    if not is_characteristic(form, a) or sq >= 0 or (sq + 1) % 8:
        return None
    n = (-sq - 1) // 8
    return BoundCertificate(_ceil_half(n), "furuta-char", {"square": sq, "n": n})


def furuta_check(b2: int, sigma: int) -> bool:
    """Spin-manifold arithmetic: b2 >= 5|sigma|/4 + 2 and 16 | sigma."""
    return 4 * b2 >= 5 * abs(sigma) + 8 and sigma % 16 == 0


def e2p_third_entry_lower(p: int) -> int:
    """Lower bound (p+3)/2 for the last genus-profile entry of E(2)_p, p odd."""
    if p < 1 or p % 2 == 0:
        raise Inapplicable("the estimate is for odd p >= 1")
    return _ceil_half(p + 3)
