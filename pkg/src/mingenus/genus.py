"""Genus dispatcher: closed formula, then reduction + formula, then an interval.

Intervals combine every applicable lower bound with ``max`` and every
available construction with ``min``; when the two meet the result is exact.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .catalog import cp2x2, cp2x3
from .bounds import (adjunction_applicable, adjunction_lower, characteristic_sphere_obstruction,
                     furuta_char_bound)
from .errors import DimensionError, Inapplicable
from .formulas import (GenusResult, genus_cp2, genus_cp2_cp2bar, genus_cp2k_nonnegative,
                       genus_s2xs2, xn_result)
from .lattice import square
from .reduction import (cp2k_form, normalize, orbit_bfs, reduce_negative_rank3,
                        reduce_negative_rank4)
from .surfaces import negative_square_upper_bound, resolve_and_tube, sum_configuration

EXTRA_COEFFICIENT_RANGE = 3


def _as_class(model, a) -> Tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) != model.rank:
        raise DimensionError(f"{model.name} has rank {model.rank}, got {len(a)} coordinates")
    return a


def genus(model, a) -> GenusResult:
    a = _as_class(model, a)
    if not any(a):
        return GenusResult.exact_value(0, "zero-class", convention=True)
    f = model.formula
    if f == "cp2":
        return GenusResult.exact_value(genus_cp2(a[0]), "formula:cp2")
    if f == "cp2cp2bar":
        return GenusResult.exact_value(genus_cp2_cp2bar(*a), "formula:cp2cp2bar")
    if f == "s2xs2":
        return GenusResult.exact_value(genus_s2xs2(*a), "formula:s2xs2")
    if f == "xn":
        return xn_result(*a)
    if f == "cp2k":
        if square(cp2k_form(len(a)), a) >= 0:
            return GenusResult.exact_value(genus_cp2k_nonnegative(a[0], a[1:]),
                                           "reduction", "formula:cp2k")
        return cp2k_negative_interval(a)
    return interval(model, a)


# --- CP2 # k(-CP2), negative square -----------------------------------------------

def _split_upper(x) -> Tuple[int, str]:
    """Split off one b-coordinate: a (-CP2) summand carries a degree-|b| curve."""
    best = None
    for k in range(1, len(x)):
        rest = x[:k] + x[k + 1:]
        if len(rest) == 2:
            val = genus_cp2_cp2bar(*rest)
        else:
            val = cp2k_upper(rest)[0]
        val += genus_cp2(x[k])
        if best is None or val < best[0]:
            best = (val, "split")
    return best


@lru_cache(maxsize=4096)
def _cp2k_upper(a) -> Tuple[int, str]:
    form = cp2k_form(len(a))
    if square(form, a) >= 0:
        return genus_cp2k_nonnegative(a[0], a[1:]), "formula:cp2k"
    candidates = set(_orbit_sample(a))
    best = None
    for x in sorted(candidates):
        y, _ = normalize(x)
        options = [_split_upper(y)]
        if len(y) == 3:
            try:
                options.append((negative_square_upper_bound(*y), "recipe:negative-square"))
            except Inapplicable:
                pass
        for val, tag in options:
            if best is None or val < best[0]:
                best = (val, tag)
    return best


def cp2k_upper(a) -> Tuple[int, str]:
    """Best construction found for a rank 3 or 4 class (any sign of square)."""
    return _cp2k_upper(tuple(int(x) for x in a))


def _orbit_sample(a):
    """Truncated orbit plus the states visited by the reduction loop."""
    rank = len(a)
    model = cp2x2() if rank == 3 else cp2x3()
    bound = max(abs(x) for x in a)
    pts = set(orbit_bfs(model, a, bound))
    reducer = reduce_negative_rank3 if rank == 3 else reduce_negative_rank4
    _, trace = reducer(a)
    pts.update(trace.states())
    return pts


def cp2k_negative_interval(a) -> GenusResult:
    a = tuple(a)
    lower, lsrc = 0, "trivial"
    if len(a) == 3:
        for cert in (characteristic_sphere_obstruction(a), furuta_char_bound(a)):
            if cert is not None and cert.value > lower:
                lower, lsrc = cert.value, cert.source
    upper, usrc = cp2k_upper(a)
    return GenusResult(lower, upper, [f"lower:{lsrc}", f"upper:{usrc}"])


# --- generic interval path -------------------------------------------------------------

def _unit_index(v) -> Optional[int]:
    nz = [i for i, x in enumerate(v) if x]
    if len(nz) == 1 and v[nz[0]] == 1:
        return nz[0]
    return None


def sum_upper(model, a, extra_range: int = EXTRA_COEFFICIENT_RANGE) -> Optional[Tuple[int, str]]:
    """Smallest genus of a resolved union of catalog surfaces representing ``a``.

    Surfaces that are basis vectors take whatever coefficient is left over;
    the remaining surfaces are tried with coefficients in ``[-extra_range, extra_range]``.
    """
    units = {}
    extras = []
    for s in model.surfaces:
        i = _unit_index(s.coords)
        if i is not None and i not in units:
            units[i] = s
        else:
            extras.append(s)
    best = None
    for coefs in product(range(-extra_range, extra_range + 1), repeat=len(extras)):
        residual = list(a)
        used = {}
        for s, c in zip(extras, coefs):
            if c:
                used[s.label] = c
                for i, x in enumerate(s.coords):
                    residual[i] -= c * x
        if any(r and i not in units for i, r in enumerate(residual)):
            continue
        for i, r in enumerate(residual):
            if r:
                used[units[i].label] = used.get(units[i].label, 0) + r
        config = sum_configuration(model.form, model.surfaces, used)
        if config is None:
            continue
        g = resolve_and_tube(config)
        if best is None or g < best[0]:
            terms = "+".join(f"{c}{lab}" if c != 1 else lab for lab, c in sorted(used.items()))
            best = (g, f"sum:{terms}")
    return best


def upper_candidates(model, a) -> List[Tuple[int, str]]:
    out = []
    neg = tuple(-x for x in a)
    for s in model.surfaces:
        if s.genus is not None and tuple(s.coords) in (a, neg):
            out.append((s.genus, f"surface:{s.label}"))
    for c in model.constructions:
        if tuple(c.coords) in (a, neg):
            out.append((c.genus, f"construction:{c.name}"))
    found = sum_upper(model, a)
    if found is not None:
        out.append(found)
    return out


def lower_bound(model, a) -> Tuple[int, str]:
    if adjunction_applicable(model):
        cert = adjunction_lower(model, a)
        return cert.value, cert.source
    return 0, "trivial"


def interval(model, a) -> GenusResult:
    lower, lsrc = lower_bound(model, a)
    cands = upper_candidates(model, a)
    prov = [f"lower:{lsrc}"]
    if not cands:
        return GenusResult(lower, None, prov)
    upper, usrc = min(cands)
    return GenusResult(lower, upper, prov + [f"upper:{usrc}"])


def genus_evaluator(model):
    """``class -> GenusResult`` bound to one model (used by the profile search)."""
    return lambda a: genus(model, a)


def class_of(model, coords: Sequence[int]) -> Tuple[int, ...]:
    return _as_class(model, coords)
