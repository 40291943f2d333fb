"""Allowed sequences and the lexicographic genus profile.

An allowed sequence is b2+ pairwise orthogonal classes of positive even
square; orthogonality plus positive squares already makes the span
positive definite.  The profile is the lexicographic minimum, over allowed
sequences, of the sorted genus tuple.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, List, Optional, Tuple

from .errors import DimensionError, NotFound
from .genus import genus_evaluator as _default_evaluator
from .lattice import is_positive_definite_span, pairing, square

INF = float("inf")
GENERAL_RANK_LIMIT = 6


def is_allowed(model, vectors) -> bool:
    vectors = [tuple(v) for v in vectors]
    k = model.form.b2_plus
    if len(vectors) != k:
        raise DimensionError(f"need {k} vectors, got {len(vectors)}")
    form = model.form
    for i, v in enumerate(vectors):
        if square(form, v) % 2:
            return False
        for w in vectors[i + 1:]:
            if pairing(form, v, w):
                return False
    return is_positive_definite_span(form, vectors)


def lex_min(tuples):
    tuples = [tuple(t) for t in tuples]
    if not tuples:
        raise ValueError("lex_min of an empty list")
    if len({len(t) for t in tuples}) != 1:
        raise ValueError("tuples must all have the same length")
    return min(tuples)


@dataclass
class Profile:
    lower: Tuple[int, ...]
    upper: Tuple[Optional[int], ...]
    witness: Tuple[Tuple[int, ...], ...]
    radius: int

    @property
    def exact(self) -> Tuple[bool, ...]:
        return tuple(u is not None and lo == u for lo, u in zip(self.lower, self.upper))

    @property
    def entries(self) -> Optional[Tuple[int, ...]]:
        """The profile itself when every entry is pinned down, else None."""
        return self.lower if all(self.exact) else None

    def to_dict(self) -> dict:
        return {"lower": list(self.lower), "upper": list(self.upper),
                "exact": list(self.exact), "witness": [list(v) for v in self.witness],
                "radius": self.radius}

    @classmethod
    def from_dict(cls, d) -> "Profile":
        return cls(tuple(d["lower"]), tuple(d["upper"]),
                   tuple(tuple(v) for v in d["witness"]), d["radius"])

    def __str__(self):
        parts = []
        for lo, up in zip(self.lower, self.upper):
            if lo == up:
                parts.append(str(lo))
            else:
                parts.append(f"[{lo},{'?' if up is None else up}]")
        return "(" + ", ".join(parts) + ")"


def _sign_rep(v):
    """Pick one of v, -v (both have the same genus and span)."""
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def candidate_vectors(model, norm_bound: int, general: bool = False) -> List[Tuple[int, ...]]:
    """Positive even-square classes with coordinates in ``[-norm_bound, norm_bound]``.

    By default only classes supported on one of the model's search blocks
    are produced; ``general`` enumerates the whole box (small ranks only).
    """
    form, n = model.form, model.rank
    rng = range(-norm_bound, norm_bound + 1)
    supports = []
    if general or not model.search_blocks:
        if n > GENERAL_RANK_LIMIT:
            raise ValueError(f"general search is limited to rank <= {GENERAL_RANK_LIMIT}")
        supports.append(tuple(range(n)))
    else:
        supports.extend(b.indices for b in model.search_blocks)
    seen = set()
    out = []
    for idx in supports:
        for vals in product(rng, repeat=len(idx)):
            v = [0] * n
            for i, x in zip(idx, vals):
                v[i] = x
            v = _sign_rep(tuple(v))
            if v in seen:
                continue
            sq = square(form, v)
            if sq > 0 and sq % 2 == 0:
                seen.add(v)
                out.append(v)
    out.sort(key=lambda v: (square(form, v), v))
    return out


def _search(form, k, cands, keys):
    """Lex-min sorted key tuple over k pairwise orthogonal candidates."""
    order = sorted(range(len(cands)), key=lambda i: keys[i])
    covs = [form.covector(cands[i]) for i in order]
    ks = [keys[i] for i in order]
    best = [None, None]

    def orth(i, j):
        return sum(x * y for x, y in zip(covs[i], cands[order[j]])) == 0

    def dfs(start, chosen, prefix):
        if len(chosen) == k:
            if best[0] is None or tuple(prefix) < best[0]:
                best[0], best[1] = tuple(prefix), [cands[order[i]] for i in chosen]
            return
        for idx in range(start, len(order)):
            trial = prefix + [ks[idx]]
            if best[0] is not None and tuple(trial) > best[0][:len(trial)]:
                break
            if all(orth(c, idx) for c in chosen):
                dfs(idx + 1, chosen + [idx], trial)

    dfs(0, [], [])
    return best


def profile_search(model, norm_bound: int, genus_evaluator: Callable = None,
                   general: bool = False) -> Profile:
    """Certified bounds on the genus profile within the search radius."""
    if genus_evaluator is None:
        genus_evaluator = _default_evaluator(model)
    k = model.form.b2_plus
    if k < 1:
        raise NotFound(f"{model.name} has b2+ = 0")
    cands = candidate_vectors(model, norm_bound, general)
    results = [genus_evaluator(v) for v in cands]
    lows = [r.lower for r in results]
    ups = [INF if r.upper is None else r.upper for r in results]
    lo_key, lo_wit = _search(model.form, k, cands, lows)
    if lo_key is None:
        raise NotFound(f"no allowed sequence for {model.name} within radius {norm_bound}")
    up_key, up_wit = _search(model.form, k, cands, ups)
    witness = up_wit if up_key is not None and up_key[-1] != INF else lo_wit
    upper = tuple(None if u == INF else int(u) for u in up_key)
    assert is_allowed(model, witness)
    return Profile(tuple(lo_key), upper, tuple(witness), norm_bound)
