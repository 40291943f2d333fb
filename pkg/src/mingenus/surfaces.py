"""Genus bookkeeping for unions of surfaces.

Smoothing a transverse double point lowers the Euler characteristic of the
union by 2 whatever its sign, so a connected configuration of components
of genera g_i with I double points resolves to genus

    sum(g_i) + I - C + 1        (C = number of components).

Disconnected pieces are tubed together, which adds genera.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb, gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DisconnectedConfiguration, Inapplicable
from .lattice import IntersectionForm, pairing


@dataclass(frozen=True)
class SurfaceConfiguration:
    """Components ``(label, genus)`` and intersections ``(l1, l2, count, sign)``."""

    components: Tuple[Tuple[str, int], ...]
    intersections: Tuple[Tuple[str, str, int, int], ...] = ()

    def __post_init__(self):
        labels = [lab for lab, _ in self.components]
        if len(set(labels)) != len(labels):
            raise ValueError("component labels must be unique")
        if any(g < 0 for _, g in self.components):
            raise ValueError("genus must be non-negative")
        known = set(labels)
        for l1, l2, count, sign in self.intersections:
            if l1 == l2:
                raise ValueError(f"self-intersection entry for {l1!r}")
            if l1 not in known or l2 not in known:
                raise ValueError(f"intersection refers to unknown component {l1!r}/{l2!r}")
            if count < 1:
                raise ValueError("intersection multiplicity must be >= 1")
            if sign not in (1, -1):
                raise ValueError("intersection sign must be +1 or -1")

    @property
    def point_count(self) -> int:
        return sum(c for _, _, c, _ in self.intersections)

    @property
    def all_positive(self) -> bool:
        return all(s > 0 for *_, s in self.intersections)

    def connected_components(self) -> List["SurfaceConfiguration"]:
        parent = {lab: lab for lab, _ in self.components}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for l1, l2, *_ in self.intersections:
            r1, r2 = find(l1), find(l2)
            if r1 != r2:
                parent[r1] = r2
        groups: Dict[str, list] = {}
        for lab, g in self.components:
            groups.setdefault(find(lab), []).append((lab, g))
        out = []
        for members in groups.values():
            names = {lab for lab, _ in members}
            inter = tuple(x for x in self.intersections if x[0] in names)
            out.append(SurfaceConfiguration(tuple(members), inter))
        return out

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1


def resolve_genus(config: SurfaceConfiguration) -> int:
    """Genus after smoothing every double point of a connected configuration."""
    if not config.components:
        raise ValueError("empty configuration")
    if not config.is_connected():
        raise DisconnectedConfiguration(
            "configuration is disconnected; resolve each piece and tube_genus them")
    total = sum(g for _, g in config.components)
    return total + config.point_count - len(config.components) + 1


def tube_genus(g1: int, g2: int) -> int:
    return g1 + g2


def resolve_and_tube(config: SurfaceConfiguration) -> int:
    """Resolve each connected piece, then tube the pieces together."""
    if not config.components:
        return 0
    total = 0
    for piece in config.connected_components():
        total = tube_genus(total, resolve_genus(piece))
    return total


def cover_genus(g: int, t: int) -> int:
    """Genus of a connected unbranched t-fold cover of a genus g surface."""
    if g < 1:
        raise Inapplicable("a sphere has no connected covers of degree > 1")
    if t < 1:
        raise ValueError("cover degree must be >= 1")
    return t * (g - 1) + 1


# --- line arrangements in CP2 blown up at up to three points -----------------

_BLOWUP_POINTS = ((0, 0, 1), (1, 0, 1), (0, 1, 1))


def _projective(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector is not a projective point")
    v = tuple(x // g for x in v)
    lead = next(x for x in v if x)
    return v if lead > 0 else tuple(-x for x in v)


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _on_line(line, p):
    return line[0] * p[0] + line[1] * p[1] + line[2] * p[2] == 0


def _arrangement_lines(a: int, pencils: Sequence[int], rng: random.Random):
    """Integer line equations: pencils[i] lines through point i, the rest generic."""
    points = _BLOWUP_POINTS[:len(pencils)]
    lines = []
    for idx, count in enumerate(pencils):
        p = points[idx]
        used = set()
        while len([l for l in lines if l[1] == idx]) < count:
            q = (rng.randint(-50, 50), rng.randint(-50, 50), 1)
            if q == p:
                continue
            line = _projective(_cross(p, q))
            if line in used or any(_on_line(line, o) for o in points if o != p):
                continue
            used.add(line)
            lines.append((line, idx))
    while len(lines) < a:
        line = _projective((rng.randint(-60, 60), rng.randint(-60, 60), rng.randint(-60, 60)))
        if any(_on_line(line, o) for o in points) or any(line == l for l, _ in lines):
            continue
        lines.append((line, None))
    return lines, points


def arrangement_configuration(a: int, pencils: Sequence[int], seed: int = 0,
                              attempts: int = 200) -> SurfaceConfiguration:
    """Proper transform of ``a`` lines after blowing up the pencil base points.

    Lines are actual integer line equations; intersection points are
    computed, points at a blown-up base point are separated, and any other
    triple point triggers a new random choice.
    """
    pencils = tuple(int(b) for b in pencils)
    if a < 0 or any(b < 0 for b in pencils) or sum(pencils) > a:
        raise Inapplicable(f"need a >= sum of multiplicities >= 0, got {a}, {pencils}")
    if len(pencils) > len(_BLOWUP_POINTS):
        raise Inapplicable("at most three blown-up points are supported")
    rng = random.Random(seed)
    for _ in range(attempts):
        lines, points = _arrangement_lines(a, pencils, rng)
        blown = set(points)
        hits: Dict[tuple, list] = {}
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                p = _projective(_cross(lines[i][0], lines[j][0]))
                if p not in blown:
                    hits.setdefault(p, []).append((i, j))
        if all(len(pairs) == 1 for pairs in hits.values()):
            comps = tuple((f"L{i}", 0) for i in range(len(lines)))
            inter = tuple((f"L{i}", f"L{j}", 1, 1) for pairs in hits.values() for i, j in pairs)
            return SurfaceConfiguration(comps, inter)
    raise RuntimeError("could not find a generic arrangement")


def line_arrangement_genus(a: int, multiplicities: Sequence[int]) -> int:
    """Genus of the smoothed proper transform of a line arrangement.

    ``multiplicities[i]`` lines pass through the i-th blown-up point and
    the remaining lines are generic.  Computed from an explicit
    arrangement, independently of the closed formula.
    """
    config = arrangement_configuration(a, multiplicities)
    return resolve_and_tube(config)


def negative_square_configuration(a: int, b1: int, b2: int) -> SurfaceConfiguration:
    """Surface for (a, b1, b2) with square < 0, 2a >= b1 + b2 and a >= b2.

    Lines: a - b2 through the first blown-up point and b2 through the
    second, giving the class (a, a - b2, b2).  Then m = b1 + b2 - a
    reversed copies of the first exceptional sphere; each meets every line
    through the first point once and each other copy once.
    """
    if not (a >= 0 and b1 >= b2 >= 0):
        raise Inapplicable("input must be normalized: a >= 0, b1 >= b2 >= 0")
    if 2 * a < b1 + b2 or a < b2:
        raise Inapplicable("need 2a >= b1 + b2 and a >= b2")
    if a * a - b1 * b1 - b2 * b2 >= 0:
        raise Inapplicable("class must have negative square")
    m = b1 + b2 - a
    first = [f"P{i}" for i in range(a - b2)]
    second = [f"Q{i}" for i in range(b2)]
    exc = [f"E{i}" for i in range(m)]
    comps = tuple((lab, 0) for lab in first + second + exc)
    inter = [(p, q, 1, 1) for p in first for q in second]
    inter += [(e, p, 1, -1) for e in exc for p in first]
    inter += [(exc[i], exc[j], 1, -1) for i in range(m) for j in range(i + 1, m)]
    return SurfaceConfiguration(comps, tuple(inter))


def negative_square_upper_bound(a: int, b1: int, b2: int) -> int:
    """Upper bound for the genus of a negative-square class in CP2 # 2(-CP2)."""
    return resolve_and_tube(negative_square_configuration(a, b1, b2))


# --- sums of basis surfaces ---------------------------------------------------

def sum_configuration(form: IntersectionForm, surfaces, coefficients: Dict[str, int]
                      ) -> Optional[SurfaceConfiguration]:
    """Configuration representing sum(t_X * X) over the given surfaces.

    ``surfaces`` holds objects with ``label``, ``coords`` and ``genus``.
    Distinct surfaces meet in |X.Y| points.  A square-zero surface of
    positive genus taken |t| times is a connected |t|-fold cover; other
    multiples are |t| push-offs meeting pairwise in |X.X| points.  Returns
    None when a used surface has unknown genus.
    """
    groups = []  # (surface, [component labels], copies_per_component)
    comps = []
    inter = []
    for s in surfaces:
        t = coefficients.get(s.label, 0)
        if t == 0:
            continue
        if s.genus is None:
            return None
        sq = pairing(form, s.coords, s.coords)
        sign = 1 if t > 0 else -1
        n = abs(t)
        if sq == 0 and s.genus >= 1:
            labs = [s.label]
            comps.append((s.label, cover_genus(s.genus, n)))
            groups.append((s, labs, n, sign))
        else:
            labs = [s.label] if n == 1 else [f"{s.label}#{i}" for i in range(n)]
            comps.extend((lab, s.genus) for lab in labs)
            groups.append((s, labs, 1, sign))
            if sq:
                self_sign = 1 if sq > 0 else -1
                for i in range(n):
                    for j in range(i + 1, n):
                        inter.append((labs[i], labs[j], abs(sq), self_sign))
    for gi in range(len(groups)):
        s1, labs1, k1, sg1 = groups[gi]
        for gj in range(gi + 1, len(groups)):
            s2, labs2, k2, sg2 = groups[gj]
            q = pairing(form, s1.coords, s2.coords)
            if q == 0:
                continue
            sign = sg1 * sg2 * (1 if q > 0 else -1)
            for l1 in labs1:
                for l2 in labs2:
                    inter.append((l1, l2, abs(q) * k1 * k2, sign))
    if not comps:
        return SurfaceConfiguration(())
    return SurfaceConfiguration(tuple(comps), tuple(inter))
