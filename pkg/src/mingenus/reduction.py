"""Diffeomorphism-orbit reduction for classes in CP2 # k(-CP2), k = 2, 3.

Coordinates are ``(a, b_1, ..., b_k)`` against the form diag(1, -1, ..., -1).
Every reduction returns the canonical class together with a
:class:`ReductionTrace` that replays move by move.  Allowed moves are sign
flips (reflection in a coordinate sphere), permutations of the
``b``-coordinates (swapping blow-up summands) and reflections in the
licensed sphere classes (1,1,1), (2,1,1) or (1,1,1,1).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Tuple

from .errors import DimensionError, NonTermination, WrongRoutine
from .lattice import HomologyClass, IntersectionForm, LICENSED_SQUARES, reflect, square

NEGATIVE_LOOP_CAP = 64


@lru_cache(maxsize=None)
def cp2k_form(rank: int) -> IntersectionForm:
    return IntersectionForm.diagonal((1,) + (-1,) * (rank - 1))


def _as_class(a) -> HomologyClass:
    a = tuple(int(x) for x in a)
    if len(a) not in (3, 4):
        raise DimensionError(f"expected a class of rank 3 or 4, got length {len(a)}")
    return a


@dataclass(frozen=True)
class Move:
    kind: str  # "flip", "sort" or "reflect"
    data: Tuple[int, ...]

    def apply(self, form: IntersectionForm, a: HomologyClass) -> HomologyClass:
        if self.kind == "flip":
            (i,) = self.data
            return a[:i] + (-a[i],) + a[i + 1:]
        if self.kind == "sort":
            return tuple(a[j] for j in self.data)
        if self.kind == "reflect":
            return reflect(form, self.data, a)
        raise ValueError(f"unknown move kind {self.kind!r}")

    def to_text(self) -> str:
        return " ".join([self.kind, *map(str, self.data)])

    @classmethod
    def from_text(cls, text: str) -> "Move":
        kind, *rest = text.split()
        if kind not in ("flip", "sort", "reflect"):
            raise ValueError(f"unknown move kind {kind!r}")
        return cls(kind, tuple(int(x) for x in rest))


@dataclass
class ReductionTrace:
    start: HomologyClass
    steps: List[Move] = field(default_factory=list)
    end: HomologyClass = None

    def states(self, form: IntersectionForm = None) -> List[HomologyClass]:
        form = form or cp2k_form(len(self.start))
        out = [self.start]
        for mv in self.steps:
            out.append(mv.apply(form, out[-1]))
        return out

    def replay(self, form: IntersectionForm = None) -> HomologyClass:
        return self.states(form)[-1]

    def is_valid(self, form: IntersectionForm = None, spheres=None, permutable=None) -> bool:
        """Replay reaches ``end`` and every move is a licensed diffeomorphism."""
        form = form or cp2k_form(len(self.start))
        n = len(self.start)
        permutable = set(range(1, n) if permutable is None else permutable)
        for mv in self.steps:
            if mv.kind == "flip":
                (i,) = mv.data
                if form.gram[i][i] not in (1, -1) or any(
                        form.gram[i][j] for j in range(n) if j != i):
                    return False
            elif mv.kind == "sort":
                if sorted(mv.data) != list(range(n)):
                    return False
                if any(mv.data[i] != i and i not in permutable for i in range(n)):
                    return False
            elif mv.kind == "reflect":
                if square(form, mv.data) not in LICENSED_SQUARES:
                    return False
                if spheres is not None and tuple(mv.data) not in set(map(tuple, spheres)):
                    return False
        return self.replay(form) == self.end

    def to_text(self) -> str:
        """One move per line, each annotated with the class it produces."""
        fmt = lambda v: " ".join(map(str, v))
        lines = [f"start {fmt(self.start)}"]
        for mv, state in zip(self.steps, self.states()[1:]):
            lines.append(f"{mv.to_text()} -> {fmt(state)}")
        lines.append(f"end {fmt(self.end)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ReductionTrace":
        start = end = None
        steps = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, tail = line.partition(" ")
            if head == "start":
                start = tuple(int(x) for x in tail.split())
            elif head == "end":
                end = tuple(int(x) for x in tail.split())
            else:
                steps.append(Move.from_text(line.split("->")[0]))
        if start is None or end is None:
            raise ValueError("trace text needs 'start' and 'end' lines")
        trace = cls(start, steps, end)
        if trace.replay() != end:
            raise ValueError("trace does not replay to its end class")
        return trace


def _normalize_into(a: HomologyClass, steps: List[Move]) -> HomologyClass:
    for i, x in enumerate(a):
        if x < 0:
            steps.append(Move("flip", (i,)))
            a = a[:i] + (-x,) + a[i + 1:]
    order = (0,) + tuple(sorted(range(1, len(a)), key=lambda i: -a[i]))
    if order != tuple(range(len(a))):
        steps.append(Move("sort", order))
        a = tuple(a[j] for j in order)
    return a


def normalize(a) -> Tuple[HomologyClass, ReductionTrace]:
    """Make every coordinate non-negative and sort the b's descending."""
    a = _as_class(a)
    steps: List[Move] = []
    end = _normalize_into(a, steps)
    return end, ReductionTrace(a, steps, end)


def mirror_nonnegative(rank: int) -> HomologyClass:
    """(1,1,1) for rank 3, the (-2)-class (1,1,1,1) for rank 4."""
    return (1,) * rank


def reduce_nonnegative(a) -> Tuple[HomologyClass, ReductionTrace]:
    """Canonical form with a >= sum(b) for a class of non-negative square.

    Each reflection strictly decreases the first coordinate, so the loop
    ends after at most ``|a|`` reflections.
    """
    a = _as_class(a)
    form = cp2k_form(len(a))
    if square(form, a) < 0:
        raise WrongRoutine(f"class {a} has negative square; use the negative-square reduction")
    mirror = mirror_nonnegative(len(a))
    steps: List[Move] = []
    x = _normalize_into(a, steps)
    while x[0] - sum(x[1:]) < 0:
        prev = x[0]
        steps.append(Move("reflect", mirror))
        x = reflect(form, mirror, x)
        x = _normalize_into(x, steps)
        assert x[0] < prev
    return x, ReductionTrace(a, steps, x)


def reduce_negative_rank3(a, cap: int = NEGATIVE_LOOP_CAP) -> Tuple[HomologyClass, ReductionTrace]:
    """Reach 2a >= b1 + b2 by reflections in the square-2 sphere (2,1,1)."""
    a = _as_class(a)
    if len(a) != 3:
        raise DimensionError("reduce_negative_rank3 needs a rank 3 class")
    form = cp2k_form(3)
    if square(form, a) >= 0:
        raise WrongRoutine(f"class {a} has non-negative square; use reduce_nonnegative")
    mirror = (2, 1, 1)
    steps: List[Move] = []
    x = _normalize_into(a, steps)
    fixpoints = []
    for _ in range(cap):
        if 2 * x[0] - x[1] - x[2] >= 0:
            fixpoints.append(x)
            break
        steps.append(Move("reflect", mirror))
        x = _normalize_into(reflect(form, mirror, x), steps)
    else:
        raise NonTermination(f"no fixpoint for {a} within {cap} iterations",
                             ReductionTrace(a, steps, x))
    end = max(fixpoints)
    return end, ReductionTrace(a, steps, end)


def reduce_negative_rank4(a, cap: int = NEGATIVE_LOOP_CAP) -> Tuple[HomologyClass, ReductionTrace]:
    """Descent by the (-2)-class (1,1,1,1) for rank 4 classes of negative square.

    Reflects only while the move shrinks the first coordinate; reflecting
    whenever a < sum(b) cycles on classes such as (0,1,0,0).
    """
    a = _as_class(a)
    if len(a) != 4:
        raise DimensionError("reduce_negative_rank4 needs a rank 4 class")
    form = cp2k_form(4)
    if square(form, a) >= 0:
        raise WrongRoutine(f"class {a} has non-negative square; use reduce_nonnegative")
    mirror = (1, 1, 1, 1)
    steps: List[Move] = []
    x = _normalize_into(a, steps)
    for _ in range(cap):
        c = x[0] - sum(x[1:])
        if c >= 0 or abs(x[0] + c) >= x[0]:
            break
        steps.append(Move("reflect", mirror))
        x = _normalize_into(reflect(form, mirror, x), steps)
    else:
        raise NonTermination(f"no fixpoint for {a} within {cap} iterations",
                             ReductionTrace(a, steps, x))
    return x, ReductionTrace(a, steps, x)


def reduce(a) -> Tuple[HomologyClass, ReductionTrace]:
    """Dispatch on rank and sign of the square."""
    a = _as_class(a)
    if square(cp2k_form(len(a)), a) >= 0:
        return reduce_nonnegative(a)
    if len(a) == 3:
        return reduce_negative_rank3(a)
    return reduce_negative_rank4(a)


def orbit_generators(model):
    """Involutions generating the model's licensed symmetry group."""
    form = model.form
    gens = [("reflect", tuple(s)) for s in model.reflection_spheres]
    perm = sorted(getattr(model, "permutable", ()) or ())
    for i, j in zip(perm, perm[1:]):
        gens.append(("swap", (i, j)))
    return form, gens


def _apply_generator(form, gen, x):
    kind, data = gen
    if kind == "reflect":
        return reflect(form, data, x)
    i, j = data
    y = list(x)
    y[i], y[j] = y[j], y[i]
    return tuple(y)


def orbit_bfs(model, a, coordinate_bound: int) -> Tuple[HomologyClass, ...]:
    """All classes reachable from ``a`` inside the box ``|coord| <= coordinate_bound``.

    Moves are the model's reflection spheres and transpositions of its
    permutable coordinates.  Every generator is an involution, so the
    truncated orbit of any member is the same set.  Returned sorted.
    """
    a = tuple(int(x) for x in a)
    if len(a) != model.form.rank:
        raise DimensionError(f"class length {len(a)} does not match rank {model.form.rank}")
    if any(abs(x) > coordinate_bound for x in a):
        raise ValueError(f"coordinate bound {coordinate_bound} does not contain {a}")
    form, gens = orbit_generators(model)
    seen = {a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _apply_generator(form, g, x)
            if y not in seen and all(abs(t) <= coordinate_bound for t in y):
                seen.add(y)
                queue.append(y)
    return tuple(sorted(seen))
