"""Exact integer bilinear-form arithmetic.

Homology classes are plain tuples of Python ints (arbitrary precision, so
orbit searches cannot overflow).  An :class:`IntersectionForm` wraps a
symmetric integer Gram matrix and knows its inertia.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Tuple

from .errors import DimensionError, ReflectionNotLicensed

HomologyClass = Tuple[int, ...]

LICENSED_SQUARES = frozenset({1, -1, 2, -2})


def _inertia(gram):
    """Return (positive, negative, zero) counts by symmetric elimination over Q."""
    n = len(gram)
    m = [[Fraction(x) for x in row] for row in gram]
    active = list(range(n))
    pos = neg = 0
    while active:
        piv = next((k for k in active if m[k][k] != 0), None)
        if piv is None:
            pair = next(((k, l) for k in active for l in active
                         if k < l and m[k][l] != 0), None)
            if pair is None:
                break
            k, l = pair
            # basis change e_k -> e_k + e_l makes the diagonal entry 2*m[k][l]
            for j in range(n):
                m[k][j] += m[l][j]
            for j in range(n):
                m[j][k] += m[j][l]
            piv = k
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        row = [m[piv][c] for c in range(n)]
        for r in active:
            f = m[r][piv]
            if f:
                for c in active:
                    m[r][c] -= f * row[c] / d
        for r in active:
            m[r][piv] = m[piv][r] = Fraction(0)
    return pos, neg, n - pos - neg


def determinant(matrix) -> int:
    """Integer determinant by Bareiss fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class IntersectionForm:
    """Symmetric integer Gram matrix of a lattice (H_2, Q).

    ``b2_plus``/``b2_minus`` are computed on construction; a degenerate
    or non-symmetric matrix is rejected.
    """

    gram: Tuple[Tuple[int, ...], ...]
    b2_plus: int = field(init=False)
    b2_minus: int = field(init=False)

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(gram)
        if n == 0 or any(len(row) != n for row in gram):
            raise DimensionError("gram matrix must be square and non-empty")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise ValueError(f"gram matrix not symmetric at ({i}, {j})")
        pos, neg, zero = _inertia(gram)
        if zero:
            raise ValueError("intersection form is degenerate")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "b2_plus", pos)
        object.__setattr__(self, "b2_minus", neg)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntersectionForm":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n))
                         for i in range(n)))

    @classmethod
    def block_sum(cls, *blocks) -> "IntersectionForm":
        mats = [b.gram if isinstance(b, IntersectionForm) else b for b in blocks]
        n = sum(len(b) for b in mats)
        rows = [[0] * n for _ in range(n)]
        off = 0
        for b in mats:
            for i, row in enumerate(b):
                for j, x in enumerate(row):
                    rows[off + i][off + j] = x
            off += len(b)
        return cls(tuple(map(tuple, rows)))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def signature(self) -> int:
        return self.b2_plus - self.b2_minus

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def determinant(self) -> int:
        return determinant(self.gram)

    def covector(self, a: Sequence[int]) -> HomologyClass:
        """Row vector ``a^T Q``: the functional x -> Q(a, x)."""
        _check(self, a)
        return tuple(sum(a[i] * self.gram[i][j] for i in range(self.rank) if a[i])
                     for j in range(self.rank))

    def solve(self, covec: Sequence[int]):
        """Return the rational vector ``v`` with ``Q v = covec``."""
        n = self.rank
        if len(covec) != n:
            raise DimensionError(f"expected length {n}, got {len(covec)}")
        m = [[Fraction(x) for x in row] + [Fraction(covec[i])]
             for i, row in enumerate(self.gram)]
        for col in range(n):
            piv = next(r for r in range(col, n) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            p = m[col][col]
            m[col] = [x / p for x in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        return tuple(m[r][n] for r in range(n))

    def dual_square(self, covec: Sequence[int]) -> Fraction:
        """Square of the class Poincare dual to ``covec`` (i.e. covec Q^-1 covec)."""
        v = self.solve(covec)
        return sum(Fraction(c) * x for c, x in zip(covec, v))


def _check(form: IntersectionForm, *vectors):
    n = form.rank
    for v in vectors:
        if len(v) != n:
            raise DimensionError(f"class of length {len(v)} does not fit a rank {n} form")


def pairing(form: IntersectionForm, a: Sequence[int], b: Sequence[int]) -> int:
    _check(form, a, b)
    g = form.gram
    total = 0
    for i, ai in enumerate(a):
        if ai:
            row = g[i]
            total += ai * sum(row[j] * bj for j, bj in enumerate(b) if bj)
    return total


def square(form: IntersectionForm, a: Sequence[int]) -> int:
    return pairing(form, a, a)


def is_characteristic(form: IntersectionForm, a: Sequence[int]) -> bool:
    """True when Q(a, x) = Q(x, x) mod 2 for every basis vector x."""
    cov = form.covector(a)
    return all((cov[i] - form.gram[i][i]) % 2 == 0 for i in range(form.rank))


def reflect(form: IntersectionForm, s: Sequence[int], a: Sequence[int]) -> HomologyClass:
    """Reflect ``a`` in the sphere class ``s`` (square must be +-1 or +-2)."""
    s2 = square(form, s)
    if s2 not in LICENSED_SQUARES:
        raise ReflectionNotLicensed(f"class {tuple(s)} has square {s2}; "
                                    "only +-1 and +-2 spheres induce reflections")
    q = pairing(form, s, a)
    coef, rem = divmod(2 * q, s2)
    assert rem == 0
    return tuple(ai - coef * si for ai, si in zip(a, s))


def gram_of(form: IntersectionForm, vectors) -> list:
    return [[pairing(form, u, v) for v in vectors] for u in vectors]


def leading_minors(matrix) -> list:
    return [determinant([row[:k] for row in matrix[:k]]) for k in range(1, len(matrix) + 1)]


def is_positive_definite_span(form: IntersectionForm, vectors) -> bool:
    """Sylvester test on the Gram matrix of ``vectors``.

    All leading minors positive means the vectors are independent and
    span a positive definite subspace.
    """
    vectors = list(vectors)
    if not vectors:
        raise ValueError("need at least one vector")
    _check(form, *vectors)
    return all(m > 0 for m in leading_minors(gram_of(form, vectors)))


def hyperbolic(count: int = 1):
    """Gram rows of ``count`` copies of the hyperbolic pair [[0,1],[1,0]]."""
    return IntersectionForm.block_sum(*([((0, 1), (1, 0))] * count)).gram


def negative_e8():
    """Gram matrix of -E8 (simple roots of the E8 diagram, squares -2)."""
    # chain 0-1-2-3-4-5-6 with node 7 attached to node 4
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return tuple(map(tuple, g))
