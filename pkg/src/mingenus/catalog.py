"""Manifold descriptors, bundled fixtures and the ``.cat`` text format.

A catalog file is line oriented::

    schema 1
    model ap
      title exotic CP2 # 2(-CP2)
      b1 0
      flags simple_type adjunction symplectic
      formula none
      basis B C D
      gram
        0 1 0
        1 0 0
        0 0 -1
      surface B 2 symplectic : 1 0 0
      basic K 1 : 2 4 3
      relation A = B:2 C:1 D:-2
      construction annulus 5 : 1 1 -1
    end

``gram`` is followed by exactly ``len(basis)`` rows.  A genus written
``?`` is unknown.  Other keys: ``param <k> <v>``, ``reflect : <coords>``,
``permute <i> <j> ...``, ``block <name> : <indices>``, ``inferred <text>``,
``conjecture <text>``.  Lines starting with ``#`` are comments.  See docs/catalog-format.md.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CatalogParseError, CatalogValidationError, UnknownManifold
from .lattice import IntersectionForm, LICENSED_SQUARES, hyperbolic, negative_e8, square
from .sw import (BasicClass, e2p_basic_classes, enk_basic_classes, family_basic_classes,
                 xn_basic_classes)

SCHEMA_VERSION = 1
FORMULAS = ("cp2", "cp2cp2bar", "s2xs2", "xn", "cp2k")
CATALOG_ENV = "MINGENUS_CATALOG"


@dataclass(frozen=True)
class Surface:
    label: str
    coords: Tuple[int, ...]
    genus: Optional[int]
    symplectic: bool = False
    inferred: bool = False


@dataclass(frozen=True)
class Construction:
    """A one-off geometric representative of ``coords`` (and of its negative)."""
    name: str
    coords: Tuple[int, ...]
    genus: int


@dataclass(frozen=True)
class Relation:
    """``target = sum(coef * label)`` among surface labels."""
    target: str
    terms: Tuple[Tuple[str, int], ...]


@dataclass(frozen=True)
class SearchBlock:
    name: str
    indices: Tuple[int, ...]


@dataclass(frozen=True)
class ManifoldModel:
    name: str
    form: IntersectionForm
    basis_labels: Tuple[str, ...]
    title: str = ""
    b1: int = 0
    simple_type: bool = False
    adjunction_applicable: bool = False
    symplectic: bool = False
    formula: Optional[str] = None
    params: Tuple[Tuple[str, int], ...] = ()
    surfaces: Tuple[Surface, ...] = ()
    basic_classes: Tuple[BasicClass, ...] = ()
    reflection_spheres: Tuple[Tuple[int, ...], ...] = ()
    permutable: Tuple[int, ...] = ()
    relations: Tuple[Relation, ...] = ()
    constructions: Tuple[Construction, ...] = ()
    search_blocks: Tuple[SearchBlock, ...] = ()
    inferred: Tuple[str, ...] = ()
    conjectures: Tuple[str, ...] = ()

    @property
    def rank(self) -> int:
        return self.form.rank

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.b1 + self.rank

    @property
    def signature(self) -> int:
        return self.form.signature

    def surface(self, label: str) -> Surface:
        for s in self.surfaces:
            if s.label == label:
                return s
        raise KeyError(label)

    def param(self, key: str, default=None):
        return dict(self.params).get(key, default)


# --- validation ----------------------------------------------------------------

def validate(model: ManifoldModel) -> List[str]:
    """Every violated invariant as a readable string; empty means valid."""
    out: List[str] = []
    form, n = model.form, model.rank

    def fits(v, what):
        if len(v) != n:
            out.append(f"{what}: length {len(v)} does not match rank {n}")
            return False
        return True

    if len(model.basis_labels) != n:
        out.append(f"basis has {len(model.basis_labels)} labels for rank {n}")
    if model.formula is not None and model.formula not in FORMULAS:
        out.append(f"unknown formula {model.formula!r}")
    if model.b1 < 0:
        out.append("b1 must be non-negative")
    for s in model.reflection_spheres:
        if fits(s, f"reflection sphere {s}") and square(form, s) not in LICENSED_SQUARES:
            out.append(f"reflection sphere {tuple(s)} has square {square(form, s)}, "
                       "not in {+-1, +-2}")
    perm = sorted(model.permutable)
    for i in perm:
        if not 0 <= i < n:
            out.append(f"permutable index {i} out of range")
    if all(0 <= i < n for i in perm):
        for i, j in zip(perm, perm[1:]):
            swap = list(range(n))
            swap[i], swap[j] = j, i
            if any(form.gram[swap[r]][swap[c]] != form.gram[r][c]
                   for r in range(n) for c in range(n)):
                out.append(f"swapping coordinates {i},{j} is not an isometry")

    labels = [s.label for s in model.surfaces]
    if len(set(labels)) != len(labels):
        out.append("surface labels are not unique")
    first = model.basic_classes[0] if model.basic_classes else None
    for s in model.surfaces:
        if not fits(s.coords, f"surface {s.label}"):
            continue
        if s.genus is not None and s.genus < 0:
            out.append(f"surface {s.label}: negative genus")
        if s.symplectic:
            if s.genus is None:
                out.append(f"surface {s.label}: symplectic surface needs a genus")
            elif first is not None:
                lhs = 2 * s.genus - 2
                rhs = square(form, s.coords) + first.evaluate(s.coords)
                if lhs != rhs:
                    out.append(f"surface {s.label}: adjunction equality fails "
                               f"(2g-2 = {lhs}, square + kappa = {rhs})")

    chi, sigma = model.euler_characteristic, model.signature
    for bc in model.basic_classes:
        if not fits(bc.kappa, f"basic class {bc.id}"):
            continue
        for i in range(n):
            if (bc.kappa[i] - form.gram[i][i]) % 2:
                out.append(f"basic class {bc.id}: kappa not characteristic at "
                           f"{model.basis_labels[i] if i < len(model.basis_labels) else i}")
                break
        if model.simple_type:
            k2 = form.dual_square(bc.kappa)
            if k2 != 3 * sigma + 2 * chi:
                out.append(f"basic class {bc.id}: square {k2} != 3 sigma + 2 chi = "
                           f"{3 * sigma + 2 * chi}")
    kappas = {bc.kappa for bc in model.basic_classes}
    if any(tuple(-k for k in kap) not in kappas for kap in kappas):
        out.append("basic classes are not symmetric under negation")

    by_label = {s.label: s for s in model.surfaces}
    for rel in model.relations:
        names = [rel.target] + [lab for lab, _ in rel.terms]
        missing = [x for x in names if x not in by_label]
        if missing:
            out.append(f"relation {rel.target}: unknown surfaces {missing}")
            continue
        total = [0] * n
        for lab, c in rel.terms:
            for i, x in enumerate(by_label[lab].coords):
                total[i] += c * x
        if tuple(total) != by_label[rel.target].coords:
            out.append(f"relation {rel.target}: coordinates {by_label[rel.target].coords} "
                       f"!= {tuple(total)}")
    for c in model.constructions:
        fits(c.coords, f"construction {c.name}")
        if c.genus < 0:
            out.append(f"construction {c.name}: negative genus")
    for blk in model.search_blocks:
        if any(not 0 <= i < n for i in blk.indices):
            out.append(f"search block {blk.name}: index out of range")
    return out


def check(model: ManifoldModel) -> ManifoldModel:
    bad = validate(model)
    if bad:
        raise CatalogValidationError(model.name, bad)
    return model


# --- fixture builders ------------------------------------------------------------

def _unit(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def _form_from_blocks(*blocks):
    return IntersectionForm.block_sum(*blocks)


@lru_cache(maxsize=None)
def cp2() -> ManifoldModel:
    form = IntersectionForm.diagonal((1,))
    return ManifoldModel("cp2", form, ("h",), title="complex projective plane",
                         formula="cp2", surfaces=(Surface("h", (1,), 0, True),),
                         reflection_spheres=((1,),))


@lru_cache(maxsize=None)
def cp2cp2bar() -> ManifoldModel:
    form = IntersectionForm.diagonal((1, -1))
    return ManifoldModel("cp2cp2bar", form, ("h", "e"), title="CP2 # -CP2",
                         formula="cp2cp2bar",
                         surfaces=(Surface("h", (1, 0), 0), Surface("e", (0, 1), 0)),
                         reflection_spheres=((1, 0), (0, 1)))


@lru_cache(maxsize=None)
def s2xs2() -> ManifoldModel:
    form = IntersectionForm(hyperbolic(1))
    return ManifoldModel("s2xs2", form, ("x", "y"), title="S2 x S2", formula="s2xs2",
                         surfaces=(Surface("x", (1, 0), 0), Surface("y", (0, 1), 0)),
                         search_blocks=(SearchBlock("h", (0, 1)),))


def _cp2k(k: int) -> ManifoldModel:
    n = k + 1
    form = IntersectionForm.diagonal((1,) + (-1,) * k)
    labels = ("h",) + tuple(f"e{i}" for i in range(1, n))
    spheres = [_unit(n, i) for i in range(n)]
    spheres.append((1, 1, 1) + (0,) * (k - 2))
    spheres.append((2, 1, 1) + (0,) * (k - 2))
    if k == 3:
        spheres.append((1, 1, 1, 1))
    surfaces = tuple(Surface(lab, _unit(n, i), 0) for i, lab in enumerate(labels))
    return ManifoldModel(f"cp2x{k}", form, labels, title=f"CP2 # {k}(-CP2)",
                         formula="cp2k", surfaces=surfaces,
                         reflection_spheres=tuple(spheres),
                         permutable=tuple(range(1, n)))


@lru_cache(maxsize=None)
def cp2x2() -> ManifoldModel:
    return _cp2k(2)


@lru_cache(maxsize=None)
def cp2x3() -> ManifoldModel:
    return _cp2k(3)


@lru_cache(maxsize=None)
def xn(n: int = 1) -> ManifoldModel:
    form = IntersectionForm(hyperbolic(1))
    symp = n == 1
    return ManifoldModel(
        "xn", form, ("x", "y"), title="exotic homology S2 x S2", formula="xn",
        simple_type=True, adjunction_applicable=True, symplectic=symp,
        params=(("n", n),),
        surfaces=(Surface("x", (1, 0), 2, symp), Surface("y", (0, 1), 2, symp)),
        basic_classes=tuple(xn_basic_classes(n)),
        search_blocks=(SearchBlock("h", (0, 1)),))


def _elliptic_form(nucleus, n_hyp, n_e8):
    return _form_from_blocks(nucleus, *([((0, 1), (1, 0))] * n_hyp),
                             *([negative_e8()] * n_e8))


def _elliptic_labels(first, n_hyp, n_e8):
    labels = list(first)
    for i in range(1, n_hyp + 1):
        labels += [f"x{i}", f"f{i}"]
    for b in range(1, n_e8 + 1):
        labels += [f"r{b}_{j}" for j in range(1, 9)]
    return tuple(labels)


def _hyperbolic_surfaces(n, n_hyp):
    out, blocks = [], []
    for i in range(n_hyp):
        ix, iff = 2 + 2 * i, 3 + 2 * i
        out += [Surface(f"x{i + 1}", _unit(n, ix), 1), Surface(f"f{i + 1}", _unit(n, iff), 1)]
        blocks.append(SearchBlock(f"h{i + 1}", (ix, iff)))
    return out, blocks


def _e8_roots(n, start, n_e8):
    return [_unit(n, start + 8 * b + j) for b in range(n_e8) for j in range(8)]


@lru_cache(maxsize=None)
def enk(n: int = 2, m: int = 1) -> ManifoldModel:
    """Knot surgery E(n)_K along the torus knot T(2, 2m+1); m = 0 gives E(n)."""
    if n < 2 or m < 0:
        raise ValueError("need n >= 2 and m >= 0")
    n_hyp, n_e8 = 2 * n - 2, n
    form = _elliptic_form(((-n, 1), (1, 0)), n_hyp, n_e8)
    rank = form.rank
    labels = _elliptic_labels(("S", "F"), n_hyp, n_e8)
    hyp, blocks = _hyperbolic_surfaces(rank, n_hyp)
    surfaces = [Surface("S", _unit(rank, 0), m, True), Surface("F", _unit(rank, 1), 1, True)]
    spheres = _e8_roots(rank, 2 + 2 * n_hyp, n_e8)
    if m == 0 and n == 2:
        spheres.insert(0, _unit(rank, 0))
    name = "k3" if (n, m) == (2, 0) else "enk"
    return ManifoldModel(
        name, form, labels, title=f"knot surgery on E({n}) along T(2,{2 * m + 1})",
        simple_type=True, adjunction_applicable=True, symplectic=True,
        params=(("n", n), ("m", m)),
        surfaces=tuple(surfaces + hyp),
        basic_classes=tuple(enk_basic_classes(n, m)),
        reflection_spheres=tuple(spheres),
        search_blocks=(SearchBlock("nucleus", (0, 1)),) + tuple(blocks),
        inferred=("section S has square -n and genus m; hyperbolic blocks are "
                  "spanned by pairs of tori meeting once",))


def k3() -> ManifoldModel:
    return enk(2, 0)


@lru_cache(maxsize=None)
def e2p(p: int = 3) -> ManifoldModel:
    """Logarithmic transform E(2)_p, p odd; z is the multiple-fiber class."""
    if p < 1 or p % 2 == 0:
        raise ValueError("p must be odd and >= 1")
    form = _elliptic_form(((-2, 1), (1, 0)), 2, 2)
    rank = form.rank
    labels = _elliptic_labels(("w", "z"), 2, 2)
    hyp, blocks = _hyperbolic_surfaces(rank, 2)
    surfaces = [Surface("w", _unit(rank, 0), None), Surface("z", _unit(rank, 1), 1, True)]
    return ManifoldModel(
        "e2p", form, labels, title=f"logarithmic transform E(2)_{p}",
        simple_type=True, adjunction_applicable=True, symplectic=True,
        params=(("p", p),),
        surfaces=tuple(surfaces + hyp),
        basic_classes=tuple(e2p_basic_classes(p)),
        reflection_spheres=tuple(_e8_roots(rank, 6, 2)),
        search_blocks=(SearchBlock("nucleus", (0, 1)),) + tuple(blocks),
        inferred=("class w dual to z has square -2 and unknown genus",))


@lru_cache(maxsize=None)
def zn(n: int = 1) -> ManifoldModel:
    """The exotic CP2 # 2(-CP2) family; n = 1 is the symplectic member ``ap``."""
    form = IntersectionForm(((0, 1, 0), (1, 0, 0), (0, 0, -1)))
    kappa = (2, 4, 3)
    symp = n == 1
    surfaces = (
        Surface("B", (1, 0, 0), 2, True),
        Surface("C", (0, 1, 0), 3, True),
        Surface("D", (0, 0, 1), 2, True),
        Surface("A", (2, 1, -2), 2, True),
    )
    return ManifoldModel(
        "ap" if n == 1 else "zn", form, ("B", "C", "D"),
        title="exotic CP2 # 2(-CP2)", simple_type=True, adjunction_applicable=True,
        symplectic=symp, params=(("n", n),), surfaces=surfaces,
        basic_classes=tuple(family_basic_classes(kappa, n)),
        relations=(Relation("A", (("B", 2), ("C", 1), ("D", -2))),),
        constructions=(Construction("annulus", (1, 1, -1), 5),
                       Construction("braided-torus", (1, 0, 1), 3)),
        conjectures=("no homologically essential embedded spheres or tori",
                     "genus function independent of n"))


def ap() -> ManifoldModel:
    return zn(1)


@lru_cache(maxsize=None)
def vn(n: int = 1) -> ManifoldModel:
    """The exotic CP2 # 3(-CP2) family; n = 1 is the symplectic member ``bk``."""
    form = IntersectionForm(((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1)))
    kappa = (2, 2, 1, 1)
    symp = n == 1
    surfaces = (
        Surface("B", (1, 0, 0, 0), 2, True),
        Surface("C", (0, 1, 0, 0), 2, True),
        Surface("D1", (0, 0, 1, 0), 1, True),
        Surface("D2", (0, 0, 0, 1), 1, True),
        Surface("A", (1, 1, -1, -1), 2, True, inferred=True),
        Surface("R", (0, 0, 1, -1), 0, inferred=True),
    )
    return ManifoldModel(
        "bk" if n == 1 else "vn", form, ("B", "C", "D1", "D2"),
        title="exotic CP2 # 3(-CP2)", simple_type=True, adjunction_applicable=True,
        symplectic=symp, params=(("n", n),), surfaces=surfaces,
        basic_classes=tuple(family_basic_classes(kappa, n)),
        reflection_spheres=((0, 0, 1, -1),),
        relations=(Relation("A", (("B", 1), ("C", 1), ("D1", -1), ("D2", -1))),),
        inferred=("pairings B.Di and C.Di are not stated and are taken to be 0",
                  "A = B + C - D1 - D2 follows from the stated pairings and kappa(A) = 2",
                  "the (-2)-sphere disjoint from A is taken to be D1 - D2"),
        conjectures=("genus function independent of n",))


def bk() -> ManifoldModel:
    return vn(1)


BUILDERS = {
    "cp2": lambda **kw: cp2(),
    "cp2cp2bar": lambda **kw: cp2cp2bar(),
    "s2xs2": lambda **kw: s2xs2(),
    "cp2x2": lambda **kw: cp2x2(),
    "cp2x3": lambda **kw: cp2x3(),
    "xn": lambda n=None, **kw: xn(n or 1),
    "k3": lambda **kw: k3(),
    "en": lambda n=None, **kw: enk(n or 2, 0),
    "enk": lambda n=None, m=None, **kw: enk(n or 2, 1 if m is None else m),
    "e2p": lambda p=None, **kw: e2p(p or 3),
    "ap": lambda **kw: ap(),
    "zn": lambda n=None, **kw: zn(n or 1),
    "bk": lambda **kw: bk(),
    "vn": lambda n=None, **kw: vn(n or 1),
}

BUNDLED = ("cp2", "cp2cp2bar", "s2xs2", "cp2x2", "cp2x3", "xn", "k3", "enk", "e2p",
           "ap", "bk")


def builtin_models() -> List[ManifoldModel]:
    return [BUILDERS[name]() for name in BUNDLED]


# --- text format -------------------------------------------------------------------

def _nums(v) -> str:
    return " ".join(str(x) for x in v)


def dumps(models: Sequence[ManifoldModel]) -> str:
    out = [f"schema {SCHEMA_VERSION}"]
    for m in models:
        out.append("")
        out.append(f"model {m.name}")
        ind = "  "
        if m.title:
            out.append(f"{ind}title {m.title}")
        out.append(f"{ind}b1 {m.b1}")
        flags = [f for f, on in (("simple_type", m.simple_type),
                                 ("adjunction", m.adjunction_applicable),
                                 ("symplectic", m.symplectic)) if on]
        out.append(f"{ind}flags {' '.join(flags) if flags else '-'}")
        out.append(f"{ind}formula {m.formula or 'none'}")
        for k, v in m.params:
            out.append(f"{ind}param {k} {v}")
        out.append(f"{ind}basis {' '.join(m.basis_labels)}")
        out.append(f"{ind}gram")
        out.extend(f"{ind}  {_nums(row)}" for row in m.form.gram)
        for s in m.surfaces:
            tags = "".join(t for t, on in ((" symplectic", s.symplectic),
                                            (" inferred", s.inferred)) if on)
            g = "?" if s.genus is None else s.genus
            out.append(f"{ind}surface {s.label} {g}{tags} : {_nums(s.coords)}")
        for bc in m.basic_classes:
            out.append(f"{ind}basic {bc.id} {bc.sw_value} : {_nums(bc.kappa)}")
        for s in m.reflection_spheres:
            out.append(f"{ind}reflect : {_nums(s)}")
        if m.permutable:
            out.append(f"{ind}permute {_nums(m.permutable)}")
        for r in m.relations:
            terms = " ".join(f"{lab}:{c}" for lab, c in r.terms)
            out.append(f"{ind}relation {r.target} = {terms}")
        for c in m.constructions:
            out.append(f"{ind}construction {c.name} {c.genus} : {_nums(c.coords)}")
        for b in m.search_blocks:
            out.append(f"{ind}block {b.name} : {_nums(b.indices)}")
        for t in m.inferred:
            out.append(f"{ind}inferred {t}")
        for t in m.conjectures:
            out.append(f"{ind}conjecture {t}")
        out.append("end")
    return "\n".join(out) + "\n"


class _Line:
    def __init__(self, raw: str, lineno: int, path):
        self.raw = raw
        self.lineno = lineno
        self.path = path
        self.text = "" if raw.lstrip().startswith("#") else raw.rstrip()

    def error(self, msg, token=None):
        col = 1
        if token is not None and token in self.raw:
            col = self.raw.index(token) + 1
        else:
            col = len(self.raw) - len(self.raw.lstrip()) + 1
        return CatalogParseError(msg, self.lineno, col, self.path)

    def ints(self, tokens):
        out = []
        for t in tokens:
            try:
                out.append(int(t))
            except ValueError:
                raise self.error(f"expected an integer, got {t!r}", t) from None
        return tuple(out)

    def split_colon(self, head_tokens):
        if ":" not in self.text:
            raise self.error("expected ':' before coordinates")
        left, right = self.text.split(":", 1)
        head = left.split()[1:]
        if len(head) < head_tokens:
            raise self.error("too few fields before ':'")
        return head, self.ints(right.split())


def _parse_model(lines: List[_Line], name: str, start: _Line) -> ManifoldModel:
    kw: Dict[str, object] = dict(title="", b1=0, formula=None)
    flags = set()
    basis = None
    gram_rows: List[Tuple[int, ...]] = []
    gram_line = None
    lists = {k: [] for k in ("params", "surfaces", "basic", "reflect", "relations",
                             "constructions", "blocks", "inferred", "conjectures")}
    permutable: Tuple[int, ...] = ()
    i = 0
    while i < len(lines):
        ln = lines[i]
        toks = ln.text.split()
        key, rest = toks[0], toks[1:]
        tail = ln.text.strip()[len(key):].strip()
        if key == "title":
            kw["title"] = tail
        elif key == "b1":
            if len(rest) != 1:
                raise ln.error("b1 takes one integer")
            kw["b1"] = ln.ints(rest)[0]
        elif key == "flags":
            for f in rest:
                if f == "-":
                    continue
                if f not in ("simple_type", "adjunction", "symplectic"):
                    raise ln.error(f"unknown flag {f!r}", f)
                flags.add(f)
        elif key == "formula":
            if len(rest) != 1:
                raise ln.error("formula takes one name")
            kw["formula"] = None if rest[0] == "none" else rest[0]
        elif key == "param":
            if len(rest) != 2:
                raise ln.error("param takes a name and an integer")
            lists["params"].append((rest[0], ln.ints(rest[1:])[0]))
        elif key == "basis":
            if not rest:
                raise ln.error("empty basis")
            basis = tuple(rest)
        elif key == "gram":
            if basis is None:
                raise ln.error("'basis' must precede 'gram'")
            gram_line = ln
            for r in range(len(basis)):
                i += 1
                if i >= len(lines):
                    raise ln.error("gram matrix ends early")
                row = lines[i].ints(lines[i].text.split())
                if len(row) != len(basis):
                    raise lines[i].error(f"gram row has {len(row)} entries, expected {len(basis)}")
                gram_rows.append(row)
        elif key == "surface":
            head, coords = ln.split_colon(2)
            label, g, *tags = head
            for t in tags:
                if t not in ("symplectic", "inferred"):
                    raise ln.error(f"unknown surface tag {t!r}", t)
            genus = None if g == "?" else ln.ints([g])[0]
            lists["surfaces"].append(Surface(label, coords, genus, "symplectic" in tags,
                                             "inferred" in tags))
        elif key == "basic":
            head, kappa = ln.split_colon(2)
            value = ln.ints(head[1:2])[0]
            if value == 0:
                raise ln.error("basic class needs a non-zero SW value", head[1])
            lists["basic"].append(BasicClass(head[0], kappa, value))
        elif key == "reflect":
            _, coords = ln.split_colon(0)
            lists["reflect"].append(coords)
        elif key == "permute":
            permutable = ln.ints(rest)
        elif key == "relation":
            if len(rest) < 3 or rest[1] != "=":
                raise ln.error("expected 'relation <target> = <label>:<coef> ...'")
            terms = []
            for t in rest[2:]:
                lab, sep, c = t.partition(":")
                if not sep:
                    raise ln.error(f"expected <label>:<coef>, got {t!r}", t)
                terms.append((lab, ln.ints([c])[0]))
            lists["relations"].append(Relation(rest[0], tuple(terms)))
        elif key == "construction":
            head, coords = ln.split_colon(2)
            lists["constructions"].append(Construction(head[0], coords, ln.ints(head[1:2])[0]))
        elif key == "block":
            head, idx = ln.split_colon(1)
            lists["blocks"].append(SearchBlock(head[0], idx))
        elif key == "inferred":
            lists["inferred"].append(tail)
        elif key == "conjecture":
            lists["conjectures"].append(tail)
        else:
            raise ln.error(f"unknown key {key!r}", key)
        i += 1
    if basis is None or not gram_rows:
        raise start.error(f"model {name!r} needs 'basis' and 'gram'")
    try:
        form = IntersectionForm(tuple(gram_rows))
    except ValueError as exc:
        raise CatalogValidationError(name, [str(exc)]) from None
    return ManifoldModel(
        name, form, basis, title=kw["title"], b1=kw["b1"],
        simple_type="simple_type" in flags, adjunction_applicable="adjunction" in flags,
        symplectic="symplectic" in flags, formula=kw["formula"],
        params=tuple(lists["params"]), surfaces=tuple(lists["surfaces"]),
        basic_classes=tuple(lists["basic"]), reflection_spheres=tuple(lists["reflect"]),
        permutable=permutable, relations=tuple(lists["relations"]),
        constructions=tuple(lists["constructions"]), search_blocks=tuple(lists["blocks"]),
        inferred=tuple(lists["inferred"]), conjectures=tuple(lists["conjectures"]))


def loads(text: str, path=None, check_models: bool = True) -> List[ManifoldModel]:
    lines = [_Line(raw, k, path) for k, raw in enumerate(text.splitlines(), 1)]
    lines = [ln for ln in lines if ln.text.strip()]
    if not lines or lines[0].text.split()[0] != "schema":
        where = lines[0] if lines else _Line("", 1, path)
        raise where.error("file must start with 'schema <version>'")
    head = lines[0].text.split()
    if len(head) != 2 or head[1] != str(SCHEMA_VERSION):
        raise lines[0].error(f"unsupported schema {' '.join(head[1:])!r}")
    models: List[ManifoldModel] = []
    i = 1
    while i < len(lines):
        ln = lines[i]
        toks = ln.text.split()
        if toks[0] != "model" or len(toks) != 2:
            raise ln.error("expected 'model <name>'")
        body = []
        i += 1
        while i < len(lines) and lines[i].text.split()[0] != "end":
            if lines[i].text.split()[0] == "model":
                raise lines[i].error("missing 'end' before next model")
            body.append(lines[i])
            i += 1
        if i >= len(lines):
            raise ln.error(f"model {toks[1]!r} is missing 'end'")
        if any(m.name == toks[1] for m in models):
            raise ln.error(f"duplicate model {toks[1]!r}", toks[1])
        models.append(_parse_model(body, toks[1], ln))
        i += 1
    if check_models:
        for m in models:
            check(m)
    return models


def load(path, check_models: bool = True) -> List[ManifoldModel]:
    path = Path(path)
    return loads(path.read_text(), str(path), check_models)


def save(models: Sequence[ManifoldModel], path) -> None:
    Path(path).write_text(dumps(models))


def bundled_path() -> Path:
    return Path(str(resources.files("mingenus") / "data" / "fixtures.cat"))


@lru_cache(maxsize=8)
def _catalog(path: str) -> Dict[str, ManifoldModel]:
    return {m.name: m for m in load(path)}


def catalog_path() -> Path:
    override = os.environ.get(CATALOG_ENV)
    return Path(override) if override else bundled_path()


def get_model(name: str, n: Optional[int] = None, m: Optional[int] = None,
              p: Optional[int] = None) -> ManifoldModel:
    """Look a model up in the active catalog; family parameters build it fresh."""
    if any(x is not None for x in (n, m, p)):
        if name not in BUILDERS:
            raise UnknownManifold(name)
        return BUILDERS[name](n=n, m=m, p=p)
    models = _catalog(str(catalog_path()))
    if name in models:
        return models[name]
    if name in BUILDERS:
        return BUILDERS[name]()
    raise UnknownManifold(name)


def model_names() -> List[str]:
    return sorted(set(_catalog(str(catalog_path()))) | set(BUILDERS))


if __name__ == "__main__":
    header = "# bundled manifold fixtures; regenerate with python -m mingenus.catalog\n"
    bundled_path().write_text(header + dumps(builtin_models()))
