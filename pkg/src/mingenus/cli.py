"""Command line front end.

Exit codes: 0 exact result (or success), 1 validation violations,
2 interval result, 3 unknown manifold, 4 bad coordinates, 5 other
domain error, 64 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import List, Optional, Sequence

from . import catalog
from .bounds import (adjunction_applicable, adjunction_lower, characteristic_sphere_obstruction,
                     furuta_char_bound)
from .errors import DimensionError, MinGenusError, UnknownManifold
from .formulas import GenusResult
from .genus import genus
from .profile import profile_search
from .reduction import orbit_bfs, reduce

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INTERVAL = 2
EXIT_UNKNOWN_MANIFOLD = 3
EXIT_BAD_COORDS = 4
EXIT_DOMAIN = 5
EXIT_USAGE = 64

OUTPUT_SCHEMA_VERSION = 1
TABLE_ROW_CAP = 500_000


class BadCoordinates(MinGenusError, ValueError):
    pass


class TableTooLarge(MinGenusError, ValueError):
    pass


def _model(name, n=None, m=None, p=None):
    return catalog.get_model(name, n=n, m=m, p=p)


def _coords(model, coords) -> tuple:
    try:
        a = tuple(int(x) for x in coords)
    except (TypeError, ValueError):
        raise BadCoordinates(f"coordinates must be integers, got {list(coords)}") from None
    if len(a) != model.rank:
        raise BadCoordinates(f"{model.name} has rank {model.rank}, got {len(a)} coordinates")
    return a


# --- library entry points -----------------------------------------------------------

def cmd_genus(manifold: str, coords: Sequence, n=None, m=None, p=None) -> GenusResult:
    model = _model(manifold, n, m, p)
    return genus(model, _coords(model, coords))


def cmd_reduce(manifold: str, coords: Sequence):
    model = _model(manifold)
    if model.formula != "cp2k":
        raise MinGenusError(f"reduction is defined for cp2x2 and cp2x3, not {manifold}")
    return reduce(_coords(model, coords))


def cmd_orbit(manifold: str, coords: Sequence, bound: int, n=None, m=None, p=None):
    model = _model(manifold, n, m, p)
    return orbit_bfs(model, _coords(model, coords), bound)


def cmd_bounds(manifold: str, coords: Sequence, n=None, m=None, p=None) -> List[dict]:
    model = _model(manifold, n, m, p)
    a = _coords(model, coords)
    out = []
    if adjunction_applicable(model):
        out.append(adjunction_lower(model, a).to_dict())
    if model.formula == "cp2k" and model.rank == 3:
        for cert in (characteristic_sphere_obstruction(a), furuta_char_bound(a)):
            if cert is not None:
                out.append(cert.to_dict())
    if not out:
        out.append({"value": 0, "source": "trivial", "inputs": {}})
    return out


def _table_classes(rank, r):
    return product(range(-r, r + 1), repeat=rank)


def _genus_row(args):
    model, a = args
    return a, genus(model, a)


def cmd_table(manifold: str, r: int, n=None, m=None, p=None, jobs: int = 1):
    model = _model(manifold, n, m, p)
    if r < 0:
        raise TableTooLarge("range must be non-negative")
    rows = (2 * r + 1) ** model.rank
    if rows > TABLE_ROW_CAP:
        raise TableTooLarge(f"{rows} rows exceed the cap of {TABLE_ROW_CAP}")
    classes = list(_table_classes(model.rank, r))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_genus_row, [(model, a) for a in classes], chunksize=256))
    return [(a, genus(model, a)) for a in classes]


def cmd_profile(manifold: str, bound: int, n=None, m=None, p=None, general=False):
    return profile_search(_model(manifold, n, m, p), bound, general=general)


def cmd_sw(manifold: str, n=None, m=None, p=None):
    return list(_model(manifold, n, m, p).basic_classes)


def cmd_validate(path) -> List[str]:
    """Violations of every model in a catalog file, prefixed by model name."""
    out = []
    for model in catalog.load(path, check_models=False):
        out.extend(f"{model.name}: {v}" for v in catalog.validate(model))
    return out


# --- formatting ----------------------------------------------------------------------

def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _envelope(kind, **payload):
    return {"schema_version": OUTPUT_SCHEMA_VERSION, "kind": kind, **payload}


def _fmt_table(model, rows, fmt) -> str:
    labels = list(model.basis_labels)
    if fmt == "json":
        return _dump(_envelope("table", manifold=model.name, basis=labels, rows=[
            {"class": list(a), **res.to_dict()} for a, res in rows]))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(labels + ["lower", "upper", "exact"])
        for a, res in rows:
            w.writerow(list(a) + [res.lower, "" if res.upper is None else res.upper,
                                  int(res.exact)])
        return buf.getvalue().rstrip("\n")
    lines = []
    for a, res in rows:
        lines.append(f"{' '.join(f'{x:>4}' for x in a)}  {res}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    class Parser(argparse.ArgumentParser):
        def error(self, message):
            self.print_usage(sys.stderr)
            self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")

    parser = Parser(prog="mingenus", description="Minimal genus of H2 classes.")
    parser.add_argument("--catalog", help="catalog file (overrides $MINGENUS_CATALOG)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    def family(sp):
        sp.add_argument("--n", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--p", type=int)

    def fmt(sp, default="text"):
        sp.add_argument("--format", choices=("json", "csv", "text"), default=default)

    sp = sub.add_parser("genus", help="minimal genus or certified interval")
    sp.add_argument("manifold")
    sp.add_argument("coords", nargs="*")
    family(sp)
    fmt(sp)

    sp = sub.add_parser("reduce", help="canonical orbit representative")
    sp.add_argument("manifold")
    sp.add_argument("coords", nargs="*")
    sp.add_argument("--trace", action="store_true")
    fmt(sp)

    sp = sub.add_parser("orbit", help="truncated orbit under licensed reflections")
    sp.add_argument("manifold")
    sp.add_argument("coords", nargs="*")
    sp.add_argument("--bound", type=int, required=True)
    family(sp)
    fmt(sp)

    sp = sub.add_parser("bounds", help="lower-bound certificates")
    sp.add_argument("manifold")
    sp.add_argument("coords", nargs="*")
    family(sp)
    fmt(sp)

    sp = sub.add_parser("table", help="genus table over a coordinate box")
    sp.add_argument("manifold")
    sp.add_argument("--range", type=int, required=True, dest="range_")
    sp.add_argument("--jobs", type=int, default=1)
    family(sp)
    fmt(sp, "json")

    sp = sub.add_parser("profile", help="genus profile search")
    sp.add_argument("manifold")
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--general", action="store_true",
                    help="search the whole coordinate box, not just the blocks")
    family(sp)
    fmt(sp)

    sp = sub.add_parser("sw", help="Seiberg-Witten basic classes")
    sp.add_argument("manifold")
    family(sp)
    fmt(sp)

    sp = sub.add_parser("validate", help="validate a catalog file")
    sp.add_argument("path")
    fmt(sp)
    return parser


def _fam(args):
    return dict(n=getattr(args, "n", None), m=getattr(args, "m", None),
                p=getattr(args, "p", None))


def run(args) -> int:
    out = sys.stdout
    c = args.command
    if c == "genus":
        res = cmd_genus(args.manifold, args.coords, **_fam(args))
        if args.format == "json":
            print(_dump(_envelope("genus", manifold=args.manifold,
                                  **{"class": [int(x) for x in args.coords]},
                                  result=res.to_dict())), file=out)
        else:
            print(res, file=out)
            print("  " + ", ".join(res.provenance), file=out)
        return EXIT_OK if res.exact else EXIT_INTERVAL
    if c == "reduce":
        end, trace = cmd_reduce(args.manifold, args.coords)
        if args.format == "json":
            payload = {"start": list(trace.start), "end": list(end)}
            if args.trace:
                payload["trace"] = trace.to_text().splitlines()
            print(_dump(_envelope("reduce", manifold=args.manifold, **payload)), file=out)
        else:
            print(" ".join(map(str, end)), file=out)
            if args.trace:
                print(trace.to_text(), end="", file=out)
        return EXIT_OK
    if c == "orbit":
        pts = cmd_orbit(args.manifold, args.coords, args.bound, **_fam(args))
        if args.format == "json":
            print(_dump(_envelope("orbit", manifold=args.manifold,
                                  classes=[list(x) for x in pts])), file=out)
        else:
            for x in pts:
                print(" ".join(map(str, x)), file=out)
        return EXIT_OK
    if c == "bounds":
        certs = cmd_bounds(args.manifold, args.coords, **_fam(args))
        if args.format == "json":
            print(_dump(_envelope("bounds", manifold=args.manifold, certificates=certs)),
                  file=out)
        else:
            for cert in certs:
                print(f"{cert['value']}  {cert['source']}  {cert['inputs']}", file=out)
        return EXIT_OK
    if c == "table":
        model = _model(args.manifold, **_fam(args))
        rows = cmd_table(args.manifold, args.range_, jobs=args.jobs, **_fam(args))
        print(_fmt_table(model, rows, args.format), file=out)
        return EXIT_OK
    if c == "profile":
        prof = cmd_profile(args.manifold, args.bound, general=args.general, **_fam(args))
        if args.format == "json":
            print(_dump(_envelope("profile", manifold=args.manifold, profile=prof.to_dict())),
                  file=out)
        else:
            print(prof, file=out)
        return EXIT_OK if all(prof.exact) else EXIT_INTERVAL
    if c == "sw":
        classes = cmd_sw(args.manifold, **_fam(args))
        if args.format == "json":
            print(_dump(_envelope("sw", manifold=args.manifold, basic_classes=[
                {"id": b.id, "kappa": list(b.kappa), "sw_value": b.sw_value}
                for b in classes])), file=out)
        else:
            for b in classes:
                print(f"{b.id}  {b.sw_value:+d}  kappa {' '.join(map(str, b.kappa))}", file=out)
        return EXIT_OK
    if c == "validate":
        bad = cmd_validate(args.path)
        if args.format == "json":
            print(_dump(_envelope("validate", path=args.path, violations=bad)), file=out)
        else:
            for v in bad:
                print(v, file=out)
        return EXIT_VIOLATIONS if bad else EXIT_OK
    raise AssertionError(c)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.catalog:
        os.environ[catalog.CATALOG_ENV] = args.catalog
    try:
        return run(args)
    except UnknownManifold as exc:
        print(f"error: unknown manifold {exc.args[0]!r}", file=sys.stderr)
        return EXIT_UNKNOWN_MANIFOLD
    except (BadCoordinates, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_COORDS
    except (MinGenusError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
