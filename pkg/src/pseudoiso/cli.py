"""Command-line front end.

Exit codes: 0 ok, 1 parse error, 2 domain or precondition failure,
3 partial results, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import curve as cv
from . import revolution as rv
from . import surface as sf
from . import verification
from .core import CausalClass, Vec3, causal_class
from .errors import (
    DegenerateMetric,
    InvalidParams,
    ParseError,
    PseudoIsoError,
    UnsupportedClass,
    ZeroCurvature,
)
from .expr import dump, parse, to_string
from .mesh import Mesh, fmt, obj_text, sample_mesh

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_PARTIAL, EXIT_VERIFY = 0, 1, 2, 3, 4

CURVE_COLUMNS = ("s", "x", "y", "z", "kappa", "tau", "Tx", "Ty", "Tz", "Nx", "Ny", "Nz")
SURFACE_COLUMNS = ("u1", "u2", "x", "y", "z", "g11", "g12", "g22", "h11", "h12", "h22", "K", "H")

# options whose values may start with '-', e.g. ``--range -1:1``
_VALUE_OPTS = {"--range", "--vector", "--K0", "--H0", "--c1", "--c2", "--tol", "--sign"}


class UsageError(ValueError):
    pass


# -- argument helpers -------------------------------------------------------


def parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(p) for p in text.split(":"))
    except ValueError:
        raise UsageError(f"range must look like a:b, got {text!r}") from None
    if not lo < hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def parse_grid(text: str) -> tuple[int, int]:
    try:
        nu, nv = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"grid must look like NxM, got {text!r}") from None
    if nu < 2 or nv < 2:
        raise UsageError(f"grid needs at least 2 samples per side, got {text!r}")
    return nu, nv


def split_triple(text: str, what: str) -> list[str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"{what} needs three comma-separated components, got {len(parts)}")
    return parts


def _num(x) -> str:
    return "" if x is None or not math.isfinite(x) else fmt(x)


def _json_clean(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _json_clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_clean(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_json_clean(obj), indent=2, allow_nan=False) + "\n"


def emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands ---------------------------------------------------------------


def cmd_parse(args) -> int:
    variables = [v for v in args.vars.split(",") if v]
    ast = parse(args.expr, variables)
    print(dump(ast.root), end="" if dump(ast.root).endswith("\n") else "\n")
    print(f"= {to_string(ast.root)}")
    return EXIT_OK


def _curve_from_args(args) -> cv.CurveJet:
    x, y, z = split_triple(args.curve, "--curve")
    return cv.CurveJet.from_exprs(x, y, z, args.var, parse_range(args.range))


def cmd_classify(args) -> int:
    if args.vector is not None:
        try:
            comps = [float(p) for p in split_triple(args.vector, "--vector")]
        except ValueError:
            raise UsageError(f"--vector needs three numbers, got {args.vector!r}") from None
        print(causal_class(Vec3(*comps)))
        return EXIT_OK
    c = _curve_from_args(args)
    cls = cv.classify_curve(c, args.n)
    if cls is CausalClass.LIGHTLIKE:
        sign, c0 = cv.lightlike_plane(c, args.n)
        print(f"lightlike, plane x{'+' if sign > 0 else '-'}y={fmt(c0)}")
        return EXIT_OK
    if cls is CausalClass.ISOTROPIC:
        print("isotropic")
        return EXIT_OK
    adm = "admissible" if cv.is_admissible(c, args.n) else "not admissible"
    arc = "arc-length" if cv.is_arclength(c, args.n) else "not arc-length"
    print(f"{cls}, {adm}, {arc}")
    return EXIT_OK


def cmd_curve(args) -> int:
    c = _curve_from_args(args)
    cls = cv.classify_curve(c, args.n)
    if cls not in (CausalClass.SPACELIKE, CausalClass.TIMELIKE):
        raise UnsupportedClass(f"curve is {cls}; invariants need a spacelike or timelike curve")
    rows, points, partial = [], [], False
    for s in c.samples(args.n):
        s = float(s)
        p, d1, d2, _ = c.jets(s)
        points.append(tuple(p))
        try:
            inv = cv.curve_invariants(c, s)
            fr = cv.frenet_frame(c, s)
        except ZeroCurvature:
            partial = True
            kappa = cv._kappa(cv._unit_class(d1, s), d2)
            rows.append([fmt(s), *map(fmt, p), fmt(kappa), "", *map(fmt, d1), "", "", ""])
            continue
        rows.append([fmt(s), *map(fmt, p), fmt(inv.kappa), fmt(inv.tau), *map(fmt, fr.T),
                     *map(fmt, fr.N)])
    emit(csv_text(CURVE_COLUMNS, rows), args.out)
    if args.figure:
        from .plotting import plot_curve

        plot_curve(points, args.figure, c.label)
    if partial:
        print("warning: zero curvature at some samples; tau and N left empty", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_surface(args) -> int:
    variables = tuple(v.strip() for v in args.vars.split(","))
    if len(variables) != 2:
        raise UsageError("--vars needs two parameter names")
    ranges = [parse_range(r) for r in (args.range or [])]
    if len(ranges) != 2:
        raise UsageError("give --range twice, one per parameter")
    x, y, z = split_triple(args.surface, "--surface")
    sj = sf.SurfaceJet.from_exprs(x, y, z, variables, tuple(ranges))
    grid = parse_grid(args.grid)
    print(f"parameter order: ({variables[0]}, {variables[1]}); "
          f"{'H uses the top-view orientation' if args.oriented else 'swapping parameters flips H'}",
          file=sys.stderr)
    mesh = sample_mesh(sj, grid, with_curvatures=False)
    rows, Ks, Hs, partial = [], [], [], False
    (u0, u1), (v0, v1) = ranges
    for i, a in enumerate(np.linspace(u0, u1, grid[0])):
        for j, b in enumerate(np.linspace(v0, v1, grid[1])):
            p = mesh.vertices[i * grid[1] + j]
            try:
                ff = sf.fundamental_forms(sj, (a, b), args.oriented)
                K, H = sf.curvatures_from_forms(ff)
                forms = [ff.g11, ff.g12, ff.g22, ff.h11, ff.h12, ff.h22]
            except DegenerateMetric:
                partial = True
                K = H = math.nan
                forms = [None] * 6
            Ks.append(K)
            Hs.append(H)
            rows.append([fmt(a), fmt(b), *map(fmt, p), *map(_num, forms), _num(K), _num(H)])
    mesh.attributes = {"K": Ks, "H": Hs}
    _write_mesh(mesh, rows, SURFACE_COLUMNS, args.format, args.out)
    if args.figure:
        from .plotting import plot_surface

        plot_surface(mesh, args.figure, args.color_by, sj.label)
    if partial:
        print("warning: degenerate metric at some samples; forms left empty", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def _mesh_json(mesh: Mesh) -> dict:
    return {
        "shape": list(mesh.shape),
        "vertices": [list(v) for v in mesh.vertices],
        "quads": [list(q) for q in mesh.quads],
        **{k: list(v) for k, v in mesh.attributes.items()},
    }


def _write_mesh(mesh, rows, header, fmt_name, path):
    if fmt_name == "obj":
        emit(obj_text(mesh), path)
    elif fmt_name == "csv":
        emit(csv_text(header, rows), path)
    else:
        emit(dumps(_mesh_json(mesh)), path)


_FAMILIES = {
    "constant_K": rv.ConstantK,
    "constant_H": rv.ConstantH,
    "flat": rv.Flat,
    "minimal": rv.Minimal,
    "parabolic_sphere": rv.ParabolicSphere,
}


def family_from_args(args):
    name = args.family
    cls = _FAMILIES[name]
    kw = {k: getattr(args, k) for k in ("c1", "c2") if getattr(args, k) is not None}
    if name == "constant_K":
        if args.K0 is None:
            raise InvalidParams("constant_K needs --K0")
        return cls(args.K0, sign=args.sign, **kw)
    if name == "constant_H":
        if args.H0 is None:
            raise InvalidParams("constant_H needs --H0")
        return cls(args.H0, **kw)
    if args.K0 is not None or args.H0 is not None:
        raise InvalidParams(f"{name} takes only --c1 and --c2")
    return cls(**kw)


def cmd_revolve(args) -> int:
    ranges = [parse_range(r) for r in (args.range or ["1:2", "-1:1"])]
    if len(ranges) == 1:
        ranges.append((-1.0, 1.0))
    if len(ranges) != 2:
        raise UsageError("give --range at most twice: profile range, then rotation range")
    u_range, v_range = ranges
    grid = parse_grid(args.grid)
    kind = rv.ProfileKind(args.kind)
    if (args.family is None) == (args.profile is None):
        raise UsageError("give exactly one of --family or --profile")
    if args.family is not None:
        fam = family_from_args(args)
        prof = rv.solve_profile(fam, u_range, kind)
        name, params = fam.name, rv.family_params(fam)
        K0, H0 = rv.targets(fam)
    else:
        prof = rv.Profile.from_expr(args.profile, u_range, kind)
        name, params = "profile", {"f": args.profile}
        K0, H0 = args.K0, args.H0
    sj = rv.make_revolution(prof, v_range)
    rep = rv.surface_report(sj, name, params, K0, H0, grid, args.tol if args.tol else 1e-8)
    summary = {
        "family": rep.family,
        "params": rep.params,
        "profile": prof.text,
        "kind": kind.value,
        "grid": list(grid),
        "u_range": list(u_range),
        "v_range": list(v_range),
        "K_stats": rep.K_stats,
        "H_stats": rep.H_stats,
        "max_abs_K_minus_K0": rep.max_abs_K_minus_K0,
        "max_abs_H_minus_H0": rep.max_abs_H_minus_H0,
        "max_abs_H2_minus_K": rep.max_abs_H2_minus_K,
    }
    if args.out is not None:
        mesh = sample_mesh(sj, grid)
        rows = []
        for idx, p in enumerate(mesh.vertices):
            rows.append([*map(fmt, p), _num(mesh.attributes["K"][idx]), _num(mesh.attributes["H"][idx])])
        _write_mesh(mesh, rows, ("x", "y", "z", "K", "H"), args.format, args.out)
        if args.figure:
            from .plotting import plot_surface

            plot_surface(mesh, args.figure, args.color_by, f"{name}: f = {prof.text}")
    elif args.figure:
        from .plotting import plot_surface

        plot_surface(sample_mesh(sj, grid), args.figure, args.color_by, f"{name}: f = {prof.text}")
    emit(dumps(summary), args.summary)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.tol is not None and not args.tol > 0:
        raise UsageError("--tol must be positive")
    checks = verification.select(args.suite)
    if args.list:
        for c in checks:
            print(f"{c.name}\t[{c.criterion}]\t{c.paper_ref}")
        return EXIT_OK
    results = [verification.run_check(c, args.tol) for c in checks]
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.measured:.3e} {r.comparison} "
              f"{r.tolerance:g}", file=sys.stderr)
    ok = all(r.passed for r in results)
    report = {
        "suite": args.suite,
        "tol_override": args.tol,
        "passed": ok,
        "checks": [{**r.to_dict(), "pass": r.passed} for r in results],
    }
    for c in report["checks"]:
        del c["passed"]
    emit(dumps(report), args.out)
    return EXIT_OK if ok else EXIT_VERIFY


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pseudoiso", description="Differential geometry of pseudo-isotropic space.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="dump the syntax tree of an expression")
    p.add_argument("expr")
    p.add_argument("--vars", default="s", help="comma-separated variable names (default: s)")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("classify", help="causal class of a vector or a curve")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--vector", help="a,b,c")
    g.add_argument("--curve", help='"x(s),y(s),z(s)"')
    p.add_argument("--range", default="0:1")
    p.add_argument("-n", "--n", type=int, default=64)
    p.add_argument("--var", default="s")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("curve", help="invariant table of an arc-length curve (CSV)")
    p.add_argument("--curve", required=True)
    p.add_argument("--range", default="0:1")
    p.add_argument("-n", "--n", type=int, default=101)
    p.add_argument("--var", default="s")
    p.add_argument("--out")
    p.add_argument("--figure", help="write a PNG of the curve")
    p.set_defaults(fn=cmd_curve)

    p = sub.add_parser("surface", help="fundamental forms and curvatures on a grid")
    p.add_argument("--surface", required=True)
    p.add_argument("--vars", default="u,v")
    p.add_argument("--range", action="append")
    p.add_argument("--grid", default="11x11")
    p.add_argument("--oriented", action="store_true", help="normalise h by the signed top-view Jacobian")
    p.add_argument("--format", choices=("csv", "obj", "json"), default="csv")
    p.add_argument("--out")
    p.add_argument("--figure")
    p.add_argument("--color-by", choices=("K", "H"), default="H")
    p.set_defaults(fn=cmd_surface)

    p = sub.add_parser("revolve", help="surface of revolution: mesh and curvature summary")
    p.add_argument("--family", choices=tuple(_FAMILIES))
    p.add_argument("--profile", help="explicit profile f(u)")
    p.add_argument("--K0", type=float)
    p.add_argument("--H0", type=float)
    p.add_argument("--c1", type=float)
    p.add_argument("--c2", type=float)
    p.add_argument("--sign", type=int, default=1, choices=(1, -1))
    p.add_argument("--kind", choices=("spacelike", "timelike"), default="spacelike")
    p.add_argument("--range", action="append", help="profile range, then rotation range")
    p.add_argument("--grid", default="50x50")
    p.add_argument("--tol", type=float)
    p.add_argument("--format", choices=("obj", "csv", "json"), default="obj")
    p.add_argument("--out", help="mesh output path")
    p.add_argument("--summary", help="JSON summary path (default: stdout)")
    p.add_argument("--figure")
    p.add_argument("--color-by", choices=("K", "H"), default="H")
    p.set_defaults(fn=cmd_revolve)

    p = sub.add_parser("verify", help="run the numerical acceptance checks")
    p.add_argument("--suite", choices=verification.SUITES, default="paper")
    p.add_argument("--tol", type=float, help="override every upper-bound tolerance")
    p.add_argument("--list", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)
    return ap


def _join_values(argv):
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_values(argv))
    if getattr(args, "n", 2) < 2:
        print("error: -n must be at least 2", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PseudoIsoError, UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
