"""Command-line front end.

Every artifact embeds the run configuration and the library version, and
floats are written with 12 significant digits so that rerunning a
configuration reproduces its JSON and CSV output byte for byte (timings are
only recorded with ``--timings``).

Exit codes: 0 success, 1 usage or parse error, 2 budget exceeded,
3 numerical failure.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .contraction import asymptotic_length, contract, degenerate_ratios
from .decimate import decimate, decimate_lattice, log_rescale
from .errors import BudgetError, DecilimError, NumericError
from .hull import concave_hull, domain_grid
from .poly import LaurentPoly, coeff_stats, parse_poly
from .reference import (angle_gradient, decimation_limit_1xy, golden_limit,
                        smyth_constant)
from .ronkin import (amoeba_scan, certified_radius, decimation_limit,
                     mahler_measure, ronkin, tropicalization)

EXIT_USAGE, EXIT_BUDGET, EXIT_NUMERIC = 1, 2, 3


class UsageError(DecilimError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# formatting helpers

def fmt(x):
    """Float with 12 significant digits; non-finite values become strings."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(format(x, ".12g"))


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    return obj


def _config(args):
    skip = {"func"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _header(args):
    return {"version": __version__, "config": _config(args)}


def _write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _dump_json(args, payload, path=None):
    doc = dict(_header(args))
    doc.update(payload)
    text = json.dumps(_clean(doc), separators=(",", ":")) + "\n"
    _write_text(path if path is not None else args.output, text)


def _csv_text(header, rows, comment=None):
    buf = io.StringIO()
    if comment:
        for line in comment.splitlines():
            buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v
                    for v in row])
    return buf.getvalue()


def _off_text(fn, comment=""):
    verts, faces = fn.mesh()
    if fn.dim == 1:
        verts = np.column_stack([verts[:, 0], np.zeros(len(verts)),
                                 verts[:, 1]])
    lines = ["OFF"]
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"{len(verts)} {len(faces)} 0")
    for v in verts:
        lines.append(" ".join(format(float(a), ".12g") for a in v))
    for f in faces:
        lines.append(" ".join([str(len(f))] + [str(i) for i in f]))
    return "\n".join(lines) + "\n"


def _vector(text, name):
    try:
        return [float(a) for a in text.split(",")]
    except ValueError:
        raise UsageError(f"bad {name} {text!r}") from None


def _int_list(text):
    """Parse ``2,4,8`` or ``2..12``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise UsageError("empty N list")
    return out


def _load_poly(args):
    if args.poly_file:
        with open(args.poly_file) as fh:
            text = fh.read()
        try:
            return LaurentPoly.from_json(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError):
            return parse_poly(text.strip())
    if args.poly is None:
        raise UsageError("a polynomial is required (-f or --poly-file)")
    return parse_poly(args.poly)


def _pool(args):
    return ThreadPoolExecutor(max_workers=max(1, int(args.threads)))


def _budget(args):
    return args.budget_bits


# ---------------------------------------------------------------------------
# subcommands

def cmd_decimate(args):
    f = _load_poly(args)
    t0 = time.perf_counter()
    if args.lattice:
        lat = tuple(int(a) for a in args.lattice.split(","))
        fN = decimate_lattice(f, lat, budget=_budget(args))
        index = math.prod(lat)
    else:
        fN = decimate(f, args.N, method=args.method, budget=_budget(args))
        index = args.N ** f.dim
    elapsed = time.perf_counter() - t0
    st = coeff_stats(fN)
    payload = {
        "input": f.to_json(),
        "result": fN.to_json(),
        "poly": str(fN),
        "stats": {"height": str(st.height), "length": str(st.length),
                  "log_height": st.log_height, "term_count": st.term_count},
    }
    if args.timings:
        payload["seconds"] = elapsed
    _dump_json(args, payload)
    if args.points_csv:
        pts = log_rescale(fN, index)
        rows = [[*[str(a) for a in r], v] for r, v in pts.points]
        hdr = [f"r{i + 1}" for i in range(f.dim)] + ["value"]
        _write_text(args.points_csv, _csv_text(hdr, rows))
    return 0


def _hull_for(f, N, budget):
    fN = decimate(f, N, budget=budget)
    return concave_hull(log_rescale(fN, N ** f.dim, N))


def cmd_hull(args):
    f = _load_poly(args)
    D = _hull_for(f, args.N, _budget(args))
    payload = {
        "N": args.N,
        "maximum": D.maximum(),
        "generators": [[*map(float, p), v] for p, v in
                       zip(D.positions, D.values)],
        "facets": D.forms.tolist(),
        "faces": [list(face) for face in D.faces],
    }
    _dump_json(args, payload)
    if args.mesh:
        _write_text(args.mesh, _off_text(D, f"D_{args.N} of {f}"))
    return 0


def _is_1xy(f):
    return f == parse_poly("1+x+y")


def _evaluation_points(f, res):
    """Interior barycentric grid plus vertices of the Newton polytope."""
    D1 = concave_hull([(tuple(e), 0.0) for e in f.support])
    return domain_grid(D1, res)


def cmd_limit(args):
    f = _load_poly(args)
    Ns = _int_list(args.N_list) if args.N_list else [args.N]
    pts = _evaluation_points(f, args.res)
    tol = args.tol

    def limit_at(p):
        try:
            return decimation_limit(f, p, tol=tol)
        except NumericError:
            return math.nan

    with _pool(args) as pool:
        ref = np.array(list(pool.map(limit_at, pts)))
    use_closed = f.dim == 2 and _is_1xy(f)
    closed = None
    if use_closed:
        def closed_at(p):
            r, s = p
            if min(r, s) <= 1e-12 or r + s >= 1 - 1e-12:
                return limit_at(p)
            return decimation_limit_1xy(r, s)
        closed = np.array([closed_at(p) for p in pts])

    def row_for(N):
        t0 = time.perf_counter()
        D = _hull_for(f, N, _budget(args))
        vals = D.eval(pts)
        ok = np.isfinite(ref)
        dist = float(np.max(np.abs(vals[ok] - ref[ok]))) if ok.any() else math.nan
        B = max(hi - lo for lo, hi in f.degree_bounds()) + 1
        row = [N, dist, D.maximum(), certified_radius(f.dim, B, N)]
        if closed is not None:
            row.append(float(np.max(np.abs(vals - closed))))
        if args.timings:
            row.append(time.perf_counter() - t0)
        if args.mesh_prefix:
            _write_text(f"{args.mesh_prefix}_N{N}.off",
                        _off_text(D, f"D_{N} of {f}"))
        return row

    with _pool(args) as pool:
        rows = list(pool.map(row_for, sorted(Ns)))
    header = ["N", "sup_distance", "max_DN", "certified_radius"]
    if closed is not None:
        header.append("sup_distance_closed_form")
    if args.timings:
        header.append("seconds")
    m = mahler_measure(f, tol=1e-10).value if f.dim <= 2 else math.nan
    comment = (f"decilim {__version__}\nconfig {json.dumps(_clean(_config(args)), sort_keys=True)}\n"
               f"mahler_measure {fmt(m)}\nskipped_points {int(np.sum(~np.isfinite(ref)))}")
    _write_text(args.output, _csv_text(header, rows, comment))
    return 0


def cmd_ronkin(args):
    f = _load_poly(args)
    if args.at:
        u = _vector(args.at, "point")
        cv = ronkin(f, u, method=args.method, tol=args.tol, seed=args.seed,
                    budget=_budget(args))
        _dump_json(args, {"u": u, "value": cv.value, "radius": cv.radius,
                          "method": cv.method, "rigorous": cv.rigorous,
                          "N": cv.N})
        return 0
    if f.dim != 2:
        raise UsageError("surface sampling needs d = 2; use --at otherwise")
    box = _vector(args.box, "box")
    us = np.linspace(box[0], box[1], args.res)
    vs = np.linspace(box[2], box[3], args.res)
    grid = [(a, b) for b in vs for a in us]

    def val(p):
        return ronkin(f, p, method=args.method, tol=args.tol,
                      seed=args.seed, budget=_budget(args)).value

    with _pool(args) as pool:
        z = list(pool.map(val, grid))
    n = args.res
    faces = []
    for i in range(n - 1):
        for j in range(n - 1):
            a = i * n + j
            faces.append((a, a + 1, a + n + 1, a + n))
    lines = ["OFF", f"# Ronkin surface of {f}", f"{len(grid)} {len(faces)} 0"]
    for (a, b), c in zip(grid, z):
        lines.append(" ".join(format(float(t), ".12g") for t in (a, b, c)))
    for face in faces:
        lines.append("4 " + " ".join(map(str, face)))
    if args.mesh:
        _write_text(args.mesh, "\n".join(lines) + "\n")
    _dump_json(args, {"u": us.tolist(), "v": vs.tolist(),
                      "values": np.array(z).reshape(n, n).tolist()})
    return 0


def cmd_dual(args):
    f = _load_poly(args)
    u = np.array(_vector(args.at, "point"))
    fN = decimate(f, args.N, budget=_budget(args))
    D = concave_hull(log_rescale(fN, args.N ** f.dim))
    _dump_json(args, {
        "N": args.N, "u": u.tolist(),
        "neg_dual_at_neg_u": -D.dual(-u),
        "normalized_trop": tropicalization(fN, u) / args.N ** f.dim,
    })
    return 0


def cmd_amoeba(args):
    f = _load_poly(args)
    box = tuple(_vector(args.box, "box"))
    A = amoeba_scan(f, box=box, resolution=args.res, N=args.N,
                    budget=_budget(args))
    if args.format == "pgm":
        lines = ["P2", f"# decilim {__version__} "
                 f"config {json.dumps(_clean(_config(args)), sort_keys=True)}",
                 f"{args.res} {args.res}", "255"]
        for row in A.outside[::-1]:
            lines.append(" ".join("255" if c else "0" for c in row))
        _write_text(args.output, "\n".join(lines) + "\n")
    else:
        _dump_json(args, {
            "N": A.N, "box": list(A.box), "resolution": A.resolution,
            "components": A.n_components,
            "u": A.us.tolist(), "v": A.vs.tolist(),
            "outside": A.outside.astype(int).tolist(),
            "labels": A.labels.tolist(),
        })
    return 0


def cmd_contract(args):
    f = _load_poly(args)
    res = contract(f, args.N, seed=args.seed, budget=_budget(args))
    _dump_json(args, {"g": str(res.gN), "e": res.eN, "sign": res.sign,
                      "shift": list(res.shift), "g_json": res.gN.to_json()})
    return 0


def cmd_degenerate(args):
    f = _load_poly(args)
    rep = degenerate_ratios(f)
    _dump_json(args, {
        "resultant": str(rep.resultant),
        "has_nontrivial_cyclotomic": rep.has_nontrivial_cyclotomic,
        "witnesses": rep.witnesses,
        "cyclotomic_multiplicities": {str(k): v for k, v in
                                      sorted(rep.multiplicities.items())},
    })
    return 0


def cmd_asymlen(args):
    f = _load_poly(args)
    Ns = _int_list(args.N_list or str(args.N))
    rows = asymptotic_length(f, Ns, seed=args.seed, budget=_budget(args))
    m = mahler_measure(f, tol=1e-10).value if f.dim <= 2 else math.nan
    comment = (f"decilim {__version__}\nconfig "
               f"{json.dumps(_clean(_config(args)), sort_keys=True)}\n"
               f"mahler_measure {fmt(m)}")
    body = [[r.N, str(r.length), r.normalized_log, r.eN] for r in rows]
    _write_text(args.output, _csv_text(["N", "length", "normalized_log", "eN"],
                                       body, comment))
    return 0


def cmd_reference(args):
    payload = {}
    if args.smyth:
        payload["smyth_constant"] = smyth_constant(args.smyth)
    if args.at:
        r = _vector(args.at, "point")
        if len(r) == 1:
            payload["golden_limit"] = golden_limit(r[0])
        else:
            payload["decimation_limit_1xy"] = decimation_limit_1xy(
                r[0], r[1], args.terms)
    if args.gradient:
        u = _vector(args.gradient, "point")
        payload["angle_gradient"] = list(angle_gradient(u[0], u[1]))
    if not payload:
        raise UsageError("reference needs --smyth, --at or --gradient")
    _dump_json(args, payload)
    return 0


# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-f", "--poly", help="polynomial text, e.g. 1+x+y")
    common.add_argument("--poly-file", help="file with polynomial text or JSON")
    common.add_argument("-N", type=int, default=2, help="decimation order")
    common.add_argument("--N-list", dest="N_list",
                        help="comma list or range a..b of N values")
    common.add_argument("--lattice", help="rectangular lattice a1,a2,...")
    common.add_argument("--method", default="auto")
    common.add_argument("--tol", type=float, default=1e-4)
    common.add_argument("--box", default="-2,2,-2,2", help="u0,u1,v0,v1")
    common.add_argument("--res", type=int, default=81)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--budget-bits", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--machine", action="store_true",
                        help="structured JSON errors on stderr")
    common.add_argument("--timings", action="store_true",
                        help="record wall times (breaks byte reproducibility)")
    common.add_argument("-o", "--output", default="-")

    p = _Parser(prog="decilim", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("decimate", parents=[common], help="exact f<N>")
    s.add_argument("--points-csv", help="also write L_N f points as CSV")
    s.set_defaults(func=cmd_decimate)

    s = sub.add_parser("limit", parents=[common],
                       help="convergence table of D_N f")
    s.add_argument("--mesh-prefix", help="write <prefix>_N<N>.off meshes")
    s.set_defaults(func=cmd_limit, res=6)

    s = sub.add_parser("hull", parents=[common], help="concave hull D_N f")
    s.add_argument("--mesh", help="OFF mesh output path")
    s.set_defaults(func=cmd_hull)

    s = sub.add_parser("ronkin", parents=[common], help="Ronkin function")
    s.add_argument("--at", help="evaluation point u1,u2,...")
    s.add_argument("--mesh", help="OFF mesh output for surface sampling")
    s.set_defaults(func=cmd_ronkin, res=21)

    s = sub.add_parser("dual", parents=[common],
                       help="dual of D_N f against the tropicalization")
    s.add_argument("--at", required=True)
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("amoeba", parents=[common],
                       help="lopsidedness raster of f<N>")
    s.add_argument("--format", choices=["json", "pgm"], default="json")
    s.set_defaults(func=cmd_amoeba, N=8)

    s = sub.add_parser("contract", parents=[common], help="g_N and e_N")
    s.set_defaults(func=cmd_contract)

    s = sub.add_parser("degenerate", parents=[common],
                       help="cyclotomic factors of Res_t(f(tx), f(t))")
    s.set_defaults(func=cmd_degenerate)

    s = sub.add_parser("asymlen", parents=[common],
                       help="lengths of g_N")
    s.set_defaults(func=cmd_asymlen)

    s = sub.add_parser("reference", parents=[common],
                       help="closed-form oracles")
    s.add_argument("--at", help="r (golden mean) or r,s (1+x+y)")
    s.add_argument("--terms", type=int, default=None)
    s.add_argument("--smyth", type=int, default=None,
                   help="evaluate the Smyth series with this many terms")
    s.add_argument("--gradient", help="u,v for the triangle gradient")
    s.set_defaults(func=cmd_reference)
    return p


def _report(exc, code, machine):
    if machine:
        sys.stderr.write(json.dumps({"error": type(exc).__name__,
                                     "message": str(exc),
                                     "exit_code": code}) + "\n")
    else:
        sys.stderr.write(f"decilim: error: {exc}\n")
    return code


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    machine = "--machine" in argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("a subcommand is required")
        if args.budget_bits is None and os.environ.get("DECILIM_BUDGET_BITS"):
            args.budget_bits = int(os.environ["DECILIM_BUDGET_BITS"])
        return args.func(args)
    except BudgetError as exc:
        return _report(exc, EXIT_BUDGET, machine)
    except NumericError as exc:
        return _report(exc, EXIT_NUMERIC, machine)
    except (UsageError, DecilimError, ValueError, OSError) as exc:
        return _report(exc, EXIT_USAGE, machine)


if __name__ == "__main__":
    sys.exit(main())
