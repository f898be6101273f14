"""Command line interface.

Exit codes: 0 success, 1 a verification found a counterexample, 2 bad usage or input.
Exact numbers are written as strings in the grammar of :func:`format_number`.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import dynamics, frieze, growth, surfaces
from .exact import format_number, normalize, parse_number

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _read_json(text: str):
    """Inline JSON or a path to a JSON file."""
    path = Path(text)
    if not text.lstrip().startswith("{") and path.exists():
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse JSON input {text[:40]!r}: {exc}") from None


def _parse_number_arg(text: str, float_mode: bool = False):
    if float_mode:
        try:
            return float(text)
        except ValueError:
            raise UsageError(f"not a float: {text!r}") from None
    try:
        return parse_number(text)
    except ValueError as exc:
        raise UsageError(f"bad number {text!r}: {exc}") from None


def _parse_ints(text: str, count: int, what: str) -> tuple:
    try:
        vals = tuple(int(t) for t in text.replace(" ", "").split(","))
    except ValueError:
        raise UsageError(f"bad {what} {text!r}") from None
    if len(vals) != count:
        raise UsageError(f"{what} needs {count} comma-separated integers, got {text!r}")
    return vals


def _quiddity_from_args(args) -> tuple:
    """Quiddity from ``--quiddity`` or the outer boundary of ``--input``."""
    if getattr(args, "quiddity", None):
        try:
            return frieze.parse_quiddity(args.quiddity)
        except ValueError as exc:
            raise UsageError(f"bad quiddity {args.quiddity!r}: {exc}") from None
    if getattr(args, "input", None):
        surface = _surface(args.input)
        return _surface_quiddity(surface)
    raise UsageError("give --quiddity or --input")


def _surface(text: str):
    try:
        return surfaces.load_surface(_read_json(text))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad surface description: {exc}") from None


def _surface_quiddity(surface) -> tuple:
    if isinstance(surface, surfaces.PolygonTriangulation):
        return surfaces.polygon_quiddity(surface)
    if isinstance(surface, surfaces.Annulus):
        return surface.outer
    return surfaces.outer_quiddity(surface)


def _add_source(p, inputs=True):
    p.add_argument("--quiddity", "-q", help='comma separated entries, e.g. "1,2,6" or "sqrt2,sqrt2"')
    if inputs:
        p.add_argument("--input", "-i", help="JSON surface (fans, annulus or polygon), inline or a file path")


def cmd_render(args) -> int:
    q = _quiddity_from_args(args)
    L = frieze.FriezeLattice(q)
    if args.format == "tsv":
        i0, j0, h, w = _parse_ints(args.window, 4, "--window") if args.window else (1, -2, L.n, args.rows + 2)
        sys.stdout.write(frieze.window_to_tsv(L.window(i0, j0, h, w), ascii=args.ascii))
    else:
        sys.stdout.write(frieze.render_text(L, args.rows, cols=args.cols, first_row=args.first_row,
                                            ascii=args.ascii))
    return EXIT_OK


def _growth_report(q, k: int) -> growth.Report:
    seq = growth.growth_sequence(q, k)
    s1 = seq.principal if k >= 1 else growth.growth_sequence(q, 1).principal
    rec = growth.recursion_sequence(s1, k)
    rep = growth.Report(s=list(seq.s))
    rep.add(growth.Check("lattice_equals_recursion", list(seq.s) == rec))
    bad_cf = next((j for j in range(1, k + 1) if growth.closed_form_sk(s1, j) != seq[j]), None)
    rep.add(growth.Check("closed_form", bad_cf is None, bad_cf))
    bad_ch = next((j for j in range(k + 1) if growth.chebyshev_sk(s1, j) != seq[j]), None)
    rep.add(growth.Check("chebyshev", bad_ch is None, bad_ch))
    rep.extra["n_min"] = seq.n_min
    return rep


def cmd_growth(args) -> int:
    q = _quiddity_from_args(args)
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    rep = _growth_report(q, args.k)
    out = rep.to_dict()
    out = {"quiddity": frieze.format_quiddity(q), **out}
    sys.stdout.write(_dump(out))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_classify_frieze(args) -> int:
    q = _quiddity_from_args(args)
    try:
        c = frieze.classify(q, args.depth)
    except frieze.DepthTooSmall as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(_dump({"quiddity": frieze.format_quiddity(q), **c.to_dict()}))
    return EXIT_OK


def cmd_classify_dynamics(args) -> int:
    r0 = _parse_number_arg(args.r0, args.float)
    r1 = _parse_number_arg(args.r1, args.float)
    if args.K < 24:
        raise UsageError("--K must be at least 24")
    rep = dynamics.classify(r0, r1, args.K)
    sys.stdout.write(_dump(rep.to_dict()))
    return EXIT_FAIL if rep.certificate_ok is False else EXIT_OK


def _parse_fans(text: str) -> surfaces.FanTriangulation:
    """``"4:3,1:1"`` -> fans ``((4, 3), (1, 1))``."""
    try:
        pairs = [tuple(int(x) for x in tok.split(":")) for tok in text.split(",") if tok.strip()]
        return surfaces.FanTriangulation(tuple(pairs))
    except ValueError as exc:
        raise UsageError(f"bad --fans {text!r}: {exc}") from None


def cmd_annulus(args) -> int:
    if args.fans:
        surface = _parse_fans(args.fans)
    elif args.input:
        surface = _surface(args.input)
    else:
        raise UsageError("give --fans or --input")
    if isinstance(surface, surfaces.PolygonTriangulation):
        raise UsageError("annulus needs a fan description, not a polygon")
    core = surface.core if isinstance(surface, surfaces.Annulus) else surface
    rep = surfaces.verify_inner_outer(core)
    rep.extend(surfaces.fan_entry_checks(core))
    out = {"fans": core.to_dict()["fans"]}
    if isinstance(surface, surfaces.Annulus):
        outer, inner = surface.quiddities()
        s_out, s_in = growth.growth_coefficient(outer), growth.growth_coefficient(inner)
        rep.add(growth.Check("glued_outer_invariant", s_out == rep.extra["s_q"], None))
        rep.add(growth.Check("glued_inner_invariant", s_in == rep.extra["s_q"], None))
        out["glued"] = {"outer": frieze.format_quiddity(outer), "inner": frieze.format_quiddity(inner)}
    out.update({
        "outer": frieze.format_quiddity(surfaces.outer_quiddity(core)),
        "inner": frieze.format_quiddity(surfaces.inner_quiddity(core)),
        "s_q": format_number(rep.extra["s_q"]),
        "s_q_continuant": format_number(surfaces.s_q_continuant(core)),
        "s_q_sum_formula": format_number(surfaces.s_q_sum_formula(core)),
        "checks": [c.to_dict() for c in rep.checks],
    })
    sys.stdout.write(_dump(out))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _glue_or_cut(args, op: str) -> int:
    q = _quiddity_from_args(args)
    if not surfaces.is_positive_integer_infinite(q) and op == "glue":
        raise UsageError("glue needs positive integers without consecutive ones")
    try:
        rep = surfaces.verify_glue_cut_invariance(q, [(op, args.index)])
    except (surfaces.NotCuttable, IndexError) as exc:
        raise UsageError(str(exc)) from None
    path = rep.extra["path"]
    out = {"input": frieze.format_quiddity(q),
           "output": frieze.format_quiddity(path[-1]["quiddity"]),
           "s_q": format_number(path[0]["s_q"]),
           "checks": [c.to_dict() for c in rep.checks]}
    sys.stdout.write(_dump(out))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_glue(args) -> int:
    return _glue_or_cut(args, "glue")


def cmd_cut(args) -> int:
    return _glue_or_cut(args, "cut")


def verify_suite(lattice, q=None, window=(1, -6, 8, 20), k: int = 8, fans=None) -> growth.Report:
    """Every structural identity available for the input, as one report."""
    i0, j0, h, w = window
    rep = growth.Report()
    wr = frieze.verify_window(lattice, i0, j0, h, w)
    for c in wr.to_checks():
        rep.add(growth.Check(c["name"], c["ok"], c["counterexample"], {"count": wr.counts[c["name"]]}))
    if q is not None:
        L = frieze.FriezeLattice(q)
        n = L.n
        rep.extend(growth.verify_constant_difference(L))
        rep.extend(growth.verify_diagonal_recursion(L, window=(i0, j0 - n, h, w)))
        gr = _growth_report(q, k)
        rep.extend(gr)
        rep.s = gr.s
    if fans is not None:
        rep.extend(surfaces.verify_inner_outer(fans))
        rep.extend(surfaces.fan_entry_checks(fans))
    return rep


def cmd_verify(args) -> int:
    window = _parse_ints(args.window, 4, "--window")
    if window[2] < 3 or window[3] < 3:
        raise UsageError("--window height and width must be at least 3")
    fans = None
    if args.tsv:
        try:
            entries = frieze.parse_tsv(Path(args.tsv).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read {args.tsv}: {exc}") from None
        rep = verify_suite(frieze.TableLattice(entries), window=window)
        source = {"tsv": args.tsv}
    else:
        if args.input:
            surface = _surface(args.input)
            if isinstance(surface, surfaces.FanTriangulation):
                fans = surface
            elif isinstance(surface, surfaces.Annulus):
                fans = surface.core
        q = _quiddity_from_args(args)
        lattice = frieze.FriezeLattice(q)
        if args.perturb:
            i, j, delta = args.perturb.split(",")
            i0, j0, h, w = window
            entries = {(a, b): v for a, b, v in lattice.window(i0 - 2, j0 - 2, h + 4, w + 4)}
            key = (int(i), int(j))
            if key not in entries:
                raise UsageError(f"--perturb cell {key} is outside the window")
            entries[key] = normalize(entries[key] + _parse_number_arg(delta))
            rep = verify_suite(frieze.TableLattice(entries), window=window)
        else:
            rep = verify_suite(lattice, q=q, window=window, k=args.k, fans=fans)
        source = {"quiddity": frieze.format_quiddity(q)}
    out = {**source, "ok": rep.ok, **rep.to_dict()}
    sys.stdout.write(_dump(out))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _parse_range(text: str, float_mode: bool) -> list:
    """``"a:b:step"`` (inclusive) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"range {text!r} must be start:stop:step")
        a, b, st = (_parse_number_arg(t, float_mode) for t in parts)
        if st <= 0:
            raise UsageError(f"range step must be positive in {text!r}")
        out, k = [], 0
        while True:
            v = a + k * st
            if v > b + (1e-12 if float_mode else 0):
                break
            out.append(v if float_mode else normalize(Fraction(a) + k * Fraction(st)))
            k += 1
        return out
    return [_parse_number_arg(t, float_mode) for t in text.split(",") if t.strip()]


def _fmt_cell(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return format_number(x)


def cmd_sweep(args) -> int:
    r0s = _parse_range(args.r0, args.float)
    r1s = _parse_range(args.r1, args.float)
    points = [(a, b) for b in r1s for a in r0s]

    def work(pt):
        return dynamics.classify(pt[0], pt[1], args.K)

    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        reports = list(pool.map(work, points))
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["r0", "r1", "class", "period", "rate_numeric", "certificate_ok"])
    failed = False
    for (a, b), rep in zip(points, reports):
        rate = rep.rate_numeric
        wr.writerow([_fmt_cell(a), _fmt_cell(b), rep.kind,
                     "" if rep.period is None else rep.period,
                     "" if rate is None else repr(rate),
                     "" if rep.certificate_ok is None else str(rep.certificate_ok).lower()])
        failed = failed or rep.certificate_ok is False
    sys.stdout.write(buf.getvalue())
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="friezegrowth",
                                description="Growth coefficients of periodic friezes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("render", help="print a window of the frieze lattice")
    _add_source(s)
    s.add_argument("--rows", type=int, default=8)
    s.add_argument("--cols", type=int, default=None)
    s.add_argument("--first-row", type=int, default=-2, help="row offset d of the first printed row")
    s.add_argument("--format", choices=["text", "tsv"], default="text")
    s.add_argument("--window", help="i0,j0,h,w for --format tsv")
    s.add_argument("--ascii", action="store_true", help="write sqrt instead of the radical sign")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("growth", help="growth coefficients s_0 .. s_k")
    _add_source(s)
    s.add_argument("--k", type=int, default=8)
    s.set_defaults(func=cmd_growth)

    s = sub.add_parser("classify-frieze", help="finite / infinite verdict up to a depth")
    _add_source(s)
    s.add_argument("--depth", type=int, default=64)
    s.set_defaults(func=cmd_classify_frieze)

    s = sub.add_parser("classify-dynamics", help="behaviour of r[k+2] = r1 r[k+1] - r[k]")
    s.add_argument("--r0", required=True)
    s.add_argument("--r1", required=True)
    s.add_argument("--K", type=int, default=36)
    s.add_argument("--float", action="store_true", help="treat r0, r1 as floats")
    s.set_defaults(func=cmd_classify_dynamics)

    s = sub.add_parser("annulus", help="quiddities and growth coefficient of a fan triangulation")
    s.add_argument("--fans", help='"n1:m1,n2:m2,..."')
    s.add_argument("--input", "-i", help="JSON fans or annulus description")
    s.set_defaults(func=cmd_annulus)

    for name, fn in (("glue", cmd_glue), ("cut", cmd_cut)):
        s = sub.add_parser(name, help=f"{name} a peripheral triangle at a 1-based index")
        _add_source(s, inputs=False)
        s.add_argument("--index", type=int, required=True)
        s.set_defaults(func=fn)

    s = sub.add_parser("verify", help="run every identity check on a frieze")
    _add_source(s)
    s.add_argument("--tsv", help="lattice window as i<TAB>j<TAB>value lines")
    s.add_argument("--window", default="1,-6,8,20", help="i0,j0,h,w")
    s.add_argument("--k", type=int, default=8)
    s.add_argument("--perturb", help="i,j,delta: add delta to one lattice entry (negative control)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="classify a grid of (r0, r1) as CSV")
    s.add_argument("--r0", required=True, help="start:stop:step or a comma list")
    s.add_argument("--r1", required=True, help="start:stop:step or a comma list")
    s.add_argument("--K", type=int, default=36)
    s.add_argument("--float", action="store_true")
    s.add_argument("--workers", type=int, default=4)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, growth.PreconditionFailed, dynamics.NoRealFixedPoint,
            surfaces.InvalidTriangulation, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
