"""Command-line driver: ``cdgakit <subcommand> [--preset NAME | --file PATH] ...``.

Every subcommand writes one report ``{subcommand, input, result, checks}``
as JSON (sorted keys) or as plain text.  Exit status: 0 on success, 1 when
``verify`` has a failing criterion, 2 on usage, parse or input errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import bundles, coordinate
from .action import (
    LatticeAction,
    fixed_point_count,
    invariant_dimensions,
    invariant_subcomplex,
    isotypic_multiplicities,
    quotient_euler,
    reynolds,
    verify_automorphism,
)
from .cohomology import (
    CochainComplex,
    betti_vector,
    class_of,
    cohomology_basis,
    euler_characteristic,
    lefschetz_kernel,
)
from .dsl import PRESETS, ParseError, dumps, parse_presentation, preset, to_jsonable
from .exterior import CdgaError, check_d_squared, differential
from .massey import (
    certify_quadruple_nontrivial,
    formality_verdict,
    gmassey,
    lemma25_witness,
    triple_massey,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# -- input handling --------------------------------------------------------


class Context:
    def __init__(self, args):
        self.args = args
        if args.preset and args.file:
            raise UsageError("give exactly one of --preset and --file")
        if args.preset:
            self.source = preset(args.preset)
            self.label = f"preset:{args.preset}"
        elif args.file:
            self.source = parse_presentation(Path(args.file).read_text(encoding="utf-8"))
            self.label = f"file:{args.file}"
        else:
            raise UsageError("an input is required: --preset NAME or --file PATH")
        self._complex = None
        self._auto = None

    @property
    def presentation(self):
        return self.source.presentation

    def automorphism(self):
        if self._auto is None:
            if not self.source.actions:
                raise UsageError(f"{self.label} declares no action")
            self._auto = self.source.automorphism(self.args.action)
        return self._auto

    def complex(self) -> CochainComplex:
        if self._complex is None:
            if getattr(self.args, "invariant", False):
                self._complex = invariant_subcomplex(self.automorphism())
            else:
                self._complex = CochainComplex(self.presentation)
        return self._complex

    def element(self, text: str):
        x = self.source.element(text)
        if getattr(self.args, "invariant", False):
            if reynolds(self.automorphism(), x) != x:
                raise UsageError(f"expression {text!r} is not invariant under {self.args.action}")
        return x


def _check(name, ok, witness=""):
    return {"name": name, "pass": bool(ok), "witness": witness}


# -- subcommands -----------------------------------------------------------


def cmd_betti(ctx: Context):
    c = ctx.complex()
    b = betti_vector(c)
    return b, [_check("euler characteristic", True, euler_characteristic(c))]


def cmd_cohomology(ctx: Context):
    c = ctx.complex()
    k = ctx.args.degree
    basis = cohomology_basis(c, k)
    return {"degree": k, "dimension": len(basis), "basis": [h.representative for h in basis]}, []


def cmd_check(ctx: Context):
    rep = check_d_squared(ctx.presentation)
    checks = [_check("d^2 = 0", rep.passed, rep.to_dict())]
    result = {"d_squared": rep}
    for name in sorted(ctx.source.actions):
        ar = verify_automorphism(ctx.source.automorphism(name))
        result[f"action:{name}"] = ar
        checks.append(_check(f"{name} is a chain automorphism of order {ar.order}", ar.passed))
    return result, checks


def cmd_invariants(ctx: Context):
    a = ctx.automorphism()
    dims = invariant_dimensions(a)
    result = {"dimensions": dims}
    if a.order == 3:
        result["isotypic"] = [list(isotypic_multiplicities(a, k)) for k in range(ctx.presentation.n + 1)]
    return result, []


def _matrix2(text: str):
    vals = [int(v) for v in text.replace(",", " ").split()]
    if len(vals) != 4:
        raise UsageError(f"expected four integers, got {text!r}")
    return ((vals[0], vals[1]), (vals[2], vals[3]))


def cmd_fixed_points(ctx_args):
    args = ctx_args
    rho = _matrix2(args.rho)
    lat = LatticeAction(rho, _matrix2(args.basis))
    n = fixed_point_count(lat)
    result = {"rho": rho, "basis": lat.basis, "fixed_points": n}
    if args.factors:
        result["product_over_factors"] = n ** args.factors
    return result, []


def cmd_euler_quotient(ctx: Context):
    a = ctx.automorphism()
    chi = euler_characteristic(CochainComplex(ctx.presentation))
    iso = ctx.args.isotropy or a.order
    value = quotient_euler(chi, a.order, [iso] * ctx.args.fixed)
    return {"chi": chi, "order": a.order, "fixed_points": ctx.args.fixed, "chi_quotient": value}, []


def _need(values, n, flag):
    if not values or len(values) != n:
        raise UsageError(f"expected exactly {n} {flag} arguments")
    return values


def cmd_massey3(ctx: Context):
    xs = _need(ctx.args.x, 3, "-x")
    c = ctx.complex()
    t = triple_massey(c, *(ctx.element(x) for x in xs))
    return t, [_check("verdict", True, t.verdict)]


def cmd_massey4(ctx: Context):
    xs = _need(ctx.args.x, 4, "-x")
    c = ctx.complex()
    sigma = ctx.element(ctx.args.sigma)
    cert = certify_quadruple_nontrivial(c, [ctx.element(x) for x in xs], sigma)
    return cert, cert.checks + [_check("formality verdict", True, formality_verdict([cert]))]


def cmd_gmassey(ctx: Context):
    xs = _need(ctx.args.x, 3, "-x")
    c = ctx.complex()
    g = gmassey(c, ctx.element(ctx.args.a), *(ctx.element(x) for x in xs))
    return g, [_check("W dimension", True, len(g.w_basis)), _check("verdict", True, g.verdict)]


def cmd_lemma25(ctx: Context):
    xs = _need(ctx.args.x, 3, "-x")
    c = ctx.complex()
    r = lemma25_witness(c, ctx.element(ctx.args.a), *(ctx.element(x) for x in xs))
    return r, r.checks


def cmd_symplectic(ctx: Context):
    p = ctx.presentation
    w = ctx.element(ctx.args.omega)
    closed = not differential(p, w)
    top = w ** (p.n // 2) if p.n % 2 == 0 else p.table.zero()
    k = top.coefficient(range(p.n))
    checks = [_check("d omega = 0", closed), _check(f"omega^{p.n // 2} != 0", k != 0, k)]
    if ctx.source.actions:
        a = ctx.automorphism()
        checks.append(_check(f"{a.name}* omega = omega", a(w) == w))
    return {"omega": w, "top_power_coefficient": k}, checks


def cmd_lefschetz(ctx: Context):
    c = ctx.complex()
    w = class_of(c, ctx.element(ctx.args.omega), 2)
    kern = lefschetz_kernel(c, w, ctx.args.degree, ctx.args.power)
    return {"degree": ctx.args.degree, "power": ctx.args.power, "kernel_dimension": len(kern),
            "kernel": [h.representative for h in kern]}, [_check("injective", True, not kern)]


def cmd_bundle(args):
    f = bundles.curvature_class_matrix(bundles.bundle_for_ring(args.ring))
    basis = bundles.image_lattice_basis(f)
    return {"ring": args.ring, "curvature": f, "gram": bundles.gram_matrix(basis),
            "invariant": bundles.image_lattice_q_determinant(f)}, []


def cmd_coordinate(args):
    li = coordinate.verify_left_invariance()
    eq = coordinate.verify_equivariance()
    checks = [_check(f"{k} left invariant", v["pass"]) for k, v in sorted(li.items())]
    checks.append(_check("m(rho p', rho p) = rho m(p', p)", eq["group_law_pass"], eq["first_mismatch"]))
    checks.append(_check("lattice stable mod 3", eq["mod3"]["pass"], eq["mod3"]["cases"]))
    return {"left_invariance": li, "equivariance": eq}, checks


def cmd_verify(args):
    from .suite import run_suite

    rows = run_suite(workers=args.workers)
    checks = [_check(f"{r['criterion']}. {r['name']}", r["pass"], r["checks"]) for r in rows]
    return {"suite": args.suite, "passed": sum(r["pass"] for r in rows), "total": len(rows)}, checks


# -- parser ----------------------------------------------------------------


def _add_input(p, invariant=False):
    g = p.add_argument_group("input")
    g.add_argument("--preset", choices=PRESETS, help="built-in presentation")
    g.add_argument("--file", help="path to a .cdga presentation")
    g.add_argument("--action", default="rho", help="name of the declared action (default: rho)")
    if invariant:
        g.add_argument("--invariant", action="store_true",
                       help="work in the invariant subcomplex; expressions must be invariant")


def _add_output(p):
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", help="write the report here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cdgakit", description="Exact computations on exterior-algebra presentations.")
    sub = parser.add_subparsers(dest="subcommand", metavar="subcommand", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_text, needs_input=True, invariant=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if needs_input:
            _add_input(p, invariant=invariant)
        _add_output(p)
        p.set_defaults(func=fn, needs_input=needs_input)
        return p

    add("betti", cmd_betti, "Betti numbers of the complex")
    add("cohomology", cmd_cohomology, "basis representatives of H^k").add_argument(
        "--degree", type=int, required=True)
    add("check", cmd_check, "d^2 = 0 and the declared actions", invariant=False)
    add("invariants", cmd_invariants, "invariant subcomplex dimensions and isotypic split", invariant=False)
    p = add("fixed-points", cmd_fixed_points, "fixed points of an integral 2x2 action on R^2/L",
            needs_input=False)
    p.add_argument("--rho", default="-1 -1 1 0", help="matrix rows a b c d (default: order-3 rotation)")
    p.add_argument("--basis", default="1 0 0 1", help="lattice basis as matrix rows; columns are generators")
    p.add_argument("--factors", type=int, default=0, help="also report the count over this many factors")
    p = add("euler-quotient", cmd_euler_quotient, "Euler characteristic of the quotient orbifold",
            invariant=False)
    p.add_argument("--fixed", type=int, required=True, help="number of isolated fixed points")
    p.add_argument("--isotropy", type=int, default=0, help="isotropy order (default: action order)")
    p = add("massey3", cmd_massey3, "triple Massey product <x1, x2, x3>")
    p.add_argument("-x", action="append", help="class representative (three times)")
    p = add("massey4-certify", cmd_massey4, "certify <x1,x2,x3,x4> non-trivial by multiplying with sigma")
    p.add_argument("-x", action="append", help="class representative (four times)")
    p.add_argument("--sigma", required=True)
    p = add("gmassey", cmd_gmassey, "G-Massey product <a; x1, x2, x3>")
    p.add_argument("-a", required=True)
    p.add_argument("-x", action="append", help="class representative (three times)")
    p = add("lemma25", cmd_lemma25, "G-Massey representative as a sum of quadruple products")
    p.add_argument("-a", required=True)
    p.add_argument("-x", action="append", help="class representative (three times)")
    add("symplectic-check", cmd_symplectic, "closedness, invariance and non-degeneracy of omega",
        invariant=False).add_argument("--omega", required=True)
    p = add("lefschetz", cmd_lefschetz, "kernel of cup with omega^p on H^k")
    p.add_argument("--omega", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--power", type=int, required=True)
    add("bundle", cmd_bundle, "curvature class and lattice invariant of a torus bundle",
        needs_input=False).add_argument("--ring", choices=(bundles.EISENSTEIN, bundles.GAUSSIAN), required=True)
    add("coordinate-verify", cmd_coordinate, "coordinate formulas and group-law identities",
        needs_input=False)
    p = add("verify", cmd_verify, "run the reproduction suite and print a pass/fail table", needs_input=False)
    p.add_argument("--suite", choices=("paper",), default="paper")
    p.add_argument("--workers", type=int, default=1)
    return parser


def _render_text(report) -> str:
    lines = [f"{report['subcommand']}  [{report['input']}]"]
    result = report["result"]
    if isinstance(result, dict):
        for k in sorted(result):
            lines.append(f"  {k}: {result[k]}")
    else:
        lines.append(f"  {result}")
    for ch in report["checks"]:
        mark = "PASS" if ch["pass"] else "FAIL"
        w = ch["witness"]
        w = "" if isinstance(w, (list, dict)) else w
        lines.append(f"  [{mark}] {ch['name']}" + (f"  {w}" if w not in ("", None) else ""))
    return "\n".join(lines) + "\n"


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.needs_input:
            ctx = Context(args)
            label = ctx.label
            result, checks = args.func(ctx)
        else:
            label = "-"
            result, checks = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, CdgaError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = to_jsonable({"subcommand": args.subcommand, "input": label, "result": result, "checks": checks})
    text = dumps(report) + "\n" if args.format == "json" else _render_text(report)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.subcommand == "verify" and not all(ch["pass"] for ch in checks):
        return EXIT_FAIL
    return EXIT_OK


def main() -> None:
    raise SystemExit(run())
