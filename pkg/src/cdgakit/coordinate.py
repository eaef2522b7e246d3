"""Differential forms with polynomial coefficients on R^n, and pullbacks.

Used to check the coordinate description of the six-dimensional nilpotent
group: the left-invariant 1-forms, the multiplication law and the order-3
symmetry.  Coefficients are sympy polynomials with rational coefficients,
so every comparison is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Mapping, Optional, Sequence, Tuple

import sympy

from .exterior import CdgaError, merge_monomials

__all__ = [
    "PolyForm",
    "PolyMap",
    "d",
    "pullback",
    "GROUP_COORDS",
    "PRODUCT_COORDS",
    "group_space",
    "eta_forms",
    "structure_differentials",
    "group_law",
    "left_translation",
    "rho_map",
    "swap_y_map",
    "compose",
    "verify_left_invariance",
    "verify_equivariance",
    "lattice_mod3_check",
]

GROUP_COORDS = ("y1", "y2", "z1", "z2", "v1", "v2")
PRODUCT_COORDS = ("x1", "x2") + GROUP_COORDS


class PolyForm:
    """``sum_I p_I dx_I`` over the coordinate list ``coords``.

    ``terms`` maps increasing index tuples to sympy expressions; zero
    coefficients are dropped and coefficients are kept expanded.
    """

    __slots__ = ("coords", "symbols", "terms")

    def __init__(self, coords: Sequence[str], terms: Optional[Mapping[Tuple[int, ...], object]] = None):
        self.coords = tuple(coords)
        self.symbols = tuple(sympy.Symbol(c) for c in self.coords)
        clean = {}
        for k, v in (terms or {}).items():
            v = sympy.expand(v)
            if v != 0:
                clean[tuple(k)] = v
        self.terms = clean

    @classmethod
    def function(cls, coords, expr) -> "PolyForm":
        return cls(coords, {(): expr})

    @classmethod
    def dx(cls, coords, name: str) -> "PolyForm":
        return cls(coords, {(list(coords).index(name),): 1})

    def _check(self, o: "PolyForm"):
        if self.coords != o.coords:
            raise CdgaError("forms live on different coordinate spaces")

    def __add__(self, o):
        self._check(o)
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, 0) + v
        return PolyForm(self.coords, t)

    def __neg__(self):
        return PolyForm(self.coords, {k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, PolyForm):
            return PolyForm(self.coords, {k: v * o for k, v in self.terms.items()})
        self._check(o)
        t: Dict[Tuple[int, ...], object] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                sign, mono = merge_monomials(k1, k2)
                if sign:
                    t[mono] = t.get(mono, 0) + sign * v1 * v2
        return PolyForm(self.coords, t)

    def __rmul__(self, o):
        return self * o

    def __eq__(self, o):
        if not isinstance(o, PolyForm):
            return NotImplemented
        return self.coords == o.coords and (self - o).is_zero()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            wedge = "^".join("d" + self.coords[i] for i in k)
            parts.append(f"({self.terms[k]})" + (f"*{wedge}" if wedge else ""))
        return " + ".join(parts)


def d(f: PolyForm) -> PolyForm:
    out = PolyForm(f.coords)
    for k, v in f.terms.items():
        for i, s in enumerate(f.symbols):
            dv = sympy.diff(v, s)
            if dv != 0:
                out = out + PolyForm(f.coords, {(i,): dv}) * PolyForm(f.coords, {k: 1})
    return out


@dataclass(frozen=True)
class PolyMap:
    """Map ``source -> target``: ``exprs[j]`` is target coordinate ``j`` in source symbols."""

    source: Tuple[str, ...]
    target: Tuple[str, ...]
    exprs: Tuple[object, ...]

    def __post_init__(self):
        if len(self.exprs) != len(self.target):
            raise CdgaError("one expression per target coordinate")

    def substitution(self) -> dict:
        return {sympy.Symbol(t): e for t, e in zip(self.target, self.exprs)}

    def __call__(self, *values):
        sub = dict(zip((sympy.Symbol(s) for s in self.source), values))
        return tuple(sympy.expand(sympy.sympify(e).subs(sub, simultaneous=True)) for e in self.exprs)


def pullback(m: PolyMap, f: PolyForm) -> PolyForm:
    if tuple(f.coords) != tuple(m.target):
        raise CdgaError("form does not live on the target of the map")
    sub = m.substitution()
    dimg = [d(PolyForm.function(m.source, e)) for e in m.exprs]
    out = PolyForm(m.source)
    for k, v in f.terms.items():
        term = PolyForm.function(m.source, sympy.sympify(v).subs(sub, simultaneous=True))
        for i in k:
            term = term * dimg[i]
        out = out + term
    return out


def compose(outer: PolyMap, inner: PolyMap) -> PolyMap:
    """``outer o inner``."""
    if tuple(outer.source) != tuple(inner.target):
        raise CdgaError("maps are not composable")
    sub = inner.substitution()
    return PolyMap(inner.source, outer.target,
                   tuple(sympy.expand(sympy.sympify(e).subs(sub, simultaneous=True)) for e in outer.exprs))


# -- the nilpotent group --------------------------------------------------


def group_space() -> Tuple[str, ...]:
    return GROUP_COORDS


def eta_forms(coords: Sequence[str] = GROUP_COORDS) -> Tuple[PolyForm, PolyForm]:
    y1, y2 = sympy.symbols("y1 y2")
    dx = lambda n: PolyForm.dx(coords, n)
    eta1 = dx("v1") + dx("z1") * (-y1 + y2) + dx("z2") * (y1 + 2 * y2)
    eta2 = dx("v2") + dx("z1") * (2 * y1 + y2) + dx("z2") * (y1 - y2)
    return eta1, eta2


def structure_differentials(coords: Sequence[str] = GROUP_COORDS) -> Tuple[PolyForm, PolyForm]:
    """``d eta_i`` written with ``beta_i = dy_i`` and ``gamma_i = dz_i``."""
    dy1, dy2, dz1, dz2 = (PolyForm.dx(coords, n) for n in ("y1", "y2", "z1", "z2"))
    d1 = -1 * (dy1 * dz1) + dy2 * dz1 + dy1 * dz2 + 2 * (dy2 * dz2)
    d2 = 2 * (dy1 * dz1) + dy2 * dz1 + dy1 * dz2 - dy2 * dz2
    return d1, d2


def _law(p, q):
    """Group law on ``G`` for coordinate tuples ``p = g'`` (left) and ``q = g``."""
    y1p, y2p, z1p, z2p, v1p, v2p = p
    y1, y2, z1, z2, v1, v2 = q
    return (
        y1 + y1p,
        y2 + y2p,
        z1 + z1p,
        z2 + z2p,
        v1 + v1p + (y1p - y2p) * z1 - (y1p + 2 * y2p) * z2,
        v2 + v2p - (2 * y1p + y2p) * z1 + (y2p - y1p) * z2,
    )


def _primed(names):
    return tuple(n + "p" for n in names)


def group_law(with_torus: bool = True) -> PolyMap:
    """Multiplication on ``R^2 x G`` (or ``G``) as a map from pairs ``(p', p)``."""
    names = PRODUCT_COORDS if with_torus else GROUP_COORDS
    sp = sympy.symbols(" ".join(_primed(names)))
    s = sympy.symbols(" ".join(names))
    off = 2 if with_torus else 0
    exprs = list(_law(sp[off:], s[off:]))
    if with_torus:
        exprs = [s[0] + sp[0], s[1] + sp[1]] + exprs
    return PolyMap(_primed(names) + tuple(names), tuple(names), tuple(sympy.expand(e) for e in exprs))


def left_translation() -> PolyMap:
    """``p -> m(g', p)`` with ``g'`` kept symbolic (the primed symbols are parameters)."""
    sp = sympy.symbols(" ".join(_primed(GROUP_COORDS)))
    s = sympy.symbols(" ".join(GROUP_COORDS))
    return PolyMap(GROUP_COORDS, GROUP_COORDS, tuple(sympy.expand(e) for e in _law(sp, s)))


def _pair_rotation(a, b):
    return (-a - b, a)


def rho_map(names: Sequence[str] = PRODUCT_COORDS) -> PolyMap:
    """``(u1, u2) -> (-u1 - u2, u1)`` on each coordinate pair."""
    s = sympy.symbols(" ".join(names))
    exprs = []
    for i in range(0, len(s), 2):
        exprs.extend(_pair_rotation(s[i], s[i + 1]))
    return PolyMap(tuple(names), tuple(names), tuple(exprs))


def swap_y_map(names: Sequence[str] = PRODUCT_COORDS) -> PolyMap:
    """Like :func:`rho_map` but with the y pair merely swapped: not a group automorphism."""
    base = rho_map(names)
    exprs = list(base.exprs)
    i = list(names).index("y1")
    y1, y2 = sympy.symbols("y1 y2")
    exprs[i], exprs[i + 1] = y2, y1
    return PolyMap(base.source, base.target, tuple(exprs))


def verify_left_invariance() -> dict:
    lt = left_translation()
    results = {}
    for name, eta in zip(("eta1", "eta2"), eta_forms()):
        pulled = pullback(lt, eta)
        results[name] = {"pass": pulled == eta, "pullback": repr(pulled)}
    return results


def verify_equivariance(rho: Optional[PolyMap] = None) -> dict:
    """Compare ``m(rho p', rho p)`` with ``rho(m(p', p))`` componentwise on ``R^2 x G``."""
    rho = rho or rho_map()
    m = group_law(with_torus=True)
    names = PRODUCT_COORDS
    # rho x rho on the 16 variables (p', p)
    primed = dict(zip(names, _primed(names)))
    rho_primed = []
    for e in rho.exprs:
        e = sympy.sympify(e)
        rho_primed.append(e.subs({sympy.Symbol(n): sympy.Symbol(primed[n]) for n in names}, simultaneous=True))
    rr = PolyMap(m.source, m.source, tuple(rho_primed) + tuple(rho.exprs))
    lhs = compose(m, rr)
    rhs = compose(rho, m)
    mismatch = None
    for name, a, b in zip(names, lhs.exprs, rhs.exprs):
        if sympy.expand(a - b) != 0:
            mismatch = {"component": name, "lhs": str(a), "rhs": str(b)}
            break
    mod3 = lattice_mod3_check()
    return {
        "pass": mismatch is None and mod3["pass"],
        "group_law_pass": mismatch is None,
        "variables": len(m.source),
        "first_mismatch": mismatch,
        "mod3": mod3,
    }


def lattice_mod3_check() -> dict:
    """``v1 = v2 (mod 3)`` implies ``-v1 - v2 = v1 (mod 3)``, over all nine residue pairs."""
    failures = []
    for v1, v2 in product(range(3), repeat=2):
        if (v1 - v2) % 3 == 0 and (-v1 - v2 - v1) % 3 != 0:
            failures.append([v1, v2])
    return {"pass": not failures, "cases": 9, "failures": failures}
