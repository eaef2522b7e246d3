"""Formality obstructions: triple and quadruple Massey products, G-Massey products.

Inputs may be :class:`~cdgakit.cohomology.CohomologyClass` objects (their
stored representatives are used) or closed forms.  Verdicts are
three-valued and one-directional: a ``"nontrivial-certified"`` verdict is a
proof of non-triviality, ``"trivial"`` means zero was exhibited in the
product set, and ``"inconclusive"`` makes no claim.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import linalg
from .cohomology import (
    CochainComplex,
    CohomologyClass,
    NotClosedError,
    class_of,
    cohomology_basis,
    cup,
    top_class_value,
)
from .exterior import CdgaError, GradedElement, bar

__all__ = [
    "NONTRIVIAL",
    "TRIVIAL",
    "INCONCLUSIVE",
    "INCONCLUSIVE_IN_W",
    "UndefinedProductError",
    "PreconditionError",
    "find_primitive",
    "TripleMasseyResult",
    "triple_massey",
    "scan_triple_products",
    "DefiningSystem",
    "defining_system",
    "quadruple_value",
    "QuadrupleCertificate",
    "certify_quadruple_nontrivial",
    "GMasseyResult",
    "gmassey",
    "Lemma25Report",
    "lemma25_witness",
    "formality_verdict",
]

NONTRIVIAL = "nontrivial-certified"
TRIVIAL = "trivial"
INCONCLUSIVE = "inconclusive"
INCONCLUSIVE_IN_W = "inconclusive-in-W"

Operand = Union[CohomologyClass, GradedElement]


class UndefinedProductError(CdgaError):
    """A product needed to define the Massey-type product is not exact.

    ``equation`` names the failing defining-system entry, e.g. ``(1, 2)``.
    """

    def __init__(self, message: str, equation=None):
        super().__init__(message)
        self.equation = equation


class PreconditionError(CdgaError):
    pass


def _form(c: CochainComplex, x: Operand, degree: Optional[int] = None) -> Tuple[GradedElement, int]:
    if isinstance(x, CohomologyClass):
        if x.complex is not c:
            raise CdgaError("class belongs to a different complex")
        return x.representative, x.degree
    if not isinstance(x, GradedElement):
        raise TypeError(f"expected a class or a form, got {type(x).__name__}")
    if x.is_zero():
        if degree is None:
            raise CdgaError("degree needed for a zero form")
        return x, degree
    dx = c.d(x)
    if dx:
        raise NotClosedError(f"input form is not closed: d = {dx.to_text()}", dx)
    if not c.contains(x):
        raise CdgaError(f"form {x.to_text()} is not in the complex")
    return x, x.degree


def find_primitive(c: CochainComplex, w: GradedElement, degree: Optional[int] = None) -> Optional[GradedElement]:
    """Deterministic ``u`` with ``d(u) == w``; ``None`` when ``w`` is not exact."""
    if not w:
        return c.table.zero()
    return c.primitive(w, degree)


def _span_basis(vectors: Sequence[Sequence]) -> List[list]:
    vs = [list(v) for v in vectors if any(x != 0 for x in v)]
    return linalg.row_space_basis(vs) if vs else []


def _in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    return linalg.Echelon(basis).contains(v)


# -- triple products -------------------------------------------------------


@dataclass
class TripleMasseyResult:
    degrees: Tuple[int, int, int]
    forms: Tuple[GradedElement, GradedElement, GradedElement]
    xi: GradedElement
    eta: GradedElement
    value: CohomologyClass
    indeterminacy: List[list]
    verdict: str

    def to_dict(self):
        return {
            "degrees": list(self.degrees),
            "forms": list(self.forms),
            "primitives": {"xi": self.xi, "eta": self.eta},
            "value": list(self.value.coords),
            "value_degree": self.value.degree,
            "indeterminacy": self.indeterminacy,
            "verdict": self.verdict,
        }


def triple_massey(c: CochainComplex, a1: Operand, a2: Operand, a3: Operand,
                  primitives: Optional[Tuple[GradedElement, GradedElement]] = None,
                  degrees: Optional[Sequence[int]] = None) -> TripleMasseyResult:
    """``<a1, a2, a3>`` with the coset indeterminacy ``a1 H + H a3``.

    ``primitives=(xi, eta)`` overrides the canonical choices; they must
    satisfy ``d(xi) = alpha1 alpha2`` and ``d(eta) = alpha2 alpha3``.
    """
    degs = list(degrees) if degrees else [None, None, None]
    (f1, p1), (f2, p2), (f3, p3) = (_form(c, x, d) for x, d in zip((a1, a2, a3), degs))
    w12, w23 = f1 * f2, f2 * f3
    if primitives is None:
        xi = find_primitive(c, w12, p1 + p2)
        eta = find_primitive(c, w23, p2 + p3)
        if xi is None:
            raise UndefinedProductError("a1 cup a2 != 0", (1, 2))
        if eta is None:
            raise UndefinedProductError("a2 cup a3 != 0", (2, 3))
    else:
        xi, eta = primitives
        if c.d(xi) != w12 or c.d(eta) != w23:
            raise CdgaError("supplied primitives do not bound the products")
    top = p1 + p2 + p3 - 1
    sign = 1 if (p1 + 1) % 2 == 0 else -1
    rep = f1 * eta + sign * (xi * f3)
    value = class_of(c, rep, top)
    gens = []
    for h in cohomology_basis(c, p2 + p3 - 1):
        gens.append(class_of(c, f1 * h.representative, top).coords)
    for h in cohomology_basis(c, p1 + p2 - 1):
        gens.append(class_of(c, h.representative * f3, top).coords)
    indet = _span_basis(gens)
    verdict = TRIVIAL if _in_span(indet, value.coords) else NONTRIVIAL
    return TripleMasseyResult((p1, p2, p3), (f1, f2, f3), xi, eta, value, indet, verdict)


def scan_triple_products(c: CochainComplex, degrees: Tuple[int, int, int]) -> List[TripleMasseyResult]:
    """Every defined triple product of basis classes in the given degrees."""
    bases = [cohomology_basis(c, k) for k in degrees]
    out = []
    for x, y, z in product(*bases):
        if not cup(x, y).is_zero or not cup(y, z).is_zero:
            continue
        out.append(triple_massey(c, x, y, z))
    return out


# -- quadruple products -------------------------------------------------------


@dataclass
class DefiningSystem:
    """Forms ``alpha[(i, j)]`` (1-based, ``(1, 4)`` excluded) for a quadruple product."""

    alpha: Dict[Tuple[int, int], GradedElement]
    degrees: Tuple[int, ...]

    def defect(self, c: CochainComplex, i: int, j: int) -> GradedElement:
        """``d alpha_ij - sum_k bar(alpha_ik) alpha_(k+1)j`` (zero when the equation holds)."""
        rhs = c.table.zero()
        for k in range(i, j):
            rhs = rhs + bar(self.alpha[(i, k)]) * self.alpha[(k + 1, j)]
        return c.d(self.alpha[(i, j)]) - rhs

    def to_dict(self):
        return {f"{i},{j}": v for (i, j), v in sorted(self.alpha.items())}


def defining_system(c: CochainComplex, classes: Sequence[Operand],
                    degrees: Optional[Sequence[int]] = None) -> DefiningSystem:
    """Greedy defining system for ``<a1, a2, a3, a4>`` using canonical primitives.

    Order: diagonal, then (1,2), (2,3), (3,4), (1,3), (2,4).  Raises
    :class:`UndefinedProductError` naming the first equation with a
    non-exact right-hand side.
    """
    if len(classes) != 4:
        raise CdgaError("a quadruple product needs exactly four classes")
    degs = list(degrees) if degrees else [None] * 4
    forms = [_form(c, x, d) for x, d in zip(classes, degs)]
    alpha = {(i + 1, i + 1): f for i, (f, _) in enumerate(forms)}
    pdeg = [p for _, p in forms]
    for (i, j) in ((1, 2), (2, 3), (3, 4), (1, 3), (2, 4)):
        rhs = c.table.zero()
        for k in range(i, j):
            rhs = rhs + bar(alpha[(i, k)]) * alpha[(k + 1, j)]
        target_deg = sum(pdeg[i - 1:j]) - (j - i) + 1
        prim = find_primitive(c, rhs, target_deg)
        if prim is None:
            raise UndefinedProductError(f"equation for alpha_{i}{j} has a non-exact right-hand side", (i, j))
        alpha[(i, j)] = prim
    return DefiningSystem(alpha, tuple(pdeg))


def _quadruple_rep(c: CochainComplex, s: DefiningSystem) -> GradedElement:
    a = s.alpha
    return bar(a[(1, 1)]) * a[(2, 4)] + bar(a[(1, 2)]) * a[(3, 4)] + bar(a[(1, 3)]) * a[(4, 4)]


def quadruple_value(c: CochainComplex, s: DefiningSystem) -> CohomologyClass:
    """Class of ``sum_k bar(alpha_1k) alpha_(k+1)4``; the representative is checked closed."""
    rep = _quadruple_rep(c, s)
    return class_of(c, rep, sum(s.degrees) - 2)


@dataclass
class QuadrupleCertificate:
    degrees: Tuple[int, ...]
    sigma: GradedElement
    system: Optional[DefiningSystem]
    checks: List[dict]
    value: Optional[CohomologyClass]
    sigma_psi: Optional[Fraction]
    verdict: str

    def to_dict(self):
        return {
            "degrees": list(self.degrees),
            "sigma": self.sigma,
            "checks": self.checks,
            "sigma_cup_psi_top": self.sigma_psi,
            "value": list(self.value.coords) if self.value is not None else None,
            "defining_system": self.system,
            "verdict": self.verdict,
        }


def certify_quadruple_nontrivial(c: CochainComplex, classes: Sequence[Operand],
                                 sigma: GradedElement) -> QuadrupleCertificate:
    """Certify ``<a1, a2, a3, a4>`` non-trivial by multiplying with ``[sigma]``.

    With ``Psi = -(sum_k bar(alpha_1k) alpha_(k+1)4)`` for the canonical
    defining system, the certificate passes when

    * the intermediate groups ``H^{p1+p2-1}``, ``H^{p2+p3-1}``,
      ``H^{p3+p4-1}`` vanish, so every choice of defining system differs
      from the canonical one by exact corrections;
    * ``sigma ^ alpha_11 = 0`` and ``sigma ^ alpha_44 = 0`` as forms, which
      kill every choice-dependent term of ``sigma ^ Psi``;
    * ``[sigma ^ Psi] != 0``.

    A failed certificate is ``"inconclusive"``, never ``"trivial"``.
    """
    system = defining_system(c, classes)
    p = system.degrees
    if sigma and sigma.degree is not None:
        _form(c, sigma)
    vanish = {}
    for k in sorted({p[0] + p[1] - 1, p[1] + p[2] - 1, p[2] + p[3] - 1}):
        vanish[k] = c.betti(k)
    checks = [{
        "name": f"H^{k} = 0",
        "pass": b == 0,
        "witness": f"b_{k} = {b}",
    } for k, b in vanish.items()]
    for label, idx in (("a1", 1), ("a4", 4)):
        prod_form = sigma * system.alpha[(idx, idx)]
        checks.append({
            "name": f"sigma ^ rep({label}) = 0",
            "pass": not prod_form,
            "witness": prod_form.to_text(),
        })
    value = quadruple_value(c, system)
    psi = -value.representative
    top = sum(p) - 2 + (sigma.degree or 2)
    sigma_psi = None
    if top == c.top and c.betti(c.top) == 1:
        sigma_psi = top_class_value(class_of(c, sigma * psi, top))
        nonzero = sigma_psi != 0
        witness = f"[sigma ^ Psi] = {sigma_psi} [vol]"
    else:
        cls = class_of(c, sigma * psi, top)
        nonzero = not cls.is_zero
        witness = f"[sigma ^ Psi] coords {[str(x) for x in cls.coords]}"
    checks.append({"name": "[sigma ^ Psi] != 0", "pass": nonzero, "witness": witness})
    verdict = NONTRIVIAL if all(ch["pass"] for ch in checks) else INCONCLUSIVE
    return QuadrupleCertificate(tuple(p), sigma, system, checks, value, sigma_psi, verdict)


# -- G-Massey products -------------------------------------------------------


def _gm_rep(xis: Sequence[GradedElement], betas: Sequence[GradedElement]) -> GradedElement:
    x1, x2, x3 = xis
    b1, b2, b3 = betas
    return x1 * x2 * b3 + x2 * x3 * b1 + x3 * x1 * b2


@dataclass
class GMasseyResult:
    alpha: GradedElement
    betas: Tuple[GradedElement, GradedElement, GradedElement]
    primitives: Tuple[GradedElement, GradedElement, GradedElement]
    value: CohomologyClass
    value_top: Optional[Fraction]
    w_basis: List[list]
    triple_products: Dict[str, TripleMasseyResult]
    verdict: str

    def to_dict(self):
        return {
            "a": self.alpha,
            "x": list(self.betas),
            "primitives": list(self.primitives),
            "value": list(self.value.coords),
            "value_top": self.value_top,
            "W": self.w_basis,
            "W_dim": len(self.w_basis),
            "verdict": self.verdict,
        }


def gmassey(c: CochainComplex, a: Operand, x1: Operand, x2: Operand, x3: Operand,
            primitives: Optional[Sequence[GradedElement]] = None) -> GMasseyResult:
    """The G-Massey product ``<a; x1, x2, x3>`` of degree-2 classes.

    The value is the class of ``xi1 xi2 beta3 + xi2 xi3 beta1 + xi3 xi1 beta2``
    where ``d(xi_i) = alpha beta_i``.  ``W`` is spanned by the cup products
    of ``H^3`` with every attainable value of the triple products
    ``<x1,a,x2>``, ``<x1,a,x3>``, ``<x2,a,x3>``.
    """
    alpha, pa = _form(c, a, 2)
    betas = []
    for x in (x1, x2, x3):
        f, p = _form(c, x, 2)
        betas.append(f)
        if p != 2:
            raise PreconditionError("G-Massey inputs must have degree 2")
    if pa != 2:
        raise PreconditionError("G-Massey inputs must have degree 2")
    if primitives is None:
        xis = []
        for i, b in enumerate(betas, start=1):
            xi = find_primitive(c, alpha * b, 4)
            if xi is None:
                raise UndefinedProductError(f"a cup x{i} != 0", (0, i))
            xis.append(xi)
    else:
        xis = list(primitives)
        for i, (xi, b) in enumerate(zip(xis, betas), start=1):
            if c.d(xi) != alpha * b:
                raise CdgaError(f"supplied primitive {i} does not bound a ^ x{i}")
    rep = _gm_rep(xis, betas)
    degree = 8
    if degree > c.top:
        value = CohomologyClass(c, degree, (), c.table.zero())
    else:
        # closedness of the representative is enforced by class_of
        value = class_of(c, rep, degree)
    h3 = cohomology_basis(c, 3)
    triples = {}
    w_gens = []
    if h3 and degree <= c.top:
        pairs = {"x1,a,x2": (0, 1), "x1,a,x3": (0, 2), "x2,a,x3": (1, 2)}
        for label, (i, j) in pairs.items():
            t = triple_massey(c, betas[i], alpha, betas[j], degrees=(2, 2, 2))
            triples[label] = t
            attainable = [t.value.representative]
            for v in t.indeterminacy:
                attainable.append(_class_rep(c, v, 5))
            for rep5 in attainable:
                for h in h3:
                    w_gens.append(class_of(c, rep5 * h.representative, degree).coords)
    w_basis = _span_basis(w_gens)
    value_top = None
    if degree == c.top and c.betti(c.top) == 1:
        value_top = top_class_value(value)
    if value.is_zero:
        verdict = TRIVIAL
    elif _in_span(w_basis, value.coords):
        verdict = INCONCLUSIVE_IN_W
    else:
        verdict = NONTRIVIAL
    return GMasseyResult(alpha, tuple(betas), tuple(xis), value, value_top, w_basis, triples, verdict)


def _class_rep(c: CochainComplex, coords: Sequence, k: int) -> GradedElement:
    rep = c.table.zero()
    for coef, h in zip(coords, cohomology_basis(c, k)):
        if coef != 0:
            rep = rep + coef * h.representative
    return rep


@dataclass
class Lemma25Report:
    passed: bool
    chi: GradedElement
    xis: Tuple[GradedElement, ...]
    etas: Tuple[GradedElement, ...]
    lhs: GradedElement
    rhs: GradedElement
    checks: List[dict] = field(default_factory=list)

    def to_dict(self):
        return {
            "pass": self.passed,
            "chi": self.chi,
            "xi": list(self.xis),
            "eta": list(self.etas),
            "gmassey_representative": self.lhs,
            "quadruple_combination": self.rhs,
            "checks": self.checks,
        }


def lemma25_witness(c: CochainComplex, a: Operand, x1: Operand, x2: Operand, x3: Operand) -> Lemma25Report:
    """Exhibit a G-Massey representative inside ``x3<x1,a,a,x2> + x2<x3,a,a,x1> + x1<x2,a,a,x3>``.

    Needs ``a cup a = 0``, ``a cup x_i = 0`` and ``H^5 = 0``.  Builds ``chi``
    with ``d chi = alpha^2`` and ``eta_i`` with
    ``d eta_i = xi_i alpha - beta_i chi`` and checks the form identity
    exactly.
    """
    if c.betti(5) != 0:
        raise PreconditionError(f"H^5 must vanish (b_5 = {c.betti(5)})")
    alpha, _ = _form(c, a, 2)
    betas = [_form(c, x, 2)[0] for x in (x1, x2, x3)]
    chi = find_primitive(c, alpha * alpha, 4)
    if chi is None:
        raise UndefinedProductError("a cup a != 0", (0, 0))
    xis, etas = [], []
    for i, b in enumerate(betas, start=1):
        xi = find_primitive(c, alpha * b, 4)
        if xi is None:
            raise UndefinedProductError(f"a cup x{i} != 0", (0, i))
        xis.append(xi)
    checks = []
    for i, (xi, b) in enumerate(zip(xis, betas), start=1):
        w = xi * alpha - b * chi
        eta = find_primitive(c, w, 5)
        if eta is None:
            raise UndefinedProductError(f"xi_{i} a - x_{i} chi is not exact", (i, 5))
        etas.append(eta)
        checks.append({"name": f"d eta_{i} = xi_{i} a - x_{i} chi", "pass": c.d(eta) == w, "witness": ""})
    b1, b2, b3 = betas
    e1, e2, e3 = etas
    s1, s2, s3 = xis
    lhs = _gm_rep(xis, betas)
    q12 = e1 * b2 - e2 * b1 + s1 * s2
    q31 = e3 * b1 - e1 * b3 + s3 * s1
    q23 = e2 * b3 - e3 * b2 + s2 * s3
    rhs = b3 * q12 + b2 * q31 + b1 * q23
    checks.append({"name": "form identity", "pass": lhs == rhs, "witness": (lhs - rhs).to_text()})
    for label, q in (("<x1,a,a,x2>", q12), ("<x3,a,a,x1>", q31), ("<x2,a,a,x3>", q23)):
        checks.append({"name": f"{label} representative closed", "pass": not c.d(q), "witness": c.d(q).to_text()})
    passed = all(ch["pass"] for ch in checks)
    return Lemma25Report(passed, chi, tuple(xis), tuple(etas), lhs, rhs, checks)


def formality_verdict(reports: Sequence) -> str:
    """``"non-formal"`` if any report certifies a non-trivial obstruction."""
    for r in reports:
        verdict = r.get("verdict") if isinstance(r, dict) else getattr(r, "verdict", r)
        if verdict == NONTRIVIAL:
            return "non-formal"
    return "no obstruction found"
