"""Finite cyclic actions: automorphisms of a presentation, invariants, lattice fixed points."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .cohomology import CochainComplex, class_of, cohomology_basis
from .exterior import CdgaError, CdgaPresentation, GradedElement, apply_morphism, basis_of_degree, differential

__all__ = [
    "DegenerateActionError",
    "AlgebraAutomorphism",
    "AutomorphismReport",
    "verify_automorphism",
    "reynolds",
    "invariant_subcomplex",
    "invariant_dimensions",
    "isotypic_multiplicities",
    "invariant_cohomology_dimension",
    "LatticeAction",
    "fixed_point_count",
    "quotient_euler",
    "resolution_betti2",
]


class DegenerateActionError(CdgaError):
    """The action has a positive-dimensional fixed locus (``det(rho - I) == 0``)."""


class AlgebraAutomorphism:
    """Algebra map given by the images of the generators, of declared order ``n``."""

    def __init__(self, presentation: CdgaPresentation, images: Sequence[GradedElement],
                 order: int, name: str = "rho"):
        if len(images) != presentation.n:
            raise CdgaError("need one image per generator")
        for g, im in zip(presentation.table.names, images):
            if im.table != presentation.table:
                raise CdgaError(f"image of {g} is over a different table")
            if im and im.degrees() != {1}:
                raise CdgaError(f"image of {g} must have degree 1")
        self.presentation = presentation
        self.images = tuple(images)
        self.order = int(order)
        self.name = name

    @classmethod
    def identity(cls, presentation: CdgaPresentation) -> "AlgebraAutomorphism":
        return cls(presentation, presentation.table.gens(), 1, name="id")

    def __call__(self, x: GradedElement) -> GradedElement:
        return apply_morphism(self.images, x, self.presentation.table)

    def power(self, x: GradedElement, k: int) -> GradedElement:
        for _ in range(k):
            x = self(x)
        return x

    def matrix(self, k: int) -> list:
        """Matrix of the action on ``Lambda^k`` in the monomial basis."""
        monos = basis_of_degree(self.presentation, k)
        index = {m: i for i, m in enumerate(monos)}
        m = linalg.zeros(len(monos), len(monos))
        for j, mono in enumerate(monos):
            img = self(GradedElement(self.presentation.table, {mono: 1}))
            for mm, c in img.terms.items():
                m[index[mm]][j] = c
        return m


@dataclass
class AutomorphismReport:
    passed: bool
    order: int
    chain_map_failures: List[Tuple[str, GradedElement, GradedElement]] = field(default_factory=list)
    order_failures: List[Tuple[str, GradedElement]] = field(default_factory=list)

    def to_dict(self):
        return {
            "pass": self.passed,
            "order": self.order,
            "chain_map_failures": [
                {"generator": g, "rho_d": a, "d_rho": b} for g, a, b in self.chain_map_failures
            ],
            "order_failures": [{"generator": g, "image": im} for g, im in self.order_failures],
        }


def verify_automorphism(a: AlgebraAutomorphism) -> AutomorphismReport:
    """Check ``rho* d = d rho*`` on generators and ``(rho*)^n = id``."""
    p = a.presentation
    chain, order = [], []
    for g, gen, dg in zip(p.table.names, p.table.gens(), p.differentials):
        lhs = a(dg)
        rhs = differential(p, a(gen))
        if lhs != rhs:
            chain.append((g, lhs, rhs))
        it = a.power(gen, a.order)
        if it != gen:
            order.append((g, it))
    return AutomorphismReport(not chain and not order, a.order, chain, order)


def reynolds(a: AlgebraAutomorphism, x: GradedElement) -> GradedElement:
    """Average of ``x`` over the group: ``(1/n) sum_k (rho*)^k x``."""
    total = x.table.zero()
    y = x
    for _ in range(a.order):
        total = total + y
        y = a(y)
    return total / a.order


def _projector(a: AlgebraAutomorphism, k: int) -> list:
    """Matrix of the averaging projector on ``Lambda^k`` (monomial basis)."""
    monos = basis_of_degree(a.presentation, k)
    index = {m: i for i, m in enumerate(monos)}
    m = linalg.zeros(len(monos), len(monos))
    for j, mono in enumerate(monos):
        avg = reynolds(a, GradedElement(a.presentation.table, {mono: 1}))
        for mm, c in avg.terms.items():
            m[index[mm]][j] = c
    return m


def invariant_subcomplex(a: AlgebraAutomorphism, check: bool = True) -> CochainComplex:
    """The d-stable subcomplex of invariant forms.

    Degree-``k`` basis: nonzero rows of the RREF of the image of the
    averaging projector.
    """
    if check:
        report = verify_automorphism(a)
        if not report.passed:
            raise CdgaError("action is not an automorphism of finite order of the complex")
    p = a.presentation
    bases = []
    for k in range(p.n + 1):
        proj = _projector(a, k)
        bases.append(linalg.row_space_basis(linalg.transpose(proj)))
    return CochainComplex(p, bases, name=f"{p.name}^{a.name}")


def invariant_dimensions(a: AlgebraAutomorphism) -> List[int]:
    return [linalg.rank(_projector(a, k)) for k in range(a.presentation.n + 1)]


def isotypic_multiplicities(a: AlgebraAutomorphism, k: int) -> Tuple[int, int]:
    """``(trivial, A)`` multiplicities of ``Lambda^k`` for an order-3 action.

    ``A`` is the 2-dimensional real representation in which the generator
    acts with no fixed vector; the split is only valid when the
    non-invariant part has even dimension.
    """
    if a.order != 3:
        raise CdgaError("isotypic split is only defined for order-3 actions")
    proj = _projector(a, k)
    trivial = linalg.rank(proj)
    rest = len(proj) - trivial
    if rest % 2:
        raise CdgaError(f"non-invariant part of degree {k} has odd dimension {rest}")
    return trivial, rest // 2


def invariant_cohomology_dimension(a: AlgebraAutomorphism, c: CochainComplex, k: int) -> int:
    """Dimension of the invariant part of ``H^k`` of the full complex ``c``.

    Computed from the induced action on a cohomology basis, independently of
    the invariant subcomplex.
    """
    basis = cohomology_basis(c, k)
    if not basis:
        return 0
    cols = [list(class_of(c, a(h.representative), k).coords) for h in basis]
    m = linalg.transpose(cols)
    n = len(m)
    acc = linalg.identity(n)
    power = linalg.identity(n)
    for _ in range(a.order - 1):
        power = linalg.matmul(m, power)
        acc = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(acc, power)]
    return linalg.rank(acc)


# -- lattices ---------------------------------------------------------------


@dataclass(frozen=True)
class LatticeAction:
    """Integral 2x2 action ``rho`` on R^2 preserving the lattice spanned by the columns of ``basis``."""

    rho: Tuple[Tuple[int, int], Tuple[int, int]]
    basis: Tuple[Tuple[int, int], Tuple[int, int]] = ((1, 0), (0, 1))

    def in_lattice_coordinates(self) -> List[List[int]]:
        b = [[Fraction(x) for x in row] for row in self.basis]
        det = b[0][0] * b[1][1] - b[0][1] * b[1][0]
        if det == 0:
            raise CdgaError("lattice basis is degenerate")
        binv = [[b[1][1] / det, -b[0][1] / det], [-b[1][0] / det, b[0][0] / det]]
        conj = linalg.matmul(linalg.matmul(binv, [list(r) for r in self.rho]), b)
        if any(x.denominator != 1 for row in conj for x in row):
            raise CdgaError("rho does not preserve the lattice")
        return [[int(x) for x in row] for row in conj]


def fixed_point_count(l: LatticeAction) -> int:
    """Number of fixed points of ``rho`` on ``R^2 / L``, i.e. ``[L : (rho - I) L]``."""
    r = l.in_lattice_coordinates()
    shifted = [[r[0][0] - 1, r[0][1]], [r[1][0], r[1][1] - 1]]
    _, diag, _ = linalg.smith_normal_form(shifted)
    count = 1
    for d in diag:
        count *= d
    if count == 0:
        raise DegenerateActionError("det(rho - I) = 0: fixed locus is not isolated")
    return count


def quotient_euler(chi: int, n: int, isotropy_orders: Sequence[int]) -> Fraction:
    """Euler characteristic of ``X / Z_n`` for an action with isolated fixed points."""
    return Fraction(chi, n) + sum((1 - Fraction(1, m) for m in isotropy_orders), Fraction(0))


def resolution_betti2(b2_orbifold: int, fixed_points: int, divisors_per_point: int = 3) -> int:
    return b2_orbifold + divisors_per_point * fixed_points
