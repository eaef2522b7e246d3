"""Cochain complexes of a presentation (or a d-stable sub-basis) and their cohomology."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import linalg
from .exterior import CdgaError, CdgaPresentation, GradedElement, basis_of_degree, differential

__all__ = [
    "NotClosedError",
    "CochainComplex",
    "CohomologyClass",
    "cohomology_basis",
    "class_of",
    "cup",
    "betti_vector",
    "euler_characteristic",
    "top_class_value",
    "poincare_pairing",
    "lefschetz_kernel",
]


class NotClosedError(CdgaError):
    def __init__(self, message: str, dz: Optional[GradedElement] = None):
        super().__init__(message)
        self.dz = dz


class _Degree:
    """Per-degree cohomology data, computed once."""

    def __init__(self, reps, proj, solver_prev):
        self.reps: List[list] = reps          # cocycle representatives (complex coords)
        self.proj: List[list] = proj          # coords of closed vector -> class coords
        self.solver_prev = solver_prev        # solves d_{k-1} u = z


class CochainComplex:
    """A cochain complex spanned by monomials or by explicit coordinate vectors.

    With ``sub_bases=None`` the degree-``k`` cochains are all of
    ``Lambda^k``.  Otherwise ``sub_bases[k]`` lists linearly independent
    vectors in monomial coordinates spanning a d-stable subspace.
    """

    def __init__(self, presentation: CdgaPresentation,
                 sub_bases: Optional[Sequence[Sequence[Sequence]]] = None, name: str = ""):
        self.presentation = presentation
        self.table = presentation.table
        self.top = presentation.n
        self.name = name or presentation.name
        self._mono = [basis_of_degree(presentation, k) for k in range(self.top + 1)]
        self._mono_index = [{m: i for i, m in enumerate(ms)} for ms in self._mono]
        if sub_bases is None:
            self.sub_bases = None
        else:
            if len(sub_bases) != self.top + 1:
                raise CdgaError("need one sub-basis per degree")
            self.sub_bases = [[list(v) for v in vs] for vs in sub_bases]
        self._lock = threading.RLock()
        self._dmat: Dict[int, list] = {}
        self._coord_solvers: Dict[int, linalg.LinearSolver] = {}
        self._degrees: Dict[int, _Degree] = {}
        if self.sub_bases is not None:
            self.verify_stable()

    @property
    def is_sub(self) -> bool:
        return self.sub_bases is not None

    def dim(self, k: int) -> int:
        if not 0 <= k <= self.top:
            return 0
        if self.sub_bases is None:
            return len(self._mono[k])
        return len(self.sub_bases[k])

    def dims(self) -> List[int]:
        return [self.dim(k) for k in range(self.top + 1)]

    # -- coordinates ------------------------------------------------------
    def monomial_vector(self, z: GradedElement, k: int) -> list:
        idx = self._mono_index[k]
        v = [Fraction(0)] * len(idx)
        for m, c in z.terms.items():
            if len(m) != k:
                raise CdgaError(f"element has a term of degree {len(m)}, expected {k}")
            v[idx[m]] = c
        return v

    def element_from_monomial_vector(self, v: Sequence, k: int) -> GradedElement:
        return GradedElement(self.table, {m: c for m, c in zip(self._mono[k], v) if c != 0})

    def coords(self, z: GradedElement, k: Optional[int] = None) -> list:
        """Coordinates of ``z`` in the degree-``k`` cochain basis."""
        if k is None:
            k = z.degree if z else 0
        if not 0 <= k <= self.top:
            return []
        mv = self.monomial_vector(z, k)
        if self.sub_bases is None:
            return mv
        solver = self._coord_solver(k)
        sol = solver.solve(mv)
        if sol is None:
            raise CdgaError(f"element {z.to_text()} is not in the subcomplex")
        return sol

    def element(self, v: Sequence, k: int) -> GradedElement:
        if self.sub_bases is None:
            return self.element_from_monomial_vector(v, k)
        mv = [Fraction(0)] * len(self._mono[k])
        for c, b in zip(v, self.sub_bases[k]):
            if c != 0:
                mv = [x + c * y for x, y in zip(mv, b)]
        return self.element_from_monomial_vector(mv, k)

    def contains(self, z: GradedElement) -> bool:
        if self.sub_bases is None or not z:
            return True
        k = z.degree
        return self._coord_solver(k).solve(self.monomial_vector(z, k)) is not None

    def _coord_solver(self, k: int) -> linalg.LinearSolver:
        with self._lock:
            s = self._coord_solvers.get(k)
            if s is None:
                basis = self.sub_bases[k]
                s = linalg.LinearSolver(linalg.transpose(basis) if basis else
                                        [[] for _ in self._mono[k]], ncols=len(basis))
                self._coord_solvers[k] = s
            return s

    # -- differentials ------------------------------------------------------
    def d(self, z: GradedElement) -> GradedElement:
        return differential(self.presentation, z)

    def d_matrix(self, k: int) -> list:
        """Matrix of ``d: C^k -> C^{k+1}`` (``dim(k+1)`` rows)."""
        with self._lock:
            if k in self._dmat:
                return self._dmat[k]
            rows, cols = self.dim(k + 1), self.dim(k)
            m = linalg.zeros(rows, cols)
            if rows and cols:
                for j in range(cols):
                    dz = self.d(self.element(_unit(cols, j), k))
                    col = self.coords(dz, k + 1) if dz else [Fraction(0)] * rows
                    for i in range(rows):
                        m[i][j] = col[i]
            self._dmat[k] = m
            return m

    def verify_stable(self):
        for k in range(self.top):
            for v in self.sub_bases[k]:
                dz = self.d(self.element_from_monomial_vector(v, k))
                if dz and not self.contains(dz):
                    raise CdgaError(f"sub-basis is not d-stable in degree {k}")

    # -- cohomology -------------------------------------------------------
    def _degree(self, k: int) -> _Degree:
        with self._lock:
            if k in self._degrees:
                return self._degrees[k]
            n = self.dim(k)
            dk = self.d_matrix(k) if k < self.top else []
            if n == 0:
                cocycles = []
            elif dk and len(dk) > 0:
                cocycles = linalg.kernel_basis(dk)
            else:
                cocycles = linalg.kernel_basis([], ncols=n)
            prev = self.d_matrix(k - 1) if k > 0 else []
            boundaries = linalg.row_space_basis(linalg.transpose(prev)) if prev and prev[0] else []
            # extend the coboundary echelon basis by cocycles, leftmost first
            echelon = linalg.Echelon(boundaries)
            reps = [z for z in cocycles if echelon.add(z)]
            proj = _left_inverse_rows(reps + list(boundaries), len(reps), n)
            solver_prev = linalg.LinearSolver(prev, ncols=self.dim(k - 1)) if k > 0 and n else None
            deg = _Degree(reps, proj, solver_prev)
            self._degrees[k] = deg
            return deg

    def betti(self, k: int) -> int:
        if not 0 <= k <= self.top:
            return 0
        return len(self._degree(k).reps)

    def is_closed(self, z: GradedElement) -> bool:
        return not self.d(z)

    def primitive(self, w: GradedElement, k: Optional[int] = None) -> Optional[GradedElement]:
        """Deterministic ``u`` with ``d(u) == w``, or ``None`` if ``w`` is not exact."""
        if not w:
            return self.table.zero()
        k = w.degree if k is None else k
        if k == 0:
            return None
        dz = self.d(w)
        if dz:
            raise NotClosedError(f"form is not closed: d = {dz.to_text()}", dz)
        if self.dim(k - 1) == 0:
            return None
        sol = self._degree(k).solver_prev.solve(self.coords(w, k))
        if sol is None:
            return None
        u = self.element(sol, k - 1)
        assert self.d(u) == w
        return u


def _unit(n: int, j: int) -> list:
    v = [Fraction(0)] * n
    v[j] = Fraction(1)
    return v


def _left_inverse_rows(columns: List[list], keep: int, n: int) -> List[list]:
    """Rows ``L`` with ``L @ (sum c_i columns_i) = c[:keep]``."""
    if not columns or keep == 0:
        return []
    # independent rows of the (n x m) matrix with the given columns
    mat = linalg.transpose(columns)
    _, rows, _ = linalg.rref(columns)  # pivots of columns-as-rows = independent coordinates
    sub = [[mat[r][j] for j in range(len(columns))] for r in rows]
    inv = _invert(sub)
    out = []
    for i in range(keep):
        row = [Fraction(0)] * n
        for t, r in enumerate(rows):
            row[r] = inv[i][t]
        out.append(row)
    return out


def _invert(m: List[list]) -> List[list]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    r, piv, red = linalg.rref(aug)
    if r < n or piv[:n] != list(range(n)):
        raise CdgaError("internal error: singular basis matrix")
    return [row[n:] for row in red]


@dataclass(frozen=True)
class CohomologyClass:
    """A class in ``H^degree`` of ``complex`` given by basis coordinates.

    ``representative`` is a closed form whose class has exactly these
    coordinates.
    """

    complex: CochainComplex
    degree: int
    coords: tuple
    representative: GradedElement

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self.complex is other.complex and self.degree == other.degree and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.complex), self.degree, self.coords))

    def __add__(self, other):
        _same(self, other)
        return CohomologyClass(self.complex, self.degree,
                               tuple(a + b for a, b in zip(self.coords, other.coords)),
                               self.representative + other.representative)

    def __neg__(self):
        return CohomologyClass(self.complex, self.degree, tuple(-a for a in self.coords), -self.representative)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, s):
        return CohomologyClass(self.complex, self.degree, tuple(s * a for a in self.coords), s * self.representative)

    def to_dict(self):
        return {"degree": self.degree, "coords": list(self.coords), "representative": self.representative}


def _same(a: CohomologyClass, b: CohomologyClass):
    if a.complex is not b.complex or a.degree != b.degree:
        raise CdgaError("classes belong to different groups")


def cohomology_basis(c: CochainComplex, k: int) -> List[CohomologyClass]:
    if not 0 <= k <= c.top:
        return []
    deg = c._degree(k)
    b = len(deg.reps)
    out = []
    for i, v in enumerate(deg.reps):
        coords = tuple(Fraction(int(i == j)) for j in range(b))
        out.append(CohomologyClass(c, k, coords, c.element(v, k)))
    return out


def class_of(c: CochainComplex, z: GradedElement, k: Optional[int] = None) -> CohomologyClass:
    """Class of a closed form ``z`` (``k`` is needed only when ``z == 0``)."""
    if k is None:
        if not z:
            raise CdgaError("degree required for the zero form")
        k = z.degree
    if not 0 <= k <= c.top:
        return CohomologyClass(c, k, (), c.table.zero())
    dz = c.d(z)
    if dz:
        raise NotClosedError(f"form is not closed: d = {dz.to_text()}", dz)
    deg = c._degree(k)
    if not deg.reps:
        return CohomologyClass(c, k, (), z)
    v = c.coords(z, k)
    coords = tuple(linalg.matvec(deg.proj, v))
    return CohomologyClass(c, k, coords, z)


def cup(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    if a.complex is not b.complex:
        raise CdgaError("classes belong to different complexes")
    k = a.degree + b.degree
    return class_of(a.complex, a.representative * b.representative, k)


def betti_vector(c: CochainComplex) -> List[int]:
    return [c.betti(k) for k in range(c.top + 1)]


def euler_characteristic(c: CochainComplex) -> int:
    return sum((-1) ** k * b for k, b in enumerate(betti_vector(c)))


def top_class_value(x: CohomologyClass) -> Fraction:
    """Coefficient of ``x`` on the class of the positive volume monomial."""
    c = x.complex
    if x.degree != c.top:
        raise CdgaError(f"top_class_value needs a degree-{c.top} class")
    vol = class_of(c, c.table.volume(), c.top)
    if c.betti(c.top) != 1 or vol.is_zero:
        raise CdgaError("top cohomology is not spanned by the volume class")
    return x.coords[0] / vol.coords[0]


def poincare_pairing(c: CochainComplex, k: int) -> list:
    """Matrix of ``(a, b) -> <a cup b, [vol]>`` on ``H^k x H^{top-k}``."""
    if c.betti(c.top) != 1:
        raise CdgaError("top cohomology is not one-dimensional")
    left = cohomology_basis(c, k)
    right = cohomology_basis(c, c.top - k)
    return [[top_class_value(cup(a, b)) for b in right] for a in left]


def lefschetz_kernel(c: CochainComplex, omega: CohomologyClass, k: int, power: int) -> List[CohomologyClass]:
    """Basis of the kernel of ``cup omega^power: H^k -> H^{k + 2 power}``."""
    if omega.degree != 2:
        raise CdgaError("omega must have degree 2")
    basis = cohomology_basis(c, k)
    if power == 0 or not basis:
        return []
    wp = omega.representative ** power
    target = k + 2 * power
    if target > c.top or c.betti(target) == 0:
        images = [[] for _ in basis]
    else:
        images = [list(class_of(c, h.representative * wp, target).coords) for h in basis]
    if not images[0]:
        kern = [[Fraction(int(i == j)) for j in range(len(basis))] for i in range(len(basis))]
    else:
        kern = linalg.kernel_basis(linalg.transpose(images))
    out = []
    for v in kern:
        rep = c.table.zero()
        for coef, h in zip(v, basis):
            if coef != 0:
                rep = rep + coef * h.representative
        out.append(CohomologyClass(c, k, tuple(v), rep))
    return out
