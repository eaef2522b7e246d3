"""Free graded-commutative algebras on degree-1 generators.

A monomial is a strictly increasing tuple of generator indices (the empty
tuple is the unit).  A :class:`GradedElement` is a sparse linear
combination of monomials with exact coefficients.  A
:class:`CdgaPresentation` fixes the differential on generators and extends
it by the Leibniz rule.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .scalars import Scalar, as_scalar, format_scalar

__all__ = [
    "CdgaError",
    "Monomial",
    "GeneratorTable",
    "GradedElement",
    "CdgaPresentation",
    "DSquaredReport",
    "merge_monomials",
    "wedge",
    "differential",
    "bar",
    "check_d_squared",
    "basis_of_degree",
    "apply_morphism",
    "change_basis",
]

Monomial = Tuple[int, ...]


class CdgaError(ValueError):
    """Structural error in an algebra, element or presentation."""


@dataclass(frozen=True)
class GeneratorTable:
    """Ordered, duplicate-free generator names, all of degree 1."""

    names: Tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise CdgaError(f"duplicate generator names in {names}")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise CdgaError(f"unknown generator {name!r}") from None

    def gen(self, name: str) -> "GradedElement":
        return GradedElement(self, {(self.index(name),): Fraction(1)})

    def gens(self) -> List["GradedElement"]:
        return [GradedElement(self, {(i,): Fraction(1)}) for i in range(len(self))]

    def unit(self) -> "GradedElement":
        return GradedElement(self, {(): Fraction(1)})

    def zero(self) -> "GradedElement":
        return GradedElement(self, {})

    def monomial(self, *names: str) -> "GradedElement":
        out = self.unit()
        for n in names:
            out = out * self.gen(n)
        return out

    def volume(self) -> "GradedElement":
        """The monomial of all generators, in table order, with coefficient +1."""
        return GradedElement(self, {tuple(range(len(self))): Fraction(1)})


def merge_monomials(x: Monomial, y: Monomial) -> Tuple[int, Optional[Monomial]]:
    """Sign and merged monomial of ``x ^ y``; ``(0, None)`` on a repeated index."""
    sx = set(x)
    if any(i in sx for i in y):
        return 0, None
    inversions = sum(1 for i in x for j in y if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(x + y))


class GradedElement:
    """Sparse exact linear combination of canonical monomials.

    Supports ``+``, ``-``, scalar ``*`` and the wedge product (``*`` between
    two elements).  Zero coefficients are never stored.
    """

    __slots__ = ("table", "terms")

    def __init__(self, table: GeneratorTable, terms: Optional[Mapping[Monomial, object]] = None):
        self.table = table
        clean: Dict[Monomial, Scalar] = {}
        for mono, c in (terms or {}).items():
            c = as_scalar(c)
            if c != 0:
                clean[tuple(mono)] = c
        self.terms = clean

    # -- structure ------------------------------------------------------
    def degrees(self) -> set:
        return {len(m) for m in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> Optional[int]:
        """Degree of a homogeneous element; ``None`` for zero."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise CdgaError(f"inhomogeneous element with degrees {sorted(degs)}")
        return next(iter(degs))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Iterable[int]) -> Scalar:
        return self.terms.get(tuple(mono), Fraction(0))

    def _check_table(self, other: "GradedElement"):
        if other.table != self.table:
            raise CdgaError("elements live over different generator tables")

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        self._check_table(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return GradedElement(self.table, out)

    def __neg__(self):
        return GradedElement(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return wedge(self, other)
        try:
            s = as_scalar(other)
        except TypeError:
            return NotImplemented
        return GradedElement(self.table, {m: c * s for m, c in self.terms.items()})

    def __rmul__(self, other):
        try:
            s = as_scalar(other)
        except TypeError:
            return NotImplemented
        return GradedElement(self.table, {m: s * c for m, c in self.terms.items()})

    def __truediv__(self, other):
        s = as_scalar(other)
        return GradedElement(self.table, {m: c / s for m, c in self.terms.items()})

    def __pow__(self, k: int):
        out = self.table.unit()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GradedElement):
            return self.table == other.table and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.table, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def to_text(self) -> str:
        """Canonical DSL rendering, e.g. ``-1*b1^c1 + 2*b2^c2``."""
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[mono]
            word = "^".join(self.table.names[i] for i in mono)
            if not word:
                body = format_scalar(c)
            elif c == 1:
                body = word
            elif c == -1:
                body = "-" + word
            else:
                body = f"{format_scalar(c)}*{word}"
            parts.append(body)
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __repr__(self):
        return f"GradedElement({self.to_text()!r})"

    __str__ = to_text


def wedge(x: GradedElement, y: GradedElement) -> GradedElement:
    x._check_table(y)
    out: Dict[Monomial, Scalar] = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            sign, m = merge_monomials(mx, my)
            if sign:
                out[m] = out.get(m, 0) + sign * cx * cy
    return GradedElement(x.table, out)


def bar(x: GradedElement) -> GradedElement:
    """``(-1)^deg(x) * x`` for homogeneous ``x``."""
    if not x.is_homogeneous:
        raise CdgaError("bar() needs a homogeneous element")
    deg = x.degree
    return -x if deg is not None and deg % 2 else x


def basis_of_degree(table_or_pres, k: int) -> List[Monomial]:
    """All increasing monomials of length ``k``, lexicographically ordered."""
    table = getattr(table_or_pres, "table", table_or_pres)
    n = len(table)
    if not 0 <= k <= n:
        raise CdgaError(f"degree {k} outside 0..{n}")
    return list(combinations(range(n), k))


@dataclass
class DSquaredReport:
    passed: bool
    values: Dict[str, GradedElement]
    failures: List[str] = field(default_factory=list)

    def to_dict(self):
        return {
            "pass": self.passed,
            "failures": list(self.failures),
            "d_squared": {k: v.to_text() for k, v in self.values.items()},
        }


class CdgaPresentation:
    """Generators of degree 1 together with their differentials.

    Construction checks that every differential image is homogeneous of
    degree 2 and that ``d(d(g)) == 0`` for every generator; pass
    ``check=False`` to build a broken presentation for inspection with
    :func:`check_d_squared`.
    """

    def __init__(self, table: GeneratorTable, differentials: Sequence[GradedElement],
                 name: str = "", check: bool = True):
        if not isinstance(table, GeneratorTable):
            table = GeneratorTable(tuple(table))
        if len(differentials) != len(table):
            raise CdgaError("need exactly one differential per generator")
        for g, dg in zip(table.names, differentials):
            if dg.table != table:
                raise CdgaError(f"d({g}) is over a different generator table")
            if dg and dg.degrees() != {2}:
                raise CdgaError(f"d({g}) must be homogeneous of degree 2, got degrees {sorted(dg.degrees())}")
        self.table = table
        self.differentials = tuple(differentials)
        self.name = name
        self._dcache: Dict[Monomial, GradedElement] = {}
        if check:
            report = check_d_squared(self)
            if not report.passed:
                raise CdgaError("d^2 != 0 on generator(s) " + ", ".join(report.failures))

    @classmethod
    def from_dict(cls, names: Sequence[str], diffs: Mapping[str, object], name: str = "", check: bool = True):
        """Build from generator names and ``{name: element-or-terms}``.

        Terms may be given as ``{("b1", "c1"): -1, ...}`` for convenience.
        """
        table = GeneratorTable(tuple(names))
        out = []
        for g in table.names:
            v = diffs.get(g)
            if v is None:
                out.append(table.zero())
            elif isinstance(v, GradedElement):
                out.append(v)
            else:
                elem = table.zero()
                for word, c in v.items():
                    elem = elem + as_scalar(c) * table.monomial(*word)
                out.append(elem)
        return cls(table, out, name=name, check=check)

    @property
    def n(self) -> int:
        return len(self.table)

    def d_of(self, name: str) -> GradedElement:
        return self.differentials[self.table.index(name)]

    def d_monomial(self, mono: Monomial) -> GradedElement:
        cached = self._dcache.get(mono)
        if cached is not None:
            return cached
        out = self.table.zero()
        for j, g in enumerate(mono):
            dg = self.differentials[g]
            if not dg:
                continue
            left = GradedElement(self.table, {mono[:j]: 1})
            right = GradedElement(self.table, {mono[j + 1:]: 1})
            term = left * dg * right
            out = out - term if j % 2 else out + term
        self._dcache[mono] = out
        return out

    def __eq__(self, other):
        if not isinstance(other, CdgaPresentation):
            return NotImplemented
        return self.table == other.table and self.differentials == other.differentials

    def __hash__(self):
        return hash((self.table, self.differentials))

    def __repr__(self):
        return f"CdgaPresentation({self.name or '?'}, generators={list(self.table.names)})"


def differential(p: CdgaPresentation, x: GradedElement) -> GradedElement:
    if x.table != p.table:
        raise CdgaError("element is not over the presentation's generator table")
    out = p.table.zero()
    for mono, c in x.terms.items():
        out = out + c * p.d_monomial(mono)
    return out


def check_d_squared(p: CdgaPresentation) -> DSquaredReport:
    values = {}
    failures = []
    for g, dg in zip(p.table.names, p.differentials):
        dd = differential(p, dg)
        values[g] = dd
        if dd:
            failures.append(g)
    return DSquaredReport(not failures, values, failures)


def apply_morphism(images: Sequence[GradedElement], x: GradedElement,
                   target: Optional[GeneratorTable] = None) -> GradedElement:
    """Extend ``generator i -> images[i]`` multiplicatively and apply to ``x``."""
    if target is None:
        target = images[0].table if images else x.table
    out = target.zero()
    for mono, c in x.terms.items():
        term = target.unit()
        for i in mono:
            term = term * images[i]
        out = out + c * term
    return out


def change_basis(p: CdgaPresentation, new_names: Sequence[str],
                 matrix: Sequence[Sequence], name: str = "") -> CdgaPresentation:
    """Rewrite ``p`` in new degree-1 generators.

    ``matrix[i][j]`` is the coefficient of old generator ``j`` in new
    generator ``i``.  The matrix must be invertible over the coefficient
    field.
    """
    from .linalg import rref

    n = p.n
    new_table = GeneratorTable(tuple(new_names))
    if len(new_table) != n:
        raise CdgaError("basis change must preserve the number of generators")
    aug = [list(map(as_scalar, row)) + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    r, piv, red = rref(aug)
    if piv[:n] != list(range(n)) or r < n:
        raise CdgaError("basis-change matrix is singular")
    inv = [row[n:] for row in red[:n]]
    # old generator j = sum_i inv[j][i] * new_i
    old_in_new = [GradedElement(new_table, {(i,): inv[j][i] for i in range(n)}) for j in range(n)]
    diffs = []
    for i in range(n):
        d_new_old = p.table.zero()
        for j in range(n):
            c = as_scalar(matrix[i][j])
            if c != 0:
                d_new_old = d_new_old + c * p.differentials[j]
        diffs.append(apply_morphism(old_in_new, d_new_old, new_table))
    return CdgaPresentation(new_table, diffs, name=name)


def dimension(p: CdgaPresentation, k: int) -> int:
    return comb(p.n, k)
