"""Principal 2-torus bundles over 4-tori from lattices in C^2 and C.

The base lattice is spanned by four vectors of a rank-2 module over
``Z[zeta]`` or ``Z[i]``; the fiber lattice is the ring itself with basis
``{1, zeta}`` or ``{1, i}``.  The curvature class sends ``e_i ^ e_j`` to the
determinant of the two vectors, written in the fiber basis.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import List, Sequence, Tuple

from . import linalg
from .exterior import CdgaError

__all__ = [
    "EISENSTEIN",
    "GAUSSIAN",
    "QuadInt",
    "BundleData",
    "PAIRS",
    "eisenstein_bundle",
    "gaussian_bundle",
    "bundle_for_ring",
    "curvature_class_matrix",
    "q_pairing_matrix",
    "image_lattice_basis",
    "gram_matrix",
    "image_lattice_q_determinant",
    "wedge2_matrix",
    "change_bases",
    "random_unimodular",
    "bundles_equivalent",
]

EISENSTEIN = "eisenstein"
GAUSSIAN = "gaussian"

# i < j, lexicographic, 0-based
PAIRS: Tuple[Tuple[int, int], ...] = tuple(combinations(range(4), 2))


@dataclass(frozen=True)
class QuadInt:
    """``m + n w`` with ``w = zeta`` (``w^2 = -1 - w``) or ``w = i`` (``w^2 = -1``)."""

    m: int
    n: int
    ring: str = EISENSTEIN

    def __post_init__(self):
        if self.ring not in (EISENSTEIN, GAUSSIAN):
            raise CdgaError(f"unknown ring {self.ring!r}")

    def _other(self, o):
        if isinstance(o, int):
            return QuadInt(o, 0, self.ring)
        if isinstance(o, QuadInt):
            if o.ring != self.ring:
                raise CdgaError("mixing Eisenstein and Gaussian integers")
            return o
        return NotImplemented

    def __add__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return QuadInt(self.m + o.m, self.n + o.n, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.m, -self.n, self.ring)

    def __sub__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        a, b, c, d = self.m, self.n, o.m, o.n
        w2 = b * d
        if self.ring == EISENSTEIN:
            return QuadInt(a * c - w2, a * d + b * c - w2, self.ring)
        return QuadInt(a * c - w2, a * d + b * c, self.ring)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = QuadInt(1, 0, self.ring)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, int):
            return self.m == o and self.n == 0
        if isinstance(o, QuadInt):
            return (self.m, self.n, self.ring) == (o.m, o.n, o.ring)
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.n, self.ring))

    def coords(self) -> Tuple[int, int]:
        return self.m, self.n

    def __repr__(self):
        w = "zeta" if self.ring == EISENSTEIN else "i"
        return f"{self.m}+{self.n}*{w}"


@dataclass(frozen=True)
class BundleData:
    ring: str
    base: Tuple[Tuple[QuadInt, QuadInt], ...]

    def __post_init__(self):
        if len(self.base) != 4:
            raise CdgaError("need four base vectors")


def _w(ring):
    return QuadInt(0, 1, ring)


def _basis_for(ring: str) -> BundleData:
    one, w, zero = QuadInt(1, 0, ring), _w(ring), QuadInt(0, 0, ring)
    return BundleData(ring, ((one, zero), (w, zero), (zero, one), (zero, w)))


def eisenstein_bundle() -> BundleData:
    """Base ``Z[zeta]^2`` with basis ``(1,0), (zeta,0), (0,1), (0,zeta)``."""
    return _basis_for(EISENSTEIN)


def gaussian_bundle() -> BundleData:
    return _basis_for(GAUSSIAN)


def bundle_for_ring(ring: str) -> BundleData:
    if ring not in (EISENSTEIN, GAUSSIAN):
        raise CdgaError(f"unknown ring {ring!r}; expected eisenstein or gaussian")
    return _basis_for(ring)


def curvature_class_matrix(b: BundleData) -> List[List[int]]:
    """2x6 integer matrix; column ``(i, j)`` is ``a_i1 a_j2 - a_i2 a_j1`` in the fiber basis."""
    cols = []
    for i, j in PAIRS:
        (a1, a2), (b1, b2) = b.base[i], b.base[j]
        cols.append((a1 * b2 - a2 * b1).coords())
    return [[c[0] for c in cols], [c[1] for c in cols]]


def _perm_sign(p: Sequence[int]) -> int:
    inv = sum(1 for x in range(len(p)) for y in range(x + 1, len(p)) if p[x] > p[y])
    return -1 if inv % 2 else 1


def q_pairing_matrix() -> List[List[int]]:
    """``Q(e_ij, e_kl)`` = sign of ``(i, j, k, l)`` when all four indices differ."""
    q = [[0] * 6 for _ in range(6)]
    for r, (i, j) in enumerate(PAIRS):
        for s, (k, l) in enumerate(PAIRS):
            if len({i, j, k, l}) == 4:
                q[r][s] = _perm_sign((i, j, k, l))
    return q


def image_lattice_basis(f: Sequence[Sequence[int]]) -> List[List[int]]:
    """Basis of the row lattice of ``f``, read off its Smith reduction."""
    left, diag, _ = linalg.smith_normal_form(f)
    rows = [[sum(l * x for l, x in zip(lrow, col)) for col in zip(*f)] for lrow in left]
    r = sum(1 for d in diag if d)
    return rows[:r]


def gram_matrix(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    q = q_pairing_matrix()
    qr = [[sum(q[a][b] * v[b] for b in range(6)) for a in range(6)] for v in rows]
    return [[sum(u[a] * w[a] for a in range(6)) for w in qr] for u in rows]


def image_lattice_q_determinant(f: Sequence[Sequence[int]]) -> int:
    """``|det|`` of ``Q`` restricted to the image lattice of ``f``."""
    if len(f) != 2 or any(len(r) != 6 for r in f):
        raise CdgaError("curvature matrix must be 2x6")
    basis = image_lattice_basis(f)
    if len(basis) < 2:
        raise CdgaError(f"curvature matrix has rank {len(basis)} < 2")
    return abs(linalg.int_det(gram_matrix(basis)))


def wedge2_matrix(g: Sequence[Sequence[int]]) -> List[List[int]]:
    """6x6 matrix of ``Lambda^2 g`` on the ``e_i ^ e_j`` basis (2x2 minors)."""
    return [[g[i][k] * g[j][l] - g[i][l] * g[j][k] for (k, l) in PAIRS] for (i, j) in PAIRS]


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def change_bases(f, base: Sequence[Sequence[int]], fiber: Sequence[Sequence[int]]):
    """``fiber @ f @ Lambda^2(base)``: the curvature matrix in new lattice bases."""
    return _matmul(_matmul([list(r) for r in fiber], [list(r) for r in f]), wedge2_matrix(base))


def random_unimodular(n: int, rng: random.Random, steps: int = 12) -> List[List[int]]:
    """Product of random elementary matrices and sign flips."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        f = rng.choice([-2, -1, 1, 2])
        m[i] = [x + f * y for x, y in zip(m[i], m[j])]
        if rng.random() < 0.2:
            k = rng.randrange(n)
            m[k] = [-x for x in m[k]]
    return m


def bundles_equivalent(f1, f2) -> dict:
    d1 = image_lattice_q_determinant(f1)
    d2 = image_lattice_q_determinant(f2)
    return {"verdict": "distinct" if d1 != d2 else "inconclusive", "invariants": [d1, d2]}
