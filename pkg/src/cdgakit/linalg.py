"""Dense exact linear algebra over Q or Q(sqrt 3), and integer Smith form.

Matrices are plain row-major lists of lists.  Entries may be ``int``,
``Fraction`` or :class:`~cdgakit.scalars.QSqrt3`; anything supporting field
arithmetic and ``== 0`` works.  Pivoting is deterministic: leftmost column
first, topmost nonzero row first, so every basis choice downstream is
reproducible.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .scalars import as_scalar

__all__ = [
    "Matrix",
    "zeros",
    "identity",
    "shape",
    "transpose",
    "matmul",
    "matvec",
    "rref",
    "rank",
    "kernel_basis",
    "row_space_basis",
    "LinearSolver",
    "solve",
    "in_span",
    "Echelon",
    "smith_normal_form",
    "int_det",
]

Matrix = List[list]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def shape(m: Sequence[Sequence]) -> Tuple[int, int]:
    if not m:
        return 0, 0
    cols = len(m[0])
    if any(len(row) != cols for row in m):
        raise ValueError("matrix is not rectangular")
    return len(m), cols


def transpose(m: Sequence[Sequence], cols: Optional[int] = None) -> Matrix:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * ncols
        for x, brow in zip(row, b):
            if x != 0:
                acc = [s + x * y for s, y in zip(acc, brow)]
        out.append(acc)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    nz = [(i, x) for i, x in enumerate(v) if x != 0]
    return [sum((row[i] * x for i, x in nz), Fraction(0)) for row in a]


def _copy(m: Sequence[Sequence]) -> Matrix:
    return [[as_scalar(x) for x in row] for row in m]


def rref(m: Sequence[Sequence]) -> Tuple[int, List[int], Matrix]:
    """Reduced row echelon form.

    Returns ``(rank, pivots, reduced)`` where ``pivots`` lists the pivot
    column of each nonzero row of ``reduced``.
    """
    a = _copy(m)
    nrows, ncols = shape(a)
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return r, pivots, a


def rank(m: Sequence[Sequence]) -> int:
    return rref(m)[0]


def kernel_basis(m: Sequence[Sequence], ncols: Optional[int] = None) -> List[list]:
    """Null-space basis by the free-variable construction.

    One vector per free column ``f``: a 1 in slot ``f`` and ``-reduced[i][f]``
    in each pivot slot.  ``ncols`` is needed when ``m`` has no rows.
    """
    if not m:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    r, pivots, red = rref(m)
    n = len(red[0])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(v)
    return basis


def row_space_basis(rows: Sequence[Sequence]) -> List[list]:
    """Nonzero rows of the RREF of ``rows``."""
    if not rows:
        return []
    r, _, red = rref(rows)
    return red[:r]


class LinearSolver:
    """Reusable solver for ``m @ x = b`` with fixed ``m``.

    Row-reduces ``[m | I]`` once; each :meth:`solve` is then a matrix-vector
    product plus a consistency check.  The returned solution sets every free
    variable to zero, exactly as pivot-based back-substitution does.
    """

    def __init__(self, m: Sequence[Sequence], ncols: Optional[int] = None):
        nrows = len(m)
        self.nrows = nrows
        self.ncols = len(m[0]) if nrows else (ncols or 0)
        aug = [list(row) + [Fraction(int(i == j)) for j in range(nrows)] for i, row in enumerate(m)]
        if nrows:
            _, piv, red = rref(aug)
        else:
            piv, red = [], []
        self.pivots = [p for p in piv if p < self.ncols]
        self.rank = len(self.pivots)
        # rows of E with E @ m = reduced
        self._transform = [row[self.ncols:] for row in red]

    def solve(self, b: Sequence) -> Optional[list]:
        """Particular solution, or ``None`` when ``b`` is outside the column space."""
        if len(b) != self.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {self.nrows}")
        eb = matvec(self._transform, b) if self.nrows else []
        if any(x != 0 for x in eb[self.rank:]):
            return None
        x = [Fraction(0)] * self.ncols
        for i, pc in enumerate(self.pivots):
            x[pc] = eb[i]
        return x


def solve(m: Sequence[Sequence], b: Sequence, ncols: Optional[int] = None) -> Optional[list]:
    """Solve ``m @ x = b`` exactly; ``None`` signals no solution."""
    return LinearSolver(m, ncols).solve(b)


class Echelon:
    """Incrementally grown echelon basis; :meth:`add` reports independence."""

    def __init__(self, rows: Sequence[Sequence] = ()):
        self._rows: List[Tuple[int, list]] = []
        for r in rows:
            self.add(r)

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> list:
        v = [as_scalar(x) for x in v]
        for p, row in self._rows:
            f = v[p]
            if f != 0:
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, v: Sequence) -> bool:
        w = self.reduce(v)
        p = next((i for i, x in enumerate(w) if x != 0), None)
        if p is None:
            return False
        inv = 1 / w[p]
        self._rows.append((p, [x * inv for x in w]))
        return True

    def contains(self, v: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(v))


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    """Whether ``v`` lies in the span of ``vectors`` (all of equal length)."""
    if all(x == 0 for x in v):
        return True
    if not vectors:
        return False
    return solve(transpose(vectors), list(v)) is not None


# -- integer matrices -----------------------------------------------------


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant (Bareiss fraction-free elimination)."""
    n = len(m)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _int_identity(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: Sequence[Sequence[int]]):
    """Smith normal form of an integer matrix.

    Returns ``(left, diag, right)`` with ``left @ m @ right`` diagonal,
    ``diag[i]`` dividing ``diag[i+1]``, all entries nonnegative, and
    ``left``/``right`` unimodular.  ``diag`` has ``min(rows, cols)`` entries.
    """
    a = [[int(x) for x in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    left = _int_identity(nrows)
    right = _int_identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + f * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in right:
            row[dst] += f * row[src]

    for t in range(min(nrows, ncols)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            done = True
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        done = False
            if not done:
                continue
            # divisibility: fold any offending entry into row t
            bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
    diag = [a[i][i] for i in range(min(nrows, ncols))]
    return left, diag, right
