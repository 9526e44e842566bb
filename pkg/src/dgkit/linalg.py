"""Exact dense linear algebra over the rationals.

All matrices carry ``fractions.Fraction`` entries and every operation is
exact; row reduction runs on denominator-cleared integer rows with per-row
gcd normalisation to keep entry growth in check.  Empty (0xn, nx0) matrices
are legal and behave as zero maps.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence

from .errors import ShapeMismatch

Q = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class Matrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Optional[Sequence[Sequence]] = None):
        if rows < 0 or cols < 0:
            raise ShapeMismatch(f"negative shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        if entries is None:
            zero = Q(0)
            self._e = tuple(tuple(zero for _ in range(cols)) for _ in range(rows))
        else:
            if len(entries) != rows:
                raise ShapeMismatch(f"expected {rows} rows, got {len(entries)}")
            built = []
            for r in entries:
                if len(r) != cols:
                    raise ShapeMismatch(f"expected {cols} columns, got {len(r)}")
                built.append(tuple(_as_fraction(x) for x in r))
            self._e = tuple(built)

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)])

    @staticmethod
    def from_rows(entries: Sequence[Sequence]) -> "Matrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        return Matrix(rows, cols, entries)

    @staticmethod
    def column(vec: Sequence) -> "Matrix":
        return Matrix(len(vec), 1, [[x] for x in vec])

    def __getitem__(self, idx):
        i, j = idx
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def col(self, j: int) -> list:
        return [self._e[i][j] for i in range(self.rows)]

    def entries(self) -> list:
        return [list(r) for r in self._e]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._e for x in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self._e == other._e

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._e)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeMismatch(f"add {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        return Matrix(self.rows, self.cols,
                      [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [[-x for x in r] for r in self._e])

    def scale(self, c) -> "Matrix":
        c = _as_fraction(c)
        return Matrix(self.rows, self.cols, [[c * x for x in r] for r in self._e])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeMismatch(f"mul {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        zero = Q(0)
        out = [[zero] * other.cols for _ in range(self.rows)]
        oe = other._e
        for i, ri in enumerate(self._e):
            oi = out[i]
            for k, a in enumerate(ri):
                if a:
                    rk = oe[k]
                    for j, b in enumerate(rk):
                        if b:
                            oi[j] += a * b
        return Matrix(self.rows, other.cols, out)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [[self._e[i][j] for i in range(self.rows)] for j in range(self.cols)])


def hstack(ms: Iterable[Matrix]) -> Matrix:
    ms = list(ms)
    if not ms:
        return Matrix(0, 0)
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise ShapeMismatch("hstack with differing row counts")
    ent = [[x for m in ms for x in m.row(i)] for i in range(rows)]
    return Matrix(rows, sum(m.cols for m in ms), ent)


def vstack(ms: Iterable[Matrix]) -> Matrix:
    ms = list(ms)
    if not ms:
        return Matrix(0, 0)
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ShapeMismatch("vstack with differing column counts")
    ent = [list(m.row(i)) for m in ms for i in range(m.rows)]
    return Matrix(sum(m.rows for m in ms), cols, ent)


def block_diag(ms: Iterable[Matrix]) -> Matrix:
    ms = list(ms)
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    out = [[Q(0)] * cols for _ in range(rows)]
    ro = co = 0
    for m in ms:
        for i in range(m.rows):
            for j in range(m.cols):
                out[ro + i][co + j] = m[i, j]
        ro += m.rows
        co += m.cols
    return Matrix(rows, cols, out)


# -- integer row reduction core ---------------------------------------------

def _int_rows(m: Matrix, extra: Optional[Matrix] = None) -> list:
    """Rows of [m | extra] scaled to integers (row scaling preserves solutions)."""
    rows = []
    for i in range(m.rows):
        r = list(m.row(i)) + (list(extra.row(i)) if extra is not None else [])
        den = 1
        for x in r:
            den = den * x.denominator // math.gcd(den, x.denominator)
        rows.append([int(x * den) for x in r])
    return rows


def _normalize_row(row: list) -> None:
    g = reduce(math.gcd, (abs(x) for x in row), 0)
    if g > 1:
        for j in range(len(row)):
            row[j] //= g


def _echelon(rows: list, ncols: int) -> list:
    """In-place integer forward elimination; returns the pivot column list."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r >= nrows:
            break
        best = -1
        best_abs = 0
        for i in range(r, nrows):
            v = rows[i][c]
            if v:
                a = abs(v)
                if best < 0 or a < best_abs:
                    best, best_abs = i, a
                    if a == 1:
                        break
        if best < 0:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        pv = rows[r][c]
        unit = pv == 1 or pv == -1
        for i in range(r + 1, nrows):
            v = rows[i][c]
            if v:
                ri, rr = rows[i], rows[r]
                for j in range(c, ncols):
                    ri[j] = pv * ri[j] - v * rr[j]
                if not unit:
                    _normalize_row(ri)
        pivots.append(c)
        r += 1
    return pivots


def _back_reduce(rows: list, pivots: list, ncols: int) -> None:
    """Clear entries above each pivot (integer rows stay integer)."""
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        pv = rows[r][c]
        unit = pv == 1 or pv == -1
        for i in range(r):
            v = rows[i][c]
            if v:
                ri, rr = rows[i], rows[r]
                for j in range(ncols):
                    ri[j] = pv * ri[j] - v * rr[j]
                if not unit:
                    _normalize_row(ri)


def rref_rank(m: Matrix) -> tuple:
    """Reduced row echelon form (leading ones) and the rank."""
    rows = _int_rows(m)
    pivots = _echelon(rows, m.cols)
    _back_reduce(rows, pivots, m.cols)
    out = []
    for r in range(m.rows):
        if r < len(pivots):
            pv = rows[r][pivots[r]]
            out.append([Q(x, pv) for x in rows[r]])
        else:
            out.append([Q(0)] * m.cols)
    return Matrix(m.rows, m.cols, out), len(pivots)


def rank(m: Matrix) -> int:
    rows = _int_rows(m)
    return len(_echelon(rows, m.cols))


def kernel_basis(m: Matrix) -> Matrix:
    """Matrix whose columns form a basis of ker m (cols x nullity)."""
    rows = _int_rows(m)
    pivots = _echelon(rows, m.cols)
    _back_reduce(rows, pivots, m.cols)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    cols = []
    for f in free:
        v = [Q(0)] * m.cols
        v[f] = Q(1)
        for r, c in enumerate(pivots):
            v[c] = Q(-rows[r][f], rows[r][c])
        cols.append(v)
    return Matrix(m.cols, len(cols), [[cols[j][i] for j in range(len(cols))] for i in range(m.cols)])


def solve_matrix(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Canonical solution X of a X = b (free variables zero), or None.

    Solves all columns of b simultaneously; returns None as soon as any
    column is inconsistent.
    """
    if a.rows != b.rows:
        raise ShapeMismatch(f"solve with {a.rows} lhs rows and {b.rows} rhs rows")
    ncols = a.cols + b.cols
    rows = _int_rows(a, b)
    pivots = _echelon(rows, ncols)
    if any(c >= a.cols for c in pivots):
        return None
    _back_reduce(rows, pivots, ncols)
    out = [[Q(0)] * b.cols for _ in range(a.cols)]
    for r, c in enumerate(pivots):
        pv = rows[r][c]
        for j in range(b.cols):
            out[c][j] = Q(rows[r][a.cols + j], pv)
    return Matrix(a.cols, b.cols, out)


def solve(a: Matrix, b: Sequence) -> Optional[list]:
    """Canonical solution of a x = b for a column vector b, or None."""
    x = solve_matrix(a, Matrix.column(list(b)))
    if x is None:
        return None
    return x.col(0)


def column_space(m: Matrix) -> Matrix:
    """Columns of m at its pivot positions: a basis of the image."""
    rows = _int_rows(m)
    pivots = _echelon(rows, m.cols)
    return Matrix(m.rows, len(pivots),
                  [[m[i, c] for c in pivots] for i in range(m.rows)])


def in_span(basis: Matrix, vectors: Matrix) -> bool:
    """True iff every column of vectors lies in the column span of basis."""
    return solve_matrix(basis, vectors) is not None


def same_span(a: Matrix, b: Matrix) -> bool:
    """True iff the column spans coincide."""
    if a.rows != b.rows:
        raise ShapeMismatch("span comparison needs a common ambient space")
    return in_span(a, b) and in_span(b, a)


# -- linear systems over named matrix unknowns ------------------------------

class BlockSystem:
    """Exact linear system whose unknowns are named matrices.

    Equations have the form  sum_k  L_k X_{b_k} R_k = C  with L, R constant;
    passing None for L or R means the identity.  Unknowns are flattened
    row-major in declaration order.
    """

    def __init__(self):
        self._names = []
        self._shape = {}
        self._offset = {}
        self._size = 0
        self._rows = []
        self._rhs = []

    def block(self, name, rows: int, cols: int) -> None:
        if name in self._shape:
            if self._shape[name] != (rows, cols):
                raise ShapeMismatch(f"block {name!r} redeclared with a new shape")
            return
        self._names.append(name)
        self._shape[name] = (rows, cols)
        self._offset[name] = self._size
        self._size += rows * cols

    def add_equation(self, terms, rhs: Matrix) -> None:
        """Assert sum of L X R terms equals rhs; terms are (L, name, R)."""
        p, s = rhs.rows, rhs.cols
        prepared = []
        for L, name, R in terms:
            br, bc = self._shape[name]
            if L is None:
                L = Matrix.identity(p)
            if R is None:
                R = Matrix.identity(s)
            if L.rows != p or L.cols != br or R.rows != bc or R.cols != s:
                raise ShapeMismatch(
                    f"term on {name!r}: ({L.rows}x{L.cols})({br}x{bc})({R.rows}x{R.cols}) vs rhs {p}x{s}")
            prepared.append((L, name, R, br, bc))
        for i in range(p):
            for j in range(s):
                row = [Q(0)] * self._size
                for L, name, R, br, bc in prepared:
                    off = self._offset[name]
                    for r in range(br):
                        lv = L[i, r]
                        if lv:
                            base = off + r * bc
                            for c in range(bc):
                                rv = R[c, j]
                                if rv:
                                    row[base + c] += lv * rv
                self._rows.append(row)
                self._rhs.append(rhs[i, j])

    def _unflatten(self, vec) -> dict:
        out = {}
        for name in self._names:
            r, c = self._shape[name]
            off = self._offset[name]
            out[name] = Matrix(r, c, [[vec[off + i * c + j] for j in range(c)] for i in range(r)])
        return out

    def solve(self) -> Optional[dict]:
        """Canonical solution (free variables zero) or None if inconsistent."""
        a = Matrix(len(self._rows), self._size, self._rows)
        x = solve(a, self._rhs)
        if x is None:
            return None
        return self._unflatten(x)

    def null_basis(self) -> list:
        """Basis of the homogeneous solution space, as named-matrix dicts."""
        a = Matrix(len(self._rows), self._size, self._rows)
        k = kernel_basis(a)
        return [self._unflatten(k.col(j)) for j in range(k.cols)]

    @property
    def size(self) -> int:
        return self._size
