"""Bounded cochain complexes of finite-dimensional Q-vector spaces.

A complex stores per-degree dimensions and differential matrices; a chain
map stores one matrix per degree commuting with the differentials.  Chain
complexes (homological indexing) are carried by the same type through the
crosswalk "chain degree n <-> cohomological degree -n".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

from . import linalg
from .errors import NotAChainMap, NotAComplex, ShapeMismatch
from .linalg import Matrix

Q = Fraction


class Complex:
    """Bounded cochain complex over Q.

    dims maps degree -> dimension (only nonzero dimensions are stored);
    diffs maps degree n -> matrix of shape dim(n+1) x dim(n).
    """

    __slots__ = ("dims", "diffs", "lo", "hi")

    def __init__(self, dims: Dict[int, int], diffs: Optional[Dict[int, Matrix]] = None):
        clean = {}
        for n, k in dims.items():
            if k < 0:
                raise ShapeMismatch(f"negative dimension {k} in degree {n}")
            if k > 0:
                clean[int(n)] = int(k)
        self.dims = clean
        if clean:
            self.lo = min(clean)
            self.hi = max(clean)
        else:
            self.lo, self.hi = 0, -1
        stored = {}
        diffs = diffs or {}
        for n, m in diffs.items():
            n = int(n)
            want = (clean.get(n + 1, 0), clean.get(n, 0))
            if (m.rows, m.cols) != want:
                raise ShapeMismatch(
                    f"differential at degree {n} has shape {m.rows}x{m.cols}, expected {want[0]}x{want[1]}")
            if m.rows and m.cols:
                stored[n] = m
        self.diffs = stored
        for n in range(self.lo, self.hi):
            prod = self.d(n + 1) * self.d(n)
            if not prod.is_zero():
                raise NotAComplex(f"d^2 != 0 between degrees {n} and {n + 2}")

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> Matrix:
        m = self.diffs.get(n)
        if m is not None:
            return m
        return Matrix.zero(self.dim(n + 1), self.dim(n))

    def support(self) -> range:
        return range(self.lo, self.hi + 1)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return not self.dims

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        if self.dims != other.dims:
            return False
        return all(self.d(n) == other.d(n) for n in self.support())

    def __hash__(self):
        return hash(tuple(sorted(self.dims.items())))

    def __repr__(self):
        return f"Complex(dims={dict(sorted(self.dims.items()))})"


def make_complex(dims: Dict[int, int], diffs: Dict[int, Matrix]) -> Complex:
    return Complex(dims, diffs)


def zero_complex() -> Complex:
    return Complex({})


def disk(n: int, multiplicity: int = 1) -> Complex:
    """Two-term complex with identity differential in degrees n, n+1."""
    if multiplicity == 0:
        return zero_complex()
    return Complex({n: multiplicity, n + 1: multiplicity},
                   {n: Matrix.identity(multiplicity)})


def sphere(n: int, multiplicity: int = 1) -> Complex:
    """One-term complex concentrated in degree n."""
    if multiplicity == 0:
        return zero_complex()
    return Complex({n: multiplicity})


def generator(kind: str, n: int, multiplicity: int = 1) -> Complex:
    if kind == "disk":
        return disk(n, multiplicity)
    if kind == "sphere":
        return sphere(n, multiplicity)
    raise ShapeMismatch(f"unknown generator kind {kind!r}")


def shift(m: Complex, k: int) -> Complex:
    """Reindex without signs: the degree-n piece of the result is m's degree n+k."""
    return Complex({n - k: dim for n, dim in m.dims.items()},
                   {n - k: mat for n, mat in m.diffs.items()})


def suspension(m: Complex) -> Complex:
    """Reindex by one and negate the differential."""
    return Complex({n - 1: dim for n, dim in m.dims.items()},
                   {n - 1: -mat for n, mat in m.diffs.items()})


def direct_sum(*ms: Complex) -> Complex:
    degrees = set()
    for m in ms:
        degrees.update(m.dims)
    dims = {n: sum(m.dim(n) for m in ms) for n in degrees}
    diffs = {}
    for n in degrees:
        diffs[n] = linalg.block_diag([m.d(n) for m in ms])
    return Complex(dims, diffs)


class ChainMap:
    """Degreewise matrix family commuting with the differentials."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: Complex, target: Complex, maps: Dict[int, Matrix],
                 check: bool = True):
        self.source = source
        self.target = target
        stored = {}
        for n, m in maps.items():
            n = int(n)
            want = (target.dim(n), source.dim(n))
            if (m.rows, m.cols) != want:
                raise ShapeMismatch(
                    f"map at degree {n} has shape {m.rows}x{m.cols}, expected {want[0]}x{want[1]}")
            if m.rows and m.cols:
                stored[n] = m
        self.maps = stored
        if check:
            lo = min(source.lo, target.lo) - 1
            hi = max(source.hi, target.hi)
            for n in range(lo, hi + 1):
                lhs = self.f(n + 1) * source.d(n)
                rhs = target.d(n) * self.f(n)
                if lhs != rhs:
                    raise NotAChainMap(f"square at degree {n} does not commute")

    def f(self, n: int) -> Matrix:
        m = self.maps.get(n)
        if m is not None:
            return m
        return Matrix.zero(self.target.dim(n), self.source.dim(n))

    @staticmethod
    def identity(m: Complex) -> "ChainMap":
        return ChainMap(m, m, {n: Matrix.identity(m.dim(n)) for n in m.support()}, check=False)

    @staticmethod
    def zero(source: Complex, target: Complex) -> "ChainMap":
        return ChainMap(source, target, {}, check=False)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other (self . other)."""
        if other.target.dims != self.source.dims:
            raise ShapeMismatch("composition with mismatched middle complex")
        degrees = set(self.maps) | set(other.maps)
        return ChainMap(other.source, self.target,
                        {n: self.f(n) * other.f(n) for n in degrees}, check=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        degrees = set(self.maps) | set(other.maps)
        return ChainMap(self.source, self.target,
                        {n: self.f(n) + other.f(n) for n in degrees}, check=False)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target,
                        {n: m.scale(c) for n, m in self.maps.items()}, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source.dims != other.source.dims or self.target.dims != other.target.dims:
            return False
        degrees = set(self.maps) | set(other.maps)
        return all(self.f(n) == other.f(n) for n in degrees)

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"

    def is_injective(self) -> bool:
        return all(linalg.rank(self.f(n)) == self.source.dim(n) for n in self.source.support())

    def is_surjective(self) -> bool:
        return all(linalg.rank(self.f(n)) == self.target.dim(n) for n in self.target.support())


def cone(f: ChainMap) -> Complex:
    """Mapping cone: degree n is source^{n+1} (+) target^n, d = (-d, 0; f, d)."""
    src, tgt = f.source, f.target
    degrees = set()
    for n in src.dims:
        degrees.add(n - 1)
    degrees.update(tgt.dims)
    dims = {n: src.dim(n + 1) + tgt.dim(n) for n in degrees}
    diffs = {}
    for n in degrees:
        rows = src.dim(n + 2) + tgt.dim(n + 1)
        cols = src.dim(n + 1) + tgt.dim(n)
        if rows == 0 or cols == 0:
            continue
        top = linalg.hstack([-src.d(n + 1), Matrix.zero(src.dim(n + 2), tgt.dim(n))])
        bot = linalg.hstack([f.f(n + 1), tgt.d(n)])
        diffs[n] = linalg.vstack([top, bot])
    return Complex(dims, diffs)


@dataclass
class CohomologyReport:
    """Per-degree cohomology dimensions with cocycle representatives.

    representatives[n] has dim(n) rows; its columns are cocycles whose
    classes form a basis of H^n.
    """

    dims: Dict[int, int]
    representatives: Dict[int, Matrix]

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def total(self) -> int:
        return sum(self.dims.values())


def _coboundary_basis(m: Complex, n: int) -> Matrix:
    return linalg.column_space(m.d(n - 1))


def _cocycle_basis(m: Complex, n: int) -> Matrix:
    return linalg.kernel_basis(m.d(n))


def _completing_columns(inside: Matrix, ambient: Matrix) -> Matrix:
    """Columns of ambient completing the independent set inside to a basis."""
    stacked = linalg.hstack([inside, ambient])
    rows = linalg._int_rows(stacked)
    pivots = linalg._echelon(rows, stacked.cols)
    chosen = [c - inside.cols for c in pivots if c >= inside.cols]
    return Matrix(ambient.rows, len(chosen),
                  [[ambient[i, c] for c in chosen] for i in range(ambient.rows)])


def cohomology(m: Complex) -> CohomologyReport:
    dims = {}
    reps = {}
    for n in m.support():
        z = _cocycle_basis(m, n)
        b = _coboundary_basis(m, n)
        basis = _completing_columns(b, z)
        if basis.cols:
            dims[n] = basis.cols
            reps[n] = basis
    return CohomologyReport(dims, reps)


def cohomology_map(f: ChainMap) -> Dict[int, Matrix]:
    """Matrices of H^n(f) in the representative bases of cohomology()."""
    hs = cohomology(f.source)
    ht = cohomology(f.target)
    out = {}
    degrees = sorted(set(hs.dims) | set(ht.dims))
    for n in degrees:
        sreps = hs.representatives.get(n, Matrix.zero(f.source.dim(n), 0))
        treps = ht.representatives.get(n, Matrix.zero(f.target.dim(n), 0))
        bt = _coboundary_basis(f.target, n)
        carried = f.f(n) * sreps
        sol = linalg.solve_matrix(linalg.hstack([treps, bt]), carried)
        if sol is None:
            raise NotAChainMap("image of a cocycle is not a cocycle")
        out[n] = Matrix(treps.cols, sreps.cols,
                        [[sol[i, j] for j in range(sreps.cols)] for i in range(treps.cols)])
    return out


def is_quasi_iso(f: ChainMap) -> bool:
    """True iff f induces bijections on all cohomology groups."""
    hs = cohomology(f.source)
    ht = cohomology(f.target)
    if hs.dims != ht.dims:
        return False
    hmap = cohomology_map(f)
    for n, mat in hmap.items():
        if mat.rows != mat.cols or linalg.rank(mat) != mat.rows:
            return False
    return True


# -- internal hom -------------------------------------------------------------

def _hom_layout(m: Complex, n: Complex, c: int) -> list:
    """Summands (a, rows, cols, offset) of the degree-c piece of HOM(m, n).

    The piece collects the maps m^a -> n^{a+c}; flattening is row-major
    within a summand, summands in ascending a.
    """
    layout = []
    off = 0
    for a in sorted(m.dims):
        rows = n.dim(a + c)
        cols = m.dim(a)
        if rows and cols:
            layout.append((a, rows, cols, off))
            off += rows * cols
    return layout


def _hom_dim(layout: list) -> int:
    if not layout:
        return 0
    a, r, c, off = layout[-1]
    return off + r * c


def hom_complex(m: Complex, n: Complex) -> Complex:
    """Enrichment complex HOM(m, n), stored cohomologically.

    The stored degree-c piece consists of the degree-c map families
    {f_a : m^a -> n^{a+c}}; the differential sends f to
    d_n . f - (-1)^c f . d_m, which is the hom-complex differential
    under the chain/cochain crosswalk.
    """
    if m.is_zero() or n.is_zero():
        return zero_complex()
    c_lo = n.lo - m.hi
    c_hi = n.hi - m.lo
    dims = {}
    layouts = {}
    for c in range(c_lo, c_hi + 1):
        layouts[c] = _hom_layout(m, n, c)
        dims[c] = _hom_dim(layouts[c])
    diffs = {}
    for c in range(c_lo, c_hi):
        src_l = layouts[c]
        tgt_l = layouts[c + 1]
        rows = dims.get(c + 1, 0)
        cols = dims.get(c, 0)
        if not rows or not cols:
            continue
        tgt_off = {a: (off, r, cc) for a, r, cc, off in tgt_l}
        sign = Q(-1) if c % 2 else Q(1)
        ent = [[Q(0)] * cols for _ in range(rows)]
        for a, r, cc, off in src_l:
            # post-composition with d_n: f_a catches a block at the same a
            if a in tgt_off:
                to, tr, tc = tgt_off[a]
                dn = n.d(a + c)
                for i in range(tr):
                    for k in range(r):
                        v = dn[i, k]
                        if v:
                            for j in range(cc):
                                ent[to + i * tc + j][off + k * cc + j] += v
            # pre-composition with d_m: f_a contributes at a-1
            a2 = a - 1
            if a2 in tgt_off:
                to, tr, tc = tgt_off[a2]
                dm = m.d(a2)
                for i in range(r):
                    for k in range(cc):
                        for j in range(tc):
                            v = dm[k, j]
                            if v:
                                ent[to + i * tc + j][off + i * cc + k] += -sign * v
        diffs[c] = Matrix(rows, cols, ent)
    return Complex(dims, diffs)


def hom_element_matrices(m: Complex, n: Complex, c: int, vec) -> Dict[int, Matrix]:
    """Unflatten a degree-c hom vector into its per-degree matrices."""
    out = {}
    for a, r, cc, off in _hom_layout(m, n, c):
        out[a] = Matrix(r, cc, [[vec[off + i * cc + j] for j in range(cc)] for i in range(r)])
    return out


def hom_flatten(m: Complex, n: Complex, c: int, mats: Dict[int, Matrix]) -> list:
    layout = _hom_layout(m, n, c)
    vec = [Q(0)] * _hom_dim(layout)
    for a, r, cc, off in layout:
        mat = mats.get(a)
        if mat is None:
            continue
        for i in range(r):
            for j in range(cc):
                vec[off + i * cc + j] = mat[i, j]
    return vec


def hom_pullback(theta: ChainMap, c: Complex) -> ChainMap:
    """Precomposition HOM(B, c) -> HOM(A, c) along theta : A -> B."""
    a_cx, b_cx = theta.source, theta.target
    hb = hom_complex(b_cx, c)
    ha = hom_complex(a_cx, c)
    maps = {}
    for s in hb.support():
        src_l = _hom_layout(b_cx, c, s)
        tgt_l = _hom_layout(a_cx, c, s)
        rows = _hom_dim(tgt_l)
        cols = _hom_dim(src_l)
        if not rows or not cols:
            continue
        tgt_off = {a: (off, r, cc) for a, r, cc, off in tgt_l}
        ent = [[Q(0)] * cols for _ in range(rows)]
        for a, r, cc, off in src_l:
            if a not in tgt_off:
                continue
            to, tr, tc = tgt_off[a]
            th = theta.f(a)
            for i in range(r):
                for k in range(cc):
                    for j in range(tc):
                        v = th[k, j]
                        if v:
                            ent[to + i * tc + j][off + i * cc + k] += v
        maps[s] = Matrix(rows, cols, ent)
    return ChainMap(hb, ha, maps)


def ext_dim(m: Complex, n: Complex, i: int) -> int:
    """Dimension of Ext^i(m, n), read off the enrichment complex."""
    h = cohomology(hom_complex(m, n))
    return h.dim(i)


def semisimple_ext_oracle(m: Complex, n: Complex, i: int) -> int:
    """Independent oracle: over a field every bounded complex splits, so
    Ext^i has dimension sum_a dim H^a(m) * dim H^{a+i}(n)."""
    hm = cohomology(m)
    hn = cohomology(n)
    return sum(hm.dim(a) * hn.dim(a + i) for a in hm.dims)


def truncate_nonneg(c: Complex) -> Complex:
    """Good truncation to non-negative chain degrees.

    Input is read as a chain complex via the crosswalk; stored degrees
    <= -1 survive unchanged, stored degree 0 is replaced by its cocycles,
    positive stored degrees are dropped.
    """
    if c.is_zero():
        return c
    z0 = linalg.kernel_basis(c.d(0))
    dims = {n: c.dim(n) for n in c.support() if n < 0}
    if z0.cols:
        dims[0] = z0.cols
    diffs = {n: c.d(n) for n in c.support() if n < -1}
    if z0.cols and c.dim(-1):
        core = linalg.solve_matrix(z0, c.d(-1))
        if core is None:
            raise NotAComplex("image of d^{-1} does not land in the 0-cocycles")
        diffs[-1] = core
    return Complex(dims, diffs)
