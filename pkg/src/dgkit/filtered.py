"""Filtered cochain complexes: finite towers of subcomplex inclusions.

A filtration of length N is the tower F^0 >= F^1 >= ... >= F^N = 0, each
level presented abstractly with an injective chain map into the previous
one; nestedness and closure under the differential are therefore
construction invariants, not runtime searches.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

from . import linalg, model
from .complexes import (
    ChainMap,
    Complex,
    cohomology,
    disk,
    is_quasi_iso,
    sphere,
    zero_complex,
)
from .errors import NonCommutingSquare, ShapeMismatch
from .linalg import BlockSystem, Matrix

Q = Fraction


class FilteredComplex:
    """Tower F^0 .. F^N of complexes with injective connecting chain maps."""

    __slots__ = ("levels", "inclusions")

    def __init__(self, levels: List[Complex], inclusions: List[ChainMap]):
        if not levels:
            raise ShapeMismatch("a filtration needs at least the ambient level")
        if len(inclusions) != len(levels) - 1:
            raise ShapeMismatch(
                f"{len(levels)} levels need {len(levels) - 1} inclusions, got {len(inclusions)}")
        if not levels[-1].is_zero():
            raise ShapeMismatch("the filtration must terminate at the zero complex")
        for k, inc in enumerate(inclusions):
            if inc.source.dims != levels[k + 1].dims or inc.target.dims != levels[k].dims:
                raise ShapeMismatch(f"inclusion {k} does not connect level {k + 1} to level {k}")
            if not inc.is_injective():
                raise ShapeMismatch(f"inclusion {k} is not degreewise injective")
        self.levels = list(levels)
        self.inclusions = list(inclusions)

    @property
    def length(self) -> int:
        return len(self.levels) - 1

    @property
    def ambient(self) -> Complex:
        return self.levels[0]

    def level(self, k: int) -> Complex:
        if k < 0:
            raise ShapeMismatch("negative filtration level")
        if k >= len(self.levels):
            return zero_complex()
        return self.levels[k]

    def inclusion(self, k: int) -> ChainMap:
        """The chain map from level k+1 into level k."""
        if 0 <= k < len(self.inclusions):
            return self.inclusions[k]
        return ChainMap.zero(self.level(k + 1), self.level(k))

    def embedding(self, k: int) -> ChainMap:
        """Composite inclusion of level k into the ambient complex."""
        emb = ChainMap.identity(self.ambient)
        for j in range(k):
            emb = emb.compose(self.inclusion(j))
        return emb

    def __repr__(self):
        return f"FilteredComplex(length={self.length}, ambient={self.ambient!r})"


def trivial_filtration(m: Complex, length: int = 1) -> FilteredComplex:
    """m in level 0 with everything below zero."""
    if length < 1:
        raise ShapeMismatch("filtration length must be positive")
    levels = [m] + [zero_complex()] * length
    inclusions = [ChainMap.zero(levels[k + 1], levels[k]) for k in range(length)]
    return FilteredComplex(levels, inclusions)


def filtered_generator(kind: str, n: int, p: int, length: int) -> FilteredComplex:
    """Disk or sphere filtered to depth p: full complex up to level p, then zero."""
    if length <= p:
        raise ShapeMismatch(f"length {length} must exceed the depth {p}")
    full = disk(n) if kind == "disk" else sphere(n) if kind == "sphere" else None
    if full is None:
        raise ShapeMismatch(f"unknown generator kind {kind!r}")
    levels = [full] * (p + 1) + [zero_complex()] * (length - p)
    inclusions = []
    for k in range(length):
        if k < p:
            inclusions.append(ChainMap.identity(full))
        else:
            inclusions.append(ChainMap.zero(levels[k + 1], levels[k]))
    return FilteredComplex(levels, inclusions)


def shift_filtered(m: FilteredComplex, k: int) -> FilteredComplex:
    """Levelwise reindexing without signs."""
    from .complexes import shift

    levels = [shift(m.level(j), k) for j in range(m.length + 1)]
    inclusions = []
    for j in range(m.length):
        inc = m.inclusion(j)
        inclusions.append(ChainMap(levels[j + 1], levels[j],
                                   {a - k: mat for a, mat in inc.maps.items()}, check=False))
    return FilteredComplex(levels, inclusions)


def direct_sum_filtered(x: FilteredComplex, y: FilteredComplex) -> FilteredComplex:
    """Levelwise direct sum with block-diagonal inclusions."""
    from .complexes import direct_sum

    if x.length != y.length:
        raise ShapeMismatch("direct sum needs equal filtration lengths")
    levels = [direct_sum(x.level(k), y.level(k)) for k in range(x.length + 1)]
    inclusions = []
    for k in range(x.length):
        ix, iy = x.inclusion(k), y.inclusion(k)
        maps = {}
        for a in levels[k + 1].support():
            maps[a] = linalg.block_diag([ix.f(a), iy.f(a)])
        inclusions.append(ChainMap(levels[k + 1], levels[k], maps, check=False))
    return FilteredComplex(levels, inclusions)


class FilteredMap:
    """Level family of chain maps commuting with both towers' inclusions."""

    __slots__ = ("source", "target", "level_maps")

    def __init__(self, source: FilteredComplex, target: FilteredComplex,
                 level_maps: List[ChainMap], check: bool = True):
        if source.length != target.length:
            raise ShapeMismatch("source and target filtrations have different lengths")
        if len(level_maps) != source.length + 1:
            raise ShapeMismatch(
                f"expected {source.length + 1} level maps, got {len(level_maps)}")
        self.source = source
        self.target = target
        self.level_maps = list(level_maps)
        if check:
            for k, f in enumerate(level_maps):
                if f.source.dims != source.level(k).dims or f.target.dims != target.level(k).dims:
                    raise ShapeMismatch(f"level {k} map has the wrong endpoints")
            for k in range(source.length):
                lhs = target.inclusion(k).compose(level_maps[k + 1])
                rhs = level_maps[k].compose(source.inclusion(k))
                if lhs != rhs:
                    raise ShapeMismatch(f"level maps do not commute with inclusion {k}")

    def level(self, k: int) -> ChainMap:
        if k >= len(self.level_maps):
            return ChainMap.zero(self.source.level(k), self.target.level(k))
        return self.level_maps[k]

    @staticmethod
    def identity(m: FilteredComplex) -> "FilteredMap":
        return FilteredMap(m, m, [ChainMap.identity(m.level(k)) for k in range(m.length + 1)],
                           check=False)

    @staticmethod
    def zero(source: FilteredComplex, target: FilteredComplex) -> "FilteredMap":
        return FilteredMap(source, target,
                           [ChainMap.zero(source.level(k), target.level(k))
                            for k in range(source.length + 1)], check=False)

    def compose(self, other: "FilteredMap") -> "FilteredMap":
        return FilteredMap(other.source, self.target,
                           [self.level(k).compose(other.level(k))
                            for k in range(self.source.length + 1)], check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FilteredMap):
            return NotImplemented
        return all(self.level(k) == other.level(k) for k in range(self.source.length + 1))


def is_filtered_weak_equivalence(f: FilteredMap) -> bool:
    """Quasi-isomorphism on every filtration level."""
    return all(is_quasi_iso(f.level(k)) for k in range(f.source.length + 1))


def is_filtered_fibration(f: FilteredMap) -> bool:
    return all(model.is_fibration(f.level(k)) for k in range(f.source.length + 1))


def is_filtered_trivial_fibration(f: FilteredMap) -> bool:
    return all(model.is_trivial_fibration(f.level(k)) for k in range(f.source.length + 1))


def check_cofibrant_hypotheses(m: FilteredComplex) -> bool:
    """Boundedness of every level plus termination of the tower.

    Both are forced by the construction invariants, so this re-asserts them.
    """
    for k in range(m.length + 1):
        lvl = m.level(k)
        if lvl.dims and (lvl.lo > lvl.hi):
            return False
    return m.level(m.length).is_zero()


# -- filtered hom enrichment --------------------------------------------------

def _filtered_hom_blocks(m: FilteredComplex, n: FilteredComplex, s: int):
    """Declare the level-and-degree blocks of a degree-s filtered hom family."""
    sys = BlockSystem()
    for k in range(m.length + 1):
        src, tgt = m.level(k), n.level(k)
        for a in src.support():
            if src.dim(a) and tgt.dim(a + s):
                sys.block((k, a), tgt.dim(a + s), src.dim(a))
    return sys


def filtered_hom_basis(m: FilteredComplex, n: FilteredComplex, s: int) -> list:
    """Basis of degree-s map families {f_k} with iota f_{k+1} = f_k iota."""
    sys = _filtered_hom_blocks(m, n, s)
    for k in range(m.length):
        src_lo, tgt_lo = m.level(k), n.level(k)
        src_hi, tgt_hi = m.level(k + 1), n.level(k + 1)
        im = m.inclusion(k)
        inn = n.inclusion(k)
        for a in src_hi.support():
            rows = tgt_lo.dim(a + s)
            cols = src_hi.dim(a)
            if not rows or not cols:
                continue
            terms = []
            if (k + 1, a) in sys._shape:
                terms.append((inn.f(a + s), (k + 1, a), None))
            if (k, a) in sys._shape:
                terms.append((-Matrix.identity(rows), (k, a), im.f(a)))
            sys.add_equation(terms, Matrix.zero(rows, cols))
    return sys.null_basis()


def _apply_filtered_delta(m: FilteredComplex, n: FilteredComplex, s: int, fam: dict) -> dict:
    """Levelwise hom differential: f_k -> d f_k - (-1)^s f_k d."""
    sign = Q(-1) if s % 2 else Q(1)
    out = {}
    for k in range(m.length + 1):
        src, tgt = m.level(k), n.level(k)
        for a in src.support():
            rows = tgt.dim(a + s + 1)
            cols = src.dim(a)
            if not rows or not cols:
                continue
            acc = Matrix.zero(rows, cols)
            fa = fam.get((k, a))
            if fa is not None:
                acc = acc + tgt.d(a + s) * fa
            fa1 = fam.get((k, a + 1))
            if fa1 is not None:
                acc = acc - (fa1 * src.d(a)).scale(sign)
            if not acc.is_zero():
                out[(k, a)] = acc
    return out


def _flatten_family(m: FilteredComplex, n: FilteredComplex, s: int, fam: dict) -> list:
    vec = []
    for k in range(m.length + 1):
        src, tgt = m.level(k), n.level(k)
        for a in src.support():
            rows = tgt.dim(a + s)
            cols = src.dim(a)
            if not rows or not cols:
                continue
            mat = fam.get((k, a), Matrix.zero(rows, cols))
            for i in range(rows):
                vec.extend(mat.row(i))
    return vec


def filtered_hom_complex(m: FilteredComplex, n: FilteredComplex) -> Complex:
    """Enrichment complex of filtration-preserving map families.

    Stored like the unfiltered hom complex: the degree-s piece is the
    space of inclusion-compatible families, the differential acts
    levelwise.
    """
    amb_m, amb_n = m.ambient, n.ambient
    if amb_m.is_zero() or amb_n.is_zero():
        return zero_complex()
    s_lo = amb_n.lo - amb_m.hi
    s_hi = amb_n.hi - amb_m.lo
    bases = {}
    dims = {}
    for s in range(s_lo, s_hi + 1):
        bases[s] = filtered_hom_basis(m, n, s)
        dims[s] = len(bases[s])
    diffs = {}
    for s in range(s_lo, s_hi):
        if not dims.get(s) or not dims.get(s + 1):
            continue
        ambient_len = len(_flatten_family(m, n, s + 1, {}))
        target_cols = [_flatten_family(m, n, s + 1, b) for b in bases[s + 1]]
        target = Matrix(ambient_len, dims[s + 1],
                        [[col[i] for col in target_cols] for i in range(ambient_len)])
        image_cols = [_flatten_family(m, n, s + 1, _apply_filtered_delta(m, n, s, b))
                      for b in bases[s]]
        rhs = Matrix(ambient_len, dims[s],
                     [[col[i] for col in image_cols] for i in range(ambient_len)])
        coords = linalg.solve_matrix(target, rhs)
        if coords is None:
            raise NonCommutingSquare("hom differential leaves the compatible family space")
        diffs[s] = coords
    return Complex(dims, diffs)


def filtered_ext_dim(m: FilteredComplex, n: FilteredComplex, i: int) -> int:
    """Dimension of the filtered Ext^i group."""
    return cohomology(filtered_hom_complex(m, n)).dim(i)


def filtered_chain_map_count(m: FilteredComplex, n: FilteredComplex) -> int:
    """Dimension of the space of actual filtered chain maps m -> n."""
    h = filtered_hom_complex(m, n)
    if not h.dim(0):
        return 0
    return linalg.kernel_basis(h.d(0)).cols


def filtered_chain_map_basis(m: FilteredComplex, n: FilteredComplex) -> list:
    """Basis of the space of filtered chain maps m -> n, as block families."""
    sys = _filtered_hom_blocks(m, n, 0)
    for k in range(m.length + 1):
        src, tgt = m.level(k), n.level(k)
        for a in sorted(set(src.dims) | set(tgt.dims)):
            rows = tgt.dim(a + 1)
            cols = src.dim(a)
            if not rows or not cols:
                continue
            terms = []
            if (k, a) in sys._shape:
                terms.append((tgt.d(a), (k, a), None))
            if (k, a + 1) in sys._shape:
                terms.append((-Matrix.identity(rows), (k, a + 1), src.d(a)))
            sys.add_equation(terms, Matrix.zero(rows, cols))
    for k in range(m.length):
        src_hi, tgt_lo = m.level(k + 1), n.level(k)
        im, inn = m.inclusion(k), n.inclusion(k)
        for a in src_hi.support():
            rows = tgt_lo.dim(a)
            cols = src_hi.dim(a)
            if not rows or not cols:
                continue
            terms = []
            if (k + 1, a) in sys._shape:
                terms.append((inn.f(a), (k + 1, a), None))
            if (k, a) in sys._shape:
                terms.append((-Matrix.identity(rows), (k, a), im.f(a)))
            sys.add_equation(terms, Matrix.zero(rows, cols))
    return sys.null_basis()


def family_to_filtered_map(m: FilteredComplex, n: FilteredComplex, s: int, fam: dict,
                           check: bool = True) -> FilteredMap:
    """Package a degree-0 compatible family dict as a FilteredMap."""
    maps = []
    for k in range(m.length + 1):
        src, tgt = m.level(k), n.level(k)
        mats = {}
        for a in src.support():
            if src.dim(a) and tgt.dim(a):
                mats[a] = fam.get((k, a), Matrix.zero(tgt.dim(a), src.dim(a)))
        maps.append(ChainMap(src, tgt, mats, check=check))
    return FilteredMap(m, n, maps, check=check)


# -- filtered lifting ---------------------------------------------------------

def _filtered_square_commutes(i: FilteredMap, p: FilteredMap, f: FilteredMap,
                              g: FilteredMap) -> bool:
    for k in range(i.source.length + 1):
        if not g.level(k).compose(i.level(k)) == p.level(k).compose(f.level(k)):
            return False
    return True


def filtered_lift_square(i: FilteredMap, p: FilteredMap, f: FilteredMap,
                         g: FilteredMap) -> Optional[FilteredMap]:
    """Global solve over all levels and degrees, with inclusion constraints."""
    if not _filtered_square_commutes(i, p, f, g):
        raise NonCommutingSquare("the given filtered square does not commute")
    b = i.target
    x = p.source
    sys = BlockSystem()
    for k in range(b.length + 1):
        bl, xl = b.level(k), x.level(k)
        for a in sorted(set(bl.dims) | set(xl.dims)):
            if bl.dim(a) and xl.dim(a):
                sys.block((k, a), xl.dim(a), bl.dim(a))
    for k in range(b.length + 1):
        bl, xl = b.level(k), x.level(k)
        al, yl = i.source.level(k), p.target.level(k)
        degrees = sorted(set(bl.dims) | set(xl.dims) | set(al.dims) | set(yl.dims))
        for a in degrees:
            # chain condition per level
            if xl.dim(a + 1) and bl.dim(a):
                terms = []
                if (k, a) in sys._shape:
                    terms.append((xl.d(a), (k, a), None))
                if (k, a + 1) in sys._shape:
                    terms.append((-Matrix.identity(xl.dim(a + 1)), (k, a + 1), bl.d(a)))
                sys.add_equation(terms, Matrix.zero(xl.dim(a + 1), bl.dim(a)))
            # h i = f
            if al.dim(a) and xl.dim(a):
                if (k, a) in sys._shape:
                    sys.add_equation([(None, (k, a), i.level(k).f(a))], f.level(k).f(a))
                elif not f.level(k).f(a).is_zero():
                    return None
            # p h = g
            if bl.dim(a) and yl.dim(a):
                if (k, a) in sys._shape:
                    sys.add_equation([(p.level(k).f(a), (k, a), None)], g.level(k).f(a))
                elif not g.level(k).f(a).is_zero():
                    return None
    for k in range(b.length):
        # inclusion compatibility iota_x h_{k+1} = h_k iota_b
        bl_hi, xl_hi = b.level(k + 1), x.level(k + 1)
        xl_lo = x.level(k)
        ix = x.inclusion(k)
        ib = b.inclusion(k)
        for a in bl_hi.support():
            rows = xl_lo.dim(a)
            cols = bl_hi.dim(a)
            if not rows or not cols:
                continue
            terms = []
            if (k + 1, a) in sys._shape:
                terms.append((ix.f(a), (k + 1, a), None))
            if (k, a) in sys._shape:
                terms.append((-Matrix.identity(rows), (k, a), ib.f(a)))
            sys.add_equation(terms, Matrix.zero(rows, cols))
    sol = sys.solve()
    if sol is None:
        return None
    fam = {key: mat for key, mat in sol.items()}
    maps = []
    for k in range(b.length + 1):
        bl, xl = b.level(k), x.level(k)
        mats = {a: fam[(k, a)] for a in bl.support() if (k, a) in fam}
        maps.append(ChainMap(bl, xl, mats, check=False))
    return FilteredMap(b, x, maps, check=False)


# -- filtered generator detection --------------------------------------------

def filtered_j_squares(p: FilteredMap):
    """Squares over 0 -> D(n, depth), one per basis vector of the bottom maps."""
    y = p.target
    for depth in range(y.length):
        for n in sorted(set(y.level(depth).dims)):
            gen = filtered_generator("disk", n, depth, y.length)
            zero = trivial_filtration(zero_complex(), y.length)
            i = FilteredMap.zero(zero, gen)
            f = FilteredMap.zero(zero, p.source)
            lvl = y.level(depth)
            for j in range(lvl.dim(n)):
                col = Matrix(lvl.dim(n), 1,
                             [[Q(1) if r == j else Q(0)] for r in range(lvl.dim(n))])
                g = _filtered_disk_map(gen, y, depth, n, col)
                yield i, p, f, g


def _filtered_disk_map(gen: FilteredComplex, y: FilteredComplex, depth: int, n: int,
                       col: Matrix) -> FilteredMap:
    """Filtered map D(n, depth) -> y determined by an element of level-depth y^n."""
    maps = []
    carried = col
    per_level = {depth: col}
    for k in range(depth - 1, -1, -1):
        carried = y.inclusion(k).f(n) * per_level[k + 1]
        per_level[k] = carried
    for k in range(y.length + 1):
        src = gen.level(k)
        tgt = y.level(k)
        if src.is_zero() or k > depth:
            maps.append(ChainMap.zero(src, tgt))
        else:
            v = per_level[k]
            maps.append(ChainMap(src, tgt, {n: v, n + 1: tgt.d(n) * v}, check=False))
    return FilteredMap(gen, y, maps, check=False)


def _filtered_sphere_map(gen: FilteredComplex, x: FilteredComplex, depth: int, n: int,
                         cocycle: Matrix) -> FilteredMap:
    """Filtered map S(n+1, depth) -> x from a level-depth cocycle in degree n+1."""
    per_level = {depth: cocycle}
    for k in range(depth - 1, -1, -1):
        per_level[k] = x.inclusion(k).f(n + 1) * per_level[k + 1]
    maps = []
    for k in range(x.length + 1):
        src = gen.level(k)
        tgt = x.level(k)
        if src.is_zero() or k > depth:
            maps.append(ChainMap.zero(src, tgt))
        else:
            maps.append(ChainMap(src, tgt, {n + 1: per_level[k]}, check=False))
    return FilteredMap(gen, x, maps, check=False)


def filtered_i_squares(p: FilteredMap):
    """Squares over S(n+1, depth) -> D(n, depth), one per basis pair (x, y)."""
    x_f, y_f = p.source, p.target
    for depth in range(y_f.length):
        xl = x_f.level(depth)
        yl = y_f.level(depth)
        amb_lo = min([xl.lo - 1] + [yl.lo]) if not (xl.is_zero() and yl.is_zero()) else 0
        amb_hi = max([xl.hi] + [yl.hi]) if not (xl.is_zero() and yl.is_zero()) else -1
        for n in range(amb_lo, amb_hi + 1):
            zx = linalg.kernel_basis(xl.d(n + 1))
            sys = BlockSystem()
            sys.block("cx", zx.cols, 1)
            sys.block("y", yl.dim(n), 1)
            terms = []
            if zx.cols:
                terms.append((p.level(depth).f(n + 1) * zx, "cx", None))
            if yl.dim(n):
                terms.append((-yl.d(n), "y", None))
            sys.add_equation(terms, Matrix.zero(yl.dim(n + 1), 1))
            sgen = _filtered_sphere_generator(n, depth, y_f.length)
            dgen = filtered_generator("disk", n, depth, y_f.length)
            inc = _sphere_into_disk_filtered(sgen, dgen, depth, n)
            for vec in sys.null_basis():
                x_elt = zx * vec["cx"] if zx.cols else Matrix.zero(xl.dim(n + 1), 1)
                f = _filtered_sphere_map(sgen, x_f, depth, n, x_elt)
                g = _filtered_disk_map(dgen, y_f, depth, n, vec["y"])
                yield inc, p, f, g


def _filtered_sphere_generator(n: int, depth: int, length: int) -> FilteredComplex:
    return filtered_generator("sphere", n + 1, depth, length)


def _sphere_into_disk_filtered(sgen: FilteredComplex, dgen: FilteredComplex,
                               depth: int, n: int) -> FilteredMap:
    maps = []
    for k in range(sgen.length + 1):
        src, tgt = sgen.level(k), dgen.level(k)
        if src.is_zero():
            maps.append(ChainMap.zero(src, tgt))
        else:
            maps.append(ChainMap(src, tgt, {n + 1: Matrix.identity(1)}, check=False))
    return FilteredMap(sgen, dgen, maps, check=False)


def detects_filtered_fibration(p: FilteredMap) -> bool:
    return all(filtered_lift_square(*sq) is not None for sq in filtered_j_squares(p))


def detects_filtered_trivial_fibration(p: FilteredMap) -> bool:
    return all(filtered_lift_square(*sq) is not None for sq in filtered_i_squares(p))
