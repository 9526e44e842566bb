"""Projective model structure on complexes, made executable.

Class predicates follow the generating-set characterisations: fibrations
are degreewise surjections, trivial fibrations are surjections with
acyclic kernel, cofibrations are degreewise injections (over a field every
bounded complex is cofibrant) and trivial cofibrations are injections with
acyclic cokernel.  Lifting problems are solved as one global exact linear
system; both factorizations are constructive.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Tuple

from . import linalg
from .complexes import (
    ChainMap,
    Complex,
    cohomology,
    cone,
    direct_sum,
    disk,
    hom_pullback,
)
from .errors import NonCommutingSquare, NotAcyclic
from .linalg import BlockSystem, Matrix

Q = Fraction


def is_fibration(p: ChainMap) -> bool:
    """Degreewise surjection."""
    return p.is_surjective()


def kernel_complex(p: ChainMap) -> Tuple[Complex, ChainMap]:
    """The kernel subcomplex of p with its inclusion."""
    src = p.source
    bases = {n: linalg.kernel_basis(p.f(n)) for n in src.support()}
    dims = {n: b.cols for n, b in bases.items()}
    diffs = {}
    for n in src.support():
        kn = bases.get(n)
        kn1 = bases.get(n + 1)
        if kn is None or kn1 is None or not kn.cols or not kn1.cols:
            continue
        core = linalg.solve_matrix(kn1, src.d(n) * kn)
        if core is None:
            raise NonCommutingSquare("kernel not closed under the differential")
        diffs[n] = core
    k = Complex(dims, diffs)
    incl = ChainMap(k, src, {n: b for n, b in bases.items() if b.cols}, check=False)
    return k, incl


def cokernel_complex(i: ChainMap) -> Tuple[Complex, ChainMap]:
    """The cokernel complex of i with its projection."""
    tgt = i.target
    projections = {}
    dims = {}
    for n in tgt.support():
        img = linalg.column_space(i.f(n))
        full = linalg.hstack([img, Matrix.identity(tgt.dim(n))])
        rows = linalg._int_rows(full)
        pivots = linalg._echelon(rows, full.cols)
        extra = [c - img.cols for c in pivots if c >= img.cols]
        # coordinates with respect to [img | chosen standard vectors],
        # keeping only the standard part, kill the image: that is the
        # projection onto the quotient.
        basis = linalg.hstack([img, Matrix(tgt.dim(n), len(extra),
                                           [[Q(1) if r == c else Q(0) for c in extra]
                                            for r in range(tgt.dim(n))])])
        coords = linalg.solve_matrix(basis, Matrix.identity(tgt.dim(n)))
        proj = Matrix(len(extra), tgt.dim(n),
                      [[coords[img.cols + k, j] for j in range(tgt.dim(n))]
                       for k in range(len(extra))])
        projections[n] = proj
        dims[n] = len(extra)
    diffs = {}
    for n in tgt.support():
        if not dims.get(n) or not dims.get(n + 1):
            continue
        proj = projections[n]
        # section: the j-th quotient basis vector is a standard vector of the target
        sec = linalg.solve_matrix(proj, Matrix.identity(dims[n]))
        diffs[n] = projections[n + 1] * tgt.d(n) * sec
    c = Complex(dims, diffs)
    pr = ChainMap(tgt, c, {n: m for n, m in projections.items() if m.rows}, check=False)
    return c, pr


def is_acyclic(m: Complex) -> bool:
    return cohomology(m).total() == 0


def is_trivial_fibration(p: ChainMap) -> bool:
    """Degreewise surjection with acyclic kernel."""
    if not is_fibration(p):
        return False
    k, _ = kernel_complex(p)
    return is_acyclic(k)


def is_cofibration(i: ChainMap) -> bool:
    """Degreewise injection; bounded complexes over a field have cofibrant cokernels."""
    return i.is_injective()


def is_trivial_cofibration(i: ChainMap) -> bool:
    """Degreewise injection with acyclic cokernel."""
    if not i.is_injective():
        return False
    c, _ = cokernel_complex(i)
    return is_acyclic(c)


def _square_commutes(i: ChainMap, p: ChainMap, f: ChainMap, g: ChainMap) -> bool:
    degrees = set(i.source.dims) | set(i.target.dims) | set(p.source.dims) | set(p.target.dims)
    return all(g.f(n) * i.f(n) == p.f(n) * f.f(n) for n in degrees)


def lift_square(i: ChainMap, p: ChainMap, f: ChainMap, g: ChainMap) -> Optional[ChainMap]:
    """Diagonal filler h with h i = f, p h = g, or None.

    The unknowns are all the degree components of h at once; the chain
    condition and the two triangle identities form a single exact linear
    system, solved with free variables zeroed, so the returned lift is
    deterministic.
    """
    if f.source is not i.source and f.source.dims != i.source.dims:
        raise NonCommutingSquare("top-left corners differ")
    if not _square_commutes(i, p, f, g):
        raise NonCommutingSquare("the given square does not commute")
    b = i.target
    x = p.source
    degrees = sorted(set(b.dims) | set(x.dims))
    sys = BlockSystem()
    for n in degrees:
        sys.block(n, x.dim(n), b.dim(n))
    for n in degrees:
        # chain condition d_x h^n = h^{n+1} d_b^n
        if x.dim(n + 1) and b.dim(n):
            terms = []
            if x.dim(n):
                terms.append((x.d(n), n, None))
            if b.dim(n + 1):
                terms.append((-Matrix.identity(x.dim(n + 1)), n + 1, b.d(n)))
            sys.add_equation(terms, Matrix.zero(x.dim(n + 1), b.dim(n)))
        # h i = f
        if x.dim(n) and i.source.dim(n):
            if b.dim(n):
                sys.add_equation([(None, n, i.f(n))], f.f(n))
            elif not f.f(n).is_zero():
                return None
        # p h = g
        if p.target.dim(n) and b.dim(n):
            if x.dim(n):
                sys.add_equation([(p.f(n), n, None)], g.f(n))
            elif not g.f(n).is_zero():
                return None
    sol = sys.solve()
    if sol is None:
        return None
    return ChainMap(b, x, {n: m for n, m in sol.items() if m.rows and m.cols}, check=False)


def contracting_homotopy(k: Complex) -> Dict[int, Matrix]:
    """Degree -1 maps h with d h + h d = id, for an acyclic bounded complex."""
    if not is_acyclic(k):
        raise NotAcyclic("complex has nonzero cohomology")
    degrees = sorted(k.dims)
    sys = BlockSystem()
    for n in degrees:
        if k.dim(n) and k.dim(n - 1):
            sys.block(n, k.dim(n - 1), k.dim(n))
    for n in degrees:
        terms = []
        if k.dim(n - 1) and n in sys._shape:
            terms.append((k.d(n - 1), n, None))
        if k.dim(n + 1) and (n + 1) in sys._shape:
            terms.append((None, n + 1, k.d(n)))
        sys.add_equation(terms, Matrix.identity(k.dim(n)))
    sol = sys.solve()
    if sol is None:
        raise NotAcyclic("no contracting homotopy found")
    h = {n: m for n, m in sol.items() if m.rows and m.cols}
    for n in degrees:
        hn = h.get(n, Matrix.zero(k.dim(n - 1), k.dim(n)))
        hn1 = h.get(n + 1, Matrix.zero(k.dim(n), k.dim(n + 1)))
        assert k.d(n - 1) * hn + hn1 * k.d(n) == Matrix.identity(k.dim(n))
    return h


def disk_cover(n: Complex) -> Tuple[Complex, ChainMap]:
    """Sum of disks P(n) with the evaluation map onto n.

    One disk summand per degree a with multiplicity dim n^a; its degree-a
    slot maps by the identity and its degree-(a+1) slot by the differential.
    """
    summands = []
    for a in sorted(n.dims):
        summands.append((a, disk(a, n.dim(a))))
    p = direct_sum(*(s for _, s in summands)) if summands else Complex({})
    maps = {}
    for deg in p.support():
        blocks = []
        for a, s in summands:
            if s.dim(deg) == 0:
                blocks.append(Matrix.zero(n.dim(deg), 0))
            elif deg == a:
                blocks.append(Matrix.identity(n.dim(a)))
            else:  # deg == a + 1: the slot is a copy of n^a, mapped by d
                blocks.append(n.d(a))
        maps[deg] = linalg.hstack(blocks)
    ev = ChainMap(p, n, maps)
    return p, ev


def factor_trivcof_fib(f: ChainMap) -> Tuple[ChainMap, ChainMap]:
    """Factor f as (trivial cofibration) then (fibration) through m (+) P(n)."""
    m, n = f.source, f.target
    p, ev = disk_cover(n)
    mid = direct_sum(m, p)
    incl = ChainMap(m, mid, {a: linalg.vstack([Matrix.identity(m.dim(a)),
                                               Matrix.zero(p.dim(a), m.dim(a))])
                             for a in m.support()}, check=False)
    proj = ChainMap(mid, n, {a: linalg.hstack([f.f(a), ev.f(a)])
                             for a in mid.support()}, check=False)
    return incl, proj


def mapping_cylinder(f: ChainMap) -> Tuple[Complex, ChainMap, ChainMap]:
    """Cylinder of f with the source inclusion and the target projection.

    Degree a is m^a (+) m^{a+1} (+) n^a with differential
    (m, m', y) -> (dm - m', -dm', dy + f m').
    """
    m, n = f.source, f.target
    degrees = set(n.dims) | set(m.dims) | {a - 1 for a in m.dims}
    dims = {a: m.dim(a) + m.dim(a + 1) + n.dim(a) for a in degrees}
    diffs = {}
    for a in degrees:
        rows = dims.get(a + 1, 0)
        cols = dims.get(a, 0)
        if not rows or not cols:
            continue
        r1 = linalg.hstack([m.d(a), -Matrix.identity(m.dim(a + 1)),
                            Matrix.zero(m.dim(a + 1), n.dim(a))])
        r2 = linalg.hstack([Matrix.zero(m.dim(a + 2), m.dim(a)), -m.d(a + 1),
                            Matrix.zero(m.dim(a + 2), n.dim(a))])
        r3 = linalg.hstack([Matrix.zero(n.dim(a + 1), m.dim(a)), f.f(a + 1), n.d(a)])
        diffs[a] = linalg.vstack([r1, r2, r3])
    cyl = Complex(dims, diffs)
    incl = ChainMap(m, cyl, {a: linalg.vstack([Matrix.identity(m.dim(a)),
                                               Matrix.zero(m.dim(a + 1) + n.dim(a), m.dim(a))])
                             for a in m.support()}, check=False)
    proj = ChainMap(cyl, n, {a: linalg.hstack([f.f(a), Matrix.zero(n.dim(a), m.dim(a + 1)),
                                               Matrix.identity(n.dim(a))])
                             for a in cyl.support()}, check=False)
    return cyl, incl, proj


def factor_cof_trivfib(f: ChainMap) -> Tuple[ChainMap, ChainMap]:
    """Factor f as (cofibration) then (trivial fibration) through its cylinder."""
    _, incl, proj = mapping_cylinder(f)
    return incl, proj


def obstruction_group(theta: ChainMap, c: Complex) -> int:
    """dim H^2 of the cone of precomposition HOM(target, c) -> HOM(source, c)."""
    pull = hom_pullback(theta, c)
    return cohomology(cone(pull)).dim(2)


# -- generator families and detection ---------------------------------------

def j_generator_squares(p: ChainMap):
    """Squares over 0 -> D(n), one per basis vector of the bottom maps.

    Lifting them all is equivalent to lifting every square over the
    generators; n runs over the (finite) support of the target.
    """
    y = p.target
    for n in sorted(set(y.dims)):
        d = disk(n)
        zero = Complex({})
        i = ChainMap.zero(zero, d)
        f = ChainMap.zero(zero, p.source)
        for j in range(y.dim(n)):
            col = Matrix(y.dim(n), 1, [[Q(1) if r == j else Q(0)] for r in range(y.dim(n))])
            g = ChainMap(d, y, {n: col, n + 1: y.d(n) * col}, check=False)
            yield i, p, f, g


def i_generator_squares(p: ChainMap):
    """Squares over S(n+1) -> D(n), one per basis vector of the square space.

    A square is a pair (x, y) with x a cocycle of the source in degree n+1
    and y in the target's degree n, with p x = d y; the pairs form a vector
    space and a basis suffices by linearity.
    """
    x_cx, y_cx = p.source, p.target
    lo = min(x_cx.lo - 1, y_cx.lo) if not (x_cx.is_zero() and y_cx.is_zero()) else 0
    hi = max(x_cx.hi, y_cx.hi) if not (x_cx.is_zero() and y_cx.is_zero()) else -1
    for n in range(lo, hi + 1):
        d = disk(n)
        zx = linalg.kernel_basis(x_cx.d(n + 1))
        sys = BlockSystem()
        sys.block("cx", zx.cols, 1)
        sys.block("y", y_cx.dim(n), 1)
        terms = []
        if zx.cols:
            terms.append((p.f(n + 1) * zx, "cx", None))
        if y_cx.dim(n):
            terms.append((-y_cx.d(n), "y", None))
        sys.add_equation(terms, Matrix.zero(y_cx.dim(n + 1), 1))
        for vec in sys.null_basis():
            x = zx * vec["cx"] if zx.cols else Matrix.zero(x_cx.dim(n + 1), 1)
            yv = vec["y"]
            sph = Complex({n + 1: 1})
            i = ChainMap(sph, d, {n + 1: Matrix.identity(1)}, check=False)
            f = ChainMap(sph, x_cx, {n + 1: x}, check=False)
            g = ChainMap(d, y_cx, {n: yv, n + 1: y_cx.d(n) * yv}, check=False)
            yield i, p, f, g


def detects_fibration(p: ChainMap) -> bool:
    """Exhaustive lifting against the disk generators over the support."""
    return all(lift_square(*sq) is not None for sq in j_generator_squares(p))


def detects_trivial_fibration(p: ChainMap) -> bool:
    """Exhaustive lifting against the sphere-to-disk generators."""
    return all(lift_square(*sq) is not None for sq in i_generator_squares(p))
