"""Deterministic randomized instance generation and the property suites.

Every generator is keyed by (seed, instance index), so parallel and serial
runs agree and any failing instance can be replayed from its index alone.
Suites return one record per instance; reports are plain JSON-ready dicts,
sorted by instance index.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import linalg, model, serialize
from .complexes import (
    ChainMap,
    Complex,
    cohomology,
    cone,
    direct_sum,
    disk,
    ext_dim,
    is_quasi_iso,
    semisimple_ext_oracle,
    shift,
    sphere,
    zero_complex,
)
from .dold_kan import binomial_level_dims, denormalize, normalize, roundtrip_iso
from .errors import NotAComplex, UnknownSuite
from .filtered import (
    FilteredComplex,
    FilteredMap,
    direct_sum_filtered,
    filtered_chain_map_basis,
    filtered_chain_map_count,
    filtered_ext_dim,
    filtered_generator,
    detects_filtered_fibration,
    detects_filtered_trivial_fibration,
    is_filtered_fibration,
    is_filtered_trivial_fibration,
    is_filtered_weak_equivalence,
    trivial_filtration,
)
from .grassmann import FlagPoint, GrassPoint, shadow_flag, shadow_grass, validate_grass_point
from .linalg import BlockSystem, Matrix
from .mapping import pi_dim
from .rees import (
    graded_ext_weight0_dim,
    graded_hom_weight0,
    graded_is_fibration,
    graded_iso_to_rees_phi,
    GradedModuleComplex,
    is_torsion_free,
    rees,
    rees_map,
    rees_phi_is_identity,
)

Q = Fraction

ENTRY_POOL = [0, 0, 0, 1, 1, -1, -1, 2, -2, Q(1, 2), Q(-1, 3)]
COEFF_POOL = [0, 1, 1, -1, 2, -2, 3]


@dataclass(frozen=True)
class Budget:
    """Instance size limits; the defaults exercise every sign and index."""

    max_dim: int = 4
    deg_lo: int = -3
    deg_hi: int = 3
    length: int = 3


def instance_rng(seed: int, index: int) -> random.Random:
    """Splittable generator: one independent stream per (seed, index)."""
    return random.Random((seed & 0xFFFFFFFF) * 1_000_003 + index * 7_777_777 + 97)


def random_matrix(rng: random.Random, rows: int, cols: int) -> Matrix:
    return Matrix(rows, cols, [[rng.choice(ENTRY_POOL) for _ in range(cols)]
                               for _ in range(rows)])


def random_dims(rng: random.Random, budget: Budget) -> Dict[int, int]:
    lo = rng.randint(budget.deg_lo, budget.deg_hi)
    hi = rng.randint(lo, budget.deg_hi)
    dims = {}
    for n in range(lo, hi + 1):
        d = rng.randint(0, budget.max_dim)
        if d:
            dims[n] = d
    return dims


def random_complex(rng: random.Random, budget: Budget) -> Complex:
    """Valid complex with d^2 = 0 by construction.

    Differentials are built top-down: each one is a random matrix composed
    with the kernel inclusion of the one above, so the constraint holds
    identically.
    """
    dims = random_dims(rng, budget)
    if not dims:
        return zero_complex()
    lo, hi = min(dims), max(dims)
    diffs = {}
    kernel = Matrix.identity(dims.get(hi, 0))
    for n in range(hi - 1, lo - 1, -1):
        rows = dims.get(n + 1, 0)
        cols = dims.get(n, 0)
        if rows and cols:
            raw = random_matrix(rng, kernel.cols, cols)
            diffs[n] = kernel * raw
            kernel = linalg.kernel_basis(diffs[n])
        else:
            kernel = Matrix.identity(cols)
    return Complex(dims, diffs)


def chain_map_basis(src: Complex, tgt: Complex) -> List[Dict[int, Matrix]]:
    """Basis of the vector space of chain maps src -> tgt."""
    sys = BlockSystem()
    degrees = sorted(set(src.dims) | set(tgt.dims))
    for a in degrees:
        if src.dim(a) and tgt.dim(a):
            sys.block(a, tgt.dim(a), src.dim(a))
    for a in degrees:
        rows = tgt.dim(a + 1)
        cols = src.dim(a)
        if not rows or not cols:
            continue
        terms = []
        if a in sys._shape:
            terms.append((tgt.d(a), a, None))
        if (a + 1) in sys._shape:
            terms.append((-Matrix.identity(rows), a + 1, src.d(a)))
        sys.add_equation(terms, Matrix.zero(rows, cols))
    return sys.null_basis()


def random_chain_map(rng: random.Random, src: Complex, tgt: Complex) -> ChainMap:
    basis = chain_map_basis(src, tgt)
    degrees = [a for a in sorted(set(src.dims) | set(tgt.dims))
               if src.dim(a) and tgt.dim(a)]
    acc = {a: Matrix.zero(tgt.dim(a), src.dim(a)) for a in degrees}
    for fam in basis:
        c = rng.choice(COEFF_POOL)
        if c:
            for a, mat in fam.items():
                acc[a] = acc[a] + mat.scale(c)
    return ChainMap(src, tgt, acc, check=False)


def random_automorphism(rng: random.Random, cx: Complex) -> ChainMap:
    """Invertible chain self-map: id + t u for a scaling t avoiding all roots."""
    u = random_chain_map(rng, cx, cx)
    for k in range(1, cx.total_dim() + 2):
        t = Q(1, k)
        cand = ChainMap.identity(cx) + u.scale(t)
        if all(linalg.rank(cand.f(n)) == cx.dim(n) for n in cx.support()):
            return cand
    raise AssertionError("no invertible scaling found")


def inverse_chain_map(f: ChainMap) -> ChainMap:
    """Inverse of a degreewise invertible chain map."""
    maps = {}
    for n in f.source.support():
        inv = linalg.solve_matrix(f.f(n), Matrix.identity(f.target.dim(n)))
        if inv is None:
            raise AssertionError("chain map is not invertible")
        maps[n] = inv
    return ChainMap(f.target, f.source, maps, check=False)


def random_acyclic(rng: random.Random, budget: Budget, max_mult: int = 2) -> Complex:
    """Sum of disks conjugated by a random automorphism."""
    lo = rng.randint(budget.deg_lo, budget.deg_hi - 1)
    hi = rng.randint(lo, budget.deg_hi - 1)
    summands = []
    for n in range(lo, hi + 1):
        mult = rng.randint(0, max_mult)
        if mult:
            summands.append(disk(n, mult))
    if not summands:
        return zero_complex()
    p = direct_sum(*summands)
    a = random_automorphism(rng, p)
    a_inv = inverse_chain_map(a)
    diffs = {n: a.f(n + 1) * p.d(n) * a_inv.f(n) for n in p.support()}
    return Complex(dict(p.dims), diffs)


def random_quasi_iso(rng: random.Random, budget: Budget) -> ChainMap:
    """Projection-with-acyclic-kernel or inclusion, dressed by automorphisms."""
    m = random_complex(rng, budget)
    k = random_acyclic(rng, budget, max_mult=1)
    big = direct_sum(m, k)
    alpha = random_automorphism(rng, big)
    beta = random_automorphism(rng, m)
    if rng.random() < 0.5:
        u = random_chain_map(rng, k, m)
        proj = ChainMap(big, m, {n: linalg.hstack([Matrix.identity(m.dim(n)), u.f(n)])
                                 for n in big.support()}, check=False)
        return beta.compose(proj).compose(alpha)
    incl = ChainMap(m, big, {n: linalg.vstack([Matrix.identity(m.dim(n)),
                                               Matrix.zero(k.dim(n), m.dim(n))])
                             for n in m.support()}, check=False)
    return alpha.compose(incl).compose(beta)


def random_surjection(rng: random.Random, tgt: Complex, kernel: Complex) -> ChainMap:
    """Surjective chain map onto tgt with the given kernel complex."""
    big = direct_sum(tgt, kernel)
    u = random_chain_map(rng, kernel, tgt)
    p0 = ChainMap(big, tgt, {n: linalg.hstack([Matrix.identity(tgt.dim(n)), u.f(n)])
                             for n in big.support()}, check=False)
    alpha = random_automorphism(rng, big)
    return p0.compose(alpha)


def random_injection(rng: random.Random, src: Complex, cokernel: Complex) -> ChainMap:
    """Injective chain map from src with the given cokernel complex."""
    big = direct_sum(src, cokernel)
    u = random_chain_map(rng, src, cokernel)
    i0 = ChainMap(src, big, {n: linalg.vstack([Matrix.identity(src.dim(n)), u.f(n)])
                             for n in src.support()}, check=False)
    alpha = random_automorphism(rng, big)
    return alpha.compose(i0)


def _solve_chain_map_with(src: Complex, tgt: Complex, post: Optional[ChainMap],
                          pre: Optional[ChainMap], rhs: ChainMap):
    """Canonical chain map u : src -> tgt with (post . u . pre) = rhs.

    Either composition factor may be None (identity); returns None when the
    constraint system is inconsistent.
    """
    sys = BlockSystem()
    degrees = sorted(set(src.dims) | set(tgt.dims))
    for n in degrees:
        if src.dim(n) and tgt.dim(n):
            sys.block(n, tgt.dim(n), src.dim(n))
    for n in degrees:
        rows = tgt.dim(n + 1)
        cols = src.dim(n)
        if rows and cols:
            terms = []
            if n in sys._shape:
                terms.append((tgt.d(n), n, None))
            if (n + 1) in sys._shape:
                terms.append((-Matrix.identity(rows), n + 1, src.d(n)))
            sys.add_equation(terms, Matrix.zero(rows, cols))
    out_src = pre.source if pre is not None else src
    out_tgt = post.target if post is not None else tgt
    for n in sorted(set(out_src.dims) | set(out_tgt.dims)):
        rows = out_tgt.dim(n)
        cols = out_src.dim(n)
        if not rows or not cols:
            continue
        left = post.f(n) if post is not None else None
        right = pre.f(n) if pre is not None else None
        if n in sys._shape:
            sys.add_equation([(left, n, right)], rhs.f(n))
        elif not rhs.f(n).is_zero():
            return None
    sol = sys.solve()
    if sol is None:
        return None
    return ChainMap(src, tgt, {n: m for n, m in sol.items() if m.rows and m.cols}, check=False)


def commuting_square(rng: random.Random, i: ChainMap, p: ChainMap, solve_for: str = "f"):
    """Random commuting pair (f, g) over the given vertical maps.

    With solve_for="f" a random g is drawn and a compatible f is solved for
    (always consistent when p is a trivial fibration); with solve_for="g"
    the roles swap (always consistent when i is a trivial cofibration).
    Afterwards the pair is shifted by an H-shaped perturbation
    (f + H i, g + p H), which stays commuting.
    """
    a_cx, b_cx = i.source, i.target
    x_cx, y_cx = p.source, p.target
    if solve_for == "f":
        g = random_chain_map(rng, b_cx, y_cx)
        f = _solve_chain_map_with(a_cx, x_cx, p, None, g.compose(i))
        if f is None:
            return None
    else:
        f = random_chain_map(rng, a_cx, x_cx)
        g = _solve_chain_map_with(b_cx, y_cx, None, i, p.compose(f))
        if g is None:
            return None
    h = random_chain_map(rng, b_cx, x_cx)
    f = f + h.compose(i)
    g = g + p.compose(h)
    return f, g


# -- filtered generation ------------------------------------------------------

def random_filtered(rng: random.Random, budget: Budget) -> FilteredComplex:
    """Nested d-stable subspaces spanned by random vectors and their images."""
    ambient = random_complex(rng, budget)
    levels = [ambient]
    inclusions = []
    current = ambient
    for _ in range(budget.length - 1):
        chosen = {}
        for a in current.support():
            count = rng.randint(0, max(0, current.dim(a) - rng.randint(0, 2)))
            cols = [Matrix(current.dim(a), 1,
                           [[rng.choice(ENTRY_POOL)] for _ in range(current.dim(a))])
                    for _ in range(count)]
            if cols:
                chosen[a] = linalg.hstack(cols)
        bases = {}
        for a in current.support():
            pieces = []
            if a in chosen:
                pieces.append(chosen[a])
            if (a - 1) in chosen:
                pieces.append(current.d(a - 1) * chosen[a - 1])
            if pieces:
                span = linalg.column_space(linalg.hstack(pieces))
                if span.cols:
                    bases[a] = span
        dims = {a: b.cols for a, b in bases.items()}
        diffs = {}
        for a, b in bases.items():
            if (a + 1) not in bases:
                if not (current.d(a) * b).is_zero():
                    raise NotAComplex("level span not closed under d")
                continue
            core = linalg.solve_matrix(bases[a + 1], current.d(a) * b)
            if core is None:
                raise NotAComplex("level span not closed under d")
            diffs[a] = core
        sub = Complex(dims, diffs)
        incl = ChainMap(sub, current, {a: b for a, b in bases.items()}, check=False)
        levels.append(sub)
        inclusions.append(incl)
        current = sub
    zc = zero_complex()
    levels.append(zc)
    inclusions.append(ChainMap.zero(zc, current))
    return FilteredComplex(levels, inclusions)


def random_filtered_map(rng: random.Random, src: FilteredComplex,
                        tgt: FilteredComplex) -> FilteredMap:
    basis = filtered_chain_map_basis(src, tgt)
    fam = {}
    for b in basis:
        c = rng.choice(COEFF_POOL)
        if c:
            for key, mat in b.items():
                fam[key] = fam.get(key, Matrix.zero(mat.rows, mat.cols)) + mat.scale(c)
    maps = []
    for k in range(src.length + 1):
        sl, tl = src.level(k), tgt.level(k)
        mats = {a: fam[(k, a)] for a in sl.support() if (k, a) in fam}
        maps.append(ChainMap(sl, tl, mats, check=False))
    return FilteredMap(src, tgt, maps, check=False)


def random_filtered_disks(rng: random.Random, budget: Budget, count: int = 2) -> FilteredComplex:
    """Direct sum of filtered disk generators: levelwise acyclic."""
    length = budget.length
    acc: Optional[FilteredComplex] = None
    for _ in range(count):
        if rng.random() < 0.4:
            continue
        n = rng.randint(budget.deg_lo, budget.deg_hi - 1)
        depth = rng.randint(0, length - 1)
        g = filtered_generator("disk", n, depth, length)
        acc = g if acc is None else direct_sum_filtered(acc, g)
    if acc is None:
        acc = trivial_filtration(zero_complex(), length)
    return acc


def random_filtered_fibration(rng: random.Random, tgt: FilteredComplex,
                              trivial: bool) -> FilteredMap:
    """Levelwise split surjection onto tgt; acyclic kernel levels if trivial."""
    budget = Budget(max_dim=2, deg_lo=tgt.ambient.lo - 1 if tgt.ambient.dims else -1,
                    deg_hi=(tgt.ambient.hi + 1) if tgt.ambient.dims else 1,
                    length=tgt.length)
    if trivial:
        k = random_filtered_disks(rng, budget)
    else:
        k = random_filtered(rng, budget)
    big = direct_sum_filtered(tgt, k)
    u = random_filtered_map(rng, k, tgt)
    maps = []
    for lvl in range(tgt.length + 1):
        bl = big.level(lvl)
        tl = tgt.level(lvl)
        maps.append(ChainMap(bl, tl,
                             {a: linalg.hstack([Matrix.identity(tl.dim(a)),
                                                u.level(lvl).f(a)])
                              for a in bl.support()}, check=False))
    return FilteredMap(big, tgt, maps, check=False)


def random_graded(rng: random.Random, budget: Budget) -> GradedModuleComplex:
    """Random weight band with arbitrary action maps (torsion is common)."""
    if rng.random() < 0.4:
        return rees(random_filtered(rng, budget))
    top = rng.randint(0, budget.length - 1)
    components = [random_complex(rng, budget) for _ in range(top + 1)]
    t_maps = [random_chain_map(rng, components[w], components[w - 1])
              for w in range(1, top + 1)]
    return GradedModuleComplex(components, t_maps)


# -- suites -------------------------------------------------------------------

def _check(name: str, ok: bool, counterexample=None) -> dict:
    rec = {"name": name, "ok": bool(ok)}
    if not ok and counterexample is not None:
        rec["counterexample"] = counterexample
    return rec


def _verify_lift(i, p, f, g, h) -> bool:
    if h is None:
        return False
    return h.compose(i) == f and p.compose(h) == g


def suite_model_axioms(rng: random.Random, budget: Budget) -> List[dict]:
    small = Budget(max_dim=2, deg_lo=budget.deg_lo, deg_hi=budget.deg_hi)
    checks = []

    # (a) cofibration vs trivial fibration
    a_cx = random_complex(rng, small)
    c_cx = random_complex(rng, small)
    y_cx = random_complex(rng, small)
    k_acyclic = random_acyclic(rng, small)
    i = random_injection(rng, a_cx, c_cx)
    p = random_surjection(rng, y_cx, k_acyclic)
    pair = commuting_square(rng, i, p)
    if pair is None:
        checks.append(_check("cof-trivfib-square-exists", False,
                             {"i": serialize.chain_map_to_json(i)}))
    else:
        f, g = pair
        h = model.lift_square(i, p, f, g)
        checks.append(_check("cof-trivfib-lift", _verify_lift(i, p, f, g, h),
                             None if h is not None else
                             {"i": serialize.chain_map_to_json(i),
                              "p": serialize.chain_map_to_json(p),
                              "f": serialize.chain_map_to_json(f),
                              "g": serialize.chain_map_to_json(g)}))

    # (b) trivial cofibration vs fibration
    c_acyclic = random_acyclic(rng, small)
    k_cx = random_complex(rng, small)
    i2 = random_injection(rng, a_cx, c_acyclic)
    p2 = random_surjection(rng, y_cx, k_cx)
    pair2 = commuting_square(rng, i2, p2, solve_for="g")
    if pair2 is None:
        checks.append(_check("trivcof-fib-square-exists", False))
    else:
        f2, g2 = pair2
        h2 = model.lift_square(i2, p2, f2, g2)
        checks.append(_check("trivcof-fib-lift", _verify_lift(i2, p2, f2, g2, h2),
                             None if h2 is not None else
                             {"i": serialize.chain_map_to_json(i2),
                              "p": serialize.chain_map_to_json(p2)}))

    # (c) two-out-of-three: never exactly two of {f, g, g f} quasi-isos
    m1 = random_complex(rng, small)
    style = rng.randrange(3)
    if style == 0:
        fmap = random_quasi_iso(rng, small)
        gmap = random_chain_map(rng, fmap.target, m1)
    elif style == 1:
        gmap = random_quasi_iso(rng, small)
        fmap = random_chain_map(rng, m1, gmap.source)
    else:
        fmap = random_quasi_iso(rng, small)
        gmap = random_quasi_iso_from(rng, fmap.target, small)
    trues = sum([is_quasi_iso(fmap), is_quasi_iso(gmap),
                 is_quasi_iso(gmap.compose(fmap))])
    checks.append(_check("two-out-of-three", trues != 2,
                         None if trues != 2 else
                         {"f": serialize.chain_map_to_json(fmap),
                          "g": serialize.chain_map_to_json(gmap)}))

    # (c') retract closure via block decompositions
    a1 = random_complex(rng, small)
    a2 = random_complex(rng, small)
    b1 = random_complex(rng, small)
    b2 = random_complex(rng, small)
    f_prime = (random_quasi_iso_between(rng, a1, b1, small) if rng.random() < 0.5
               else random_chain_map(rng, a1, b1))
    f_rest = (random_quasi_iso_between(rng, a2, b2, small) if rng.random() < 0.5
              else random_chain_map(rng, a2, b2))
    big_src = direct_sum(a1, a2)
    big_tgt = direct_sum(b1, b2)
    alpha = random_automorphism(rng, big_src)
    beta = random_automorphism(rng, big_tgt)
    f_big = beta.compose(block_sum_map(f_prime, f_rest)).compose(inverse_chain_map(alpha))
    agree = is_quasi_iso(f_big) == (is_quasi_iso(f_prime) and is_quasi_iso(f_rest))
    retract_ok = (not is_quasi_iso(f_big)) or is_quasi_iso(f_prime)
    checks.append(_check("retract-closure", agree and retract_ok))

    # (d) factorizations
    src = random_complex(rng, small)
    tgt = random_complex(rng, small)
    fmap2 = random_chain_map(rng, src, tgt)
    i3, p3 = model.factor_trivcof_fib(fmap2)
    ok_d1 = (p3.compose(i3) == fmap2 and model.is_trivial_cofibration(i3)
             and model.is_fibration(p3))
    checks.append(_check("factor-trivcof-fib", ok_d1,
                         None if ok_d1 else {"f": serialize.chain_map_to_json(fmap2)}))
    i4, p4 = model.factor_cof_trivfib(fmap2)
    ok_d2 = (p4.compose(i4) == fmap2 and model.is_cofibration(i4)
             and model.is_trivial_fibration(p4))
    checks.append(_check("factor-cof-trivfib", ok_d2,
                         None if ok_d2 else {"f": serialize.chain_map_to_json(fmap2)}))
    return checks


def random_quasi_iso_from(rng: random.Random, src: Complex, budget: Budget) -> ChainMap:
    """Quasi-isomorphism out of the given complex (inclusion into src + disks)."""
    k = random_acyclic(rng, budget, max_mult=1)
    big = direct_sum(src, k)
    alpha = random_automorphism(rng, big)
    incl = ChainMap(src, big, {n: linalg.vstack([Matrix.identity(src.dim(n)),
                                                 Matrix.zero(k.dim(n), src.dim(n))])
                               for n in src.support()}, check=False)
    return alpha.compose(incl)


def random_quasi_iso_between(rng: random.Random, src: Complex, tgt: Complex,
                             budget: Budget) -> ChainMap:
    """A quasi-iso src -> tgt when the cohomologies allow one, else a plain map."""
    hs = cohomology(src)
    ht = cohomology(tgt)
    if hs.dims != ht.dims:
        return random_chain_map(rng, src, tgt)
    basis = chain_map_basis(src, tgt)
    for b in basis:
        cand = ChainMap(src, tgt, b, check=False)
        if is_quasi_iso(cand):
            return cand
    for _ in range(6):
        cand = random_chain_map(rng, src, tgt)
        if is_quasi_iso(cand):
            return cand
    return random_chain_map(rng, src, tgt)


def block_sum_map(f: ChainMap, g: ChainMap) -> ChainMap:
    src = direct_sum(f.source, g.source)
    tgt = direct_sum(f.target, g.target)
    maps = {n: linalg.block_diag([f.f(n), g.f(n)]) for n in src.support()}
    return ChainMap(src, tgt, maps, check=False)


def suite_generator_detection(rng: random.Random, budget: Budget) -> List[dict]:
    small = Budget(max_dim=2, deg_lo=budget.deg_lo, deg_hi=budget.deg_hi)
    y = random_complex(rng, small)
    style = rng.randrange(3)
    if style == 0:
        p = random_chain_map(rng, random_complex(rng, small), y)
    elif style == 1:
        p = random_surjection(rng, y, random_complex(rng, small))
    else:
        p = random_surjection(rng, y, random_acyclic(rng, small))
    fib = model.is_fibration(p)
    trivfib = model.is_trivial_fibration(p)
    checks = [
        _check("fibration-detection", model.detects_fibration(p) == fib,
               {"p": serialize.chain_map_to_json(p)} if model.detects_fibration(p) != fib
               else None),
        _check("trivial-fibration-detection",
               model.detects_trivial_fibration(p) == trivfib,
               {"p": serialize.chain_map_to_json(p)}
               if model.detects_trivial_fibration(p) != trivfib else None),
    ]
    return checks


def block_sum_filtered_map(f: FilteredMap, g: FilteredMap) -> FilteredMap:
    src = direct_sum_filtered(f.source, g.source)
    tgt = direct_sum_filtered(f.target, g.target)
    maps = []
    for k in range(src.length + 1):
        maps.append(ChainMap(src.level(k), tgt.level(k),
                             {a: linalg.block_diag([f.level(k).f(a), g.level(k).f(a)])
                              for a in src.level(k).support()}, check=False))
    return FilteredMap(src, tgt, maps, check=False)


def suite_generator_detection_filtered(rng: random.Random, budget: Budget) -> List[dict]:
    small = Budget(max_dim=2, deg_lo=-1, deg_hi=1, length=min(budget.length, 3))
    y = random_filtered(rng, small)
    style = rng.randrange(3)
    if style == 0:
        p = random_filtered_map(rng, random_filtered(rng, small), y)
    else:
        p = random_filtered_fibration(rng, y, trivial=(style == 2))
    fib = is_filtered_fibration(p)
    trivfib = is_filtered_trivial_fibration(p)
    checks = [
        _check("filtered-fibration-detection", detects_filtered_fibration(p) == fib,
               {"p": serialize.filtered_map_to_json(p)}
               if detects_filtered_fibration(p) != fib else None),
        _check("filtered-trivial-fibration-detection",
               detects_filtered_trivial_fibration(p) == trivfib,
               {"p": serialize.filtered_map_to_json(p)}
               if detects_filtered_trivial_fibration(p) != trivfib else None),
    ]
    # weak equivalences: never exactly two of {f, g, g f} levelwise quasi-isos
    x = random_filtered(rng, small)
    z = random_filtered(rng, small)
    fm = random_filtered_map(rng, x, y)
    gm = (FilteredMap.identity(y) if rng.random() < 0.3
          else random_filtered_map(rng, y, z if rng.random() < 0.5 else y))
    trues = sum([is_filtered_weak_equivalence(fm), is_filtered_weak_equivalence(gm),
                 is_filtered_weak_equivalence(gm.compose(fm))])
    checks.append(_check("filtered-two-out-of-three", trues != 2))
    # retract closure through a levelwise block decomposition
    f2 = random_filtered_map(rng, random_filtered(rng, small), random_filtered(rng, small))
    big = block_sum_filtered_map(fm, f2)
    agree = is_filtered_weak_equivalence(big) == (
        is_filtered_weak_equivalence(fm) and is_filtered_weak_equivalence(f2))
    retract_ok = (not is_filtered_weak_equivalence(big)) or is_filtered_weak_equivalence(fm)
    checks.append(_check("filtered-retract-closure", agree and retract_ok))
    return checks


def suite_ext_oracle(rng: random.Random, budget: Budget) -> List[dict]:
    small = Budget(max_dim=3, deg_lo=-2, deg_hi=2)
    m = random_complex(rng, small)
    n = random_complex(rng, small)
    checks = []
    span = (n.hi - m.lo) if (n.dims and m.dims) else 0
    lo_span = (n.lo - m.hi) if (n.dims and m.dims) else 0
    ok = True
    for i in range(lo_span - 1, span + 2):
        if ext_dim(m, n, i) != semisimple_ext_oracle(m, n, i):
            ok = False
            break
    checks.append(_check("ext-equals-oracle", ok,
                         None if ok else {"m": serialize.complex_to_json(m),
                                          "n": serialize.complex_to_json(n), "i": i}))
    s = rng.randint(-2, 2)
    shifted = shift(n, s)
    ok2 = all(pi_dim(m, shifted, i) == ext_dim(m, n, s - i) for i in range(0, 4))
    checks.append(_check("pi-ext-crosswalk", ok2,
                         None if ok2 else {"m": serialize.complex_to_json(m),
                                           "n": serialize.complex_to_json(n), "s": s}))
    f = (random_quasi_iso(rng, small) if rng.random() < 0.5
         else random_chain_map(rng, m, n))
    cone_acyclic = cohomology(cone(f)).total() == 0
    ok3 = cone_acyclic == is_quasi_iso(f)
    checks.append(_check("cone-detects-quasi-iso", ok3,
                         None if ok3 else {"f": serialize.chain_map_to_json(f)}))
    return checks


def random_nonneg_chain_complex(rng: random.Random, max_top: int = 3,
                                max_dim: int = 3) -> Complex:
    """Random chain complex in chain degrees 0..max_top (stored negatively)."""
    top = rng.randint(0, max_top)
    dims = {}
    for nn in range(-top, 1):
        d = rng.randint(0, max_dim)
        if d:
            dims[nn] = d
    if not dims:
        return zero_complex()
    lo, hi = min(dims), max(dims)
    diffs = {}
    kernel = Matrix.identity(dims.get(hi, 0))
    for nn in range(hi - 1, lo - 1, -1):
        rows = dims.get(nn + 1, 0)
        cols = dims.get(nn, 0)
        if rows and cols:
            raw = random_matrix(rng, kernel.cols, cols)
            diffs[nn] = kernel * raw
            kernel = linalg.kernel_basis(diffs[nn])
        else:
            kernel = Matrix.identity(cols)
    return Complex(dims, diffs)


def suite_dold_kan(rng: random.Random, budget: Budget) -> List[dict]:
    v = random_nonneg_chain_complex(rng)
    top = -v.lo if v.dims else 0
    level = top + 2
    checks = []
    try:
        roundtrip_iso(v, level)
        checks.append(_check("roundtrip-isomorphism", True))
    except NotAComplex as exc:
        checks.append(_check("roundtrip-isomorphism", False,
                             {"v": serialize.complex_to_json(v), "error": str(exc)}))
    s = denormalize(v, level)
    checks.append(_check("simplicial-identities", s.simplicial_identities_hold(),
                         None if s.simplicial_identities_hold()
                         else {"v": serialize.complex_to_json(v)}))
    checks.append(_check("binomial-level-dims",
                         s.dims == binomial_level_dims(v, level)))
    nv = normalize(s)
    dims_ok = all(nv.dim(-p) == v.dim(-p) for p in range(level))
    checks.append(_check("normalized-dims-match", dims_ok,
                         None if dims_ok else {"v": serialize.complex_to_json(v)}))
    return checks


def suite_rees_audit(rng: random.Random, budget: Budget) -> List[dict]:
    small = Budget(max_dim=2, deg_lo=-1, deg_hi=1, length=min(budget.length, 3))
    x = random_filtered(rng, small)
    # self-pairs keep the hom spaces nontrivial (the identity is always there)
    y = x if rng.random() < 0.35 else random_filtered(rng, small)
    checks = []
    checks.append(_check("phi-rees-identity", rees_phi_is_identity(x),
                         None if rees_phi_is_identity(x)
                         else {"x": serialize.filtered_to_json(x)}))
    checks.append(_check("rees-torsion-free", is_torsion_free(rees(x))))
    g = random_graded(rng, small)
    tf = is_torsion_free(g)
    iso = graded_iso_to_rees_phi(g)
    checks.append(_check("essential-image", iso == tf,
                         None if iso == tf else {"g": serialize.graded_to_json(g)}))
    p = random_filtered_fibration(rng, y, trivial=False)
    checks.append(_check("fibration-preservation",
                         is_filtered_fibration(p) and graded_is_fibration(rees_map(p))))
    hom_graded = len(graded_hom_weight0(rees(x), rees(y)))
    hom_filtered = filtered_chain_map_count(x, y)
    checks.append(_check("hom-bijection", hom_graded == hom_filtered,
                         None if hom_graded == hom_filtered
                         else {"x": serialize.filtered_to_json(x),
                               "y": serialize.filtered_to_json(y),
                               "graded": hom_graded, "filtered": hom_filtered}))
    gx, gy = rees(x), rees(y)
    ok_ext = all(graded_ext_weight0_dim(gx, gy, i) == filtered_ext_dim(x, y, i)
                 for i in range(-2, 3))
    checks.append(_check("ext-comparison", ok_ext,
                         None if ok_ext else {"x": serialize.filtered_to_json(x),
                                              "y": serialize.filtered_to_json(y)}))
    f = random_filtered_map(rng, x, y)
    gmap = rees_map(f)
    weightwise = all(is_quasi_iso(gmap.weight(w)) for w in range(gmap.source.top_weight + 1))
    checks.append(_check("weak-equivalence-transparency",
                         is_filtered_weak_equivalence(f) == weightwise))
    return checks


def suite_contracting_homotopy(rng: random.Random, budget: Budget) -> List[dict]:
    small = Budget(max_dim=2, deg_lo=-2, deg_hi=2)
    k = random_acyclic(rng, small, max_mult=2)
    checks = []
    try:
        h = model.contracting_homotopy(k)
        ok = True
        for n in k.support():
            hn = h.get(n, Matrix.zero(k.dim(n - 1), k.dim(n)))
            hn1 = h.get(n + 1, Matrix.zero(k.dim(n), k.dim(n + 1)))
            if k.d(n - 1) * hn + hn1 * k.d(n) != Matrix.identity(k.dim(n)):
                ok = False
        checks.append(_check("dh-plus-hd-identity", ok,
                             None if ok else {"k": serialize.complex_to_json(k)}))
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        checks.append(_check("dh-plus-hd-identity", False,
                             {"k": serialize.complex_to_json(k), "error": str(exc)}))
    theta = random_quasi_iso(rng, small)
    c = random_complex(rng, small)
    obs = model.obstruction_group(theta, c)
    checks.append(_check("obstruction-vanishes", obs == 0,
                         None if obs == 0 else
                         {"theta": serialize.chain_map_to_json(theta),
                          "c": serialize.complex_to_json(c), "dim": obs}))
    return checks


def random_subspace(rng: random.Random, dim: int, count: int) -> Matrix:
    cols = [Matrix(dim, 1, [[rng.choice(ENTRY_POOL)] for _ in range(dim)])
            for _ in range(count)]
    if not cols:
        return Matrix.zero(dim, 0)
    return linalg.column_space(linalg.hstack(cols))


def suite_grassmann(rng: random.Random, budget: Budget) -> List[dict]:
    checks = []
    dim_v = rng.randint(1, 4)
    v = sphere(0, dim_v)
    sub_basis = random_subspace(rng, dim_v, rng.randint(0, dim_v))
    u = sphere(0, sub_basis.cols) if sub_basis.cols else zero_complex()
    small = Budget(max_dim=2, deg_lo=-1, deg_hi=1)
    k = random_acyclic(rng, small, max_mult=1)
    w = direct_sum(v, k)
    incl_w = ChainMap(u, w, {0: linalg.vstack([sub_basis, Matrix.zero(k.dim(0),
                                                                      sub_basis.cols)])}
                      if sub_basis.cols else {}, check=False)
    phi_w = ChainMap(w, v, {n: linalg.hstack([Matrix.identity(v.dim(n)),
                                              Matrix.zero(v.dim(n), k.dim(n))])
                            for n in w.support()}, check=False)
    point = GrassPoint(ambient=v, sub=u, incl=incl_w, total=w, phi=phi_w)
    ok, _problems = validate_grass_point(point)
    checks.append(_check("constructed-point-valid", ok))
    if ok:
        s = shadow_grass(point)
        recovers = (s.dim(0) == sub_basis.cols and
                    (not sub_basis.cols or linalg.same_span(s.basis[0], sub_basis)))
        checks.append(_check("shadow-recovers-subspace", recovers,
                             None if recovers
                             else {"point": serialize.grass_point_to_json(point)}))
        # quasi-isomorphic enlargement must give the same shadow
        k2 = random_acyclic(rng, small, max_mult=1)
        w2 = direct_sum(w, k2)
        alpha = random_automorphism(rng, w2)
        psi = ChainMap(w, w2, {n: linalg.vstack([Matrix.identity(w.dim(n)),
                                                 Matrix.zero(k2.dim(n), w.dim(n))])
                               for n in w.support()}, check=False)
        comparison = alpha.compose(psi)
        incl2 = comparison.compose(incl_w)
        phi2 = phi_w.compose(ChainMap(w2, w, {n: linalg.hstack(
            [Matrix.identity(w.dim(n)), Matrix.zero(w.dim(n), k2.dim(n))])
            for n in w2.support()}, check=False)).compose(inverse_chain_map(alpha))
        point2 = GrassPoint(ambient=v, sub=u, incl=incl2, total=w2, phi=phi2)
        ok2, _ = validate_grass_point(point2)
        same = ok2 and shadow_grass(point2).same_subspaces(s)
        checks.append(_check("quasi-isomorphic-points-same-shadow", same,
                             None if same
                             else {"point": serialize.grass_point_to_json(point2)}))
    # flag: nested 2-step filtration
    inner_basis = random_subspace(rng, sub_basis.cols, rng.randint(0, sub_basis.cols)) \
        if sub_basis.cols else Matrix.zero(0, 0)
    levels = [v]
    incls = []
    if sub_basis.cols:
        lvl1 = sphere(0, sub_basis.cols)
        levels.append(lvl1)
        incls.append(ChainMap(lvl1, v, {0: sub_basis}, check=False))
        if inner_basis.cols:
            lvl2 = sphere(0, inner_basis.cols)
            levels.append(lvl2)
            incls.append(ChainMap(lvl2, lvl1, {0: inner_basis}, check=False))
        else:
            levels.append(zero_complex())
            incls.append(ChainMap.zero(zero_complex(), lvl1))
    else:
        levels.append(zero_complex())
        incls.append(ChainMap.zero(zero_complex(), v))
    levels.append(zero_complex())
    incls.append(ChainMap.zero(zero_complex(), levels[-2]))
    filtered_w = FilteredComplex(levels, incls)
    fp = FlagPoint(ambient=v, total=filtered_w, phi=ChainMap.identity(v))
    shadows = shadow_flag(fp)
    nested = all(shadows[j].contains(shadows[j + 1]) for j in range(len(shadows) - 1))
    bounded = all(0 <= sh.dim(0) <= dim_v for sh in shadows)
    checks.append(_check("flag-shadows-nested", nested and bounded,
                         None if nested and bounded
                         else {"point": serialize.flag_point_to_json(fp)}))
    return checks


SUITES: Dict[str, Callable[[random.Random, Budget], List[dict]]] = {
    "model-axioms": suite_model_axioms,
    "generator-detection": suite_generator_detection,
    "generator-detection-filtered": suite_generator_detection_filtered,
    "ext-oracle": suite_ext_oracle,
    "dold-kan-roundtrip": suite_dold_kan,
    "rees-audit": suite_rees_audit,
    "contracting-homotopy": suite_contracting_homotopy,
    "grassmann-shadows": suite_grassmann,
}


def run_suite(name: str, seed: int, count: int, budget: Optional[Budget] = None) -> dict:
    """Run a registered suite over seeded instances; report sorted by index."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {sorted(SUITES)}")
    budget = budget or Budget()
    fn = SUITES[name]
    instances = []
    failures = 0
    for idx in range(count):
        rng = instance_rng(seed, idx)
        checks = fn(rng, budget)
        bad = [c for c in checks if not c["ok"]]
        failures += len(bad)
        instances.append({"index": idx, "checks": checks})
    return {
        "suite": name,
        "seed": seed,
        "count": count,
        "budget": asdict(budget),
        "instances": instances,
        "failures": failures,
        "ok": failures == 0,
    }
