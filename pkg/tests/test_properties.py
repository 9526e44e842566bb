"""Hypothesis-driven invariants over small random complexes."""

from fractions import Fraction as Q

from hypothesis import given, settings
from hypothesis import strategies as st

from dgkit import linalg
from dgkit.complexes import (
    ChainMap,
    Complex,
    cohomology,
    cone,
    ext_dim,
    hom_complex,
    is_quasi_iso,
    semisimple_ext_oracle,
    shift,
    suspension,
)
from dgkit.harness import chain_map_basis
from dgkit.linalg import Matrix

entries = st.integers(min_value=-2, max_value=2).map(Q)


@st.composite
def complexes(draw, max_dim=3, lo=-2, hi=2):
    """Valid complex built degreewise: d = (kernel basis) . (random)."""
    span_lo = draw(st.integers(min_value=lo, max_value=hi))
    span_hi = draw(st.integers(min_value=span_lo, max_value=hi))
    dims = {}
    for n in range(span_lo, span_hi + 1):
        d = draw(st.integers(min_value=0, max_value=max_dim))
        if d:
            dims[n] = d
    if not dims:
        return Complex({})
    top = max(dims)
    diffs = {}
    kernel = Matrix.identity(dims.get(top, 0))
    for n in range(top - 1, min(dims) - 1, -1):
        rows, cols = dims.get(n + 1, 0), dims.get(n, 0)
        if rows and cols:
            raw = draw(st.lists(st.lists(entries, min_size=cols, max_size=cols),
                                min_size=kernel.cols, max_size=kernel.cols))
            diffs[n] = kernel * Matrix(kernel.cols, cols, raw)
            kernel = linalg.kernel_basis(diffs[n])
        else:
            kernel = Matrix.identity(cols)
    return Complex(dims, diffs)


def _draw_map(draw, src, tgt):
    basis = chain_map_basis(src, tgt)
    degrees = [a for a in sorted(set(src.dims) | set(tgt.dims))
               if src.dim(a) and tgt.dim(a)]
    acc = {a: Matrix.zero(tgt.dim(a), src.dim(a)) for a in degrees}
    for fam in basis:
        c = draw(st.integers(min_value=-2, max_value=2))
        if c:
            for a, mat in fam.items():
                acc[a] = acc[a] + mat.scale(c)
    return ChainMap(src, tgt, acc, check=False)


@st.composite
def chain_maps(draw, max_dim=2):
    src = draw(complexes(max_dim=max_dim))
    tgt = draw(complexes(max_dim=max_dim))
    return _draw_map(draw, src, tgt)


@st.composite
def composable_pairs(draw, max_dim=2):
    src = draw(complexes(max_dim=max_dim))
    mid = draw(complexes(max_dim=max_dim))
    tgt = draw(complexes(max_dim=max_dim))
    return _draw_map(draw, src, mid), _draw_map(draw, mid, tgt)


class TestComplexInvariants:
    @given(complexes(), st.integers(min_value=-2, max_value=2))
    @settings(max_examples=40, deadline=None)
    def test_shift_reindexes_cohomology(self, m, k):
        h = cohomology(m)
        hs = cohomology(shift(m, k))
        for n in range(-6, 7):
            assert hs.dim(n) == h.dim(n + k)

    @given(complexes())
    @settings(max_examples=30, deadline=None)
    def test_suspension_is_valid_and_shifts(self, m):
        s = suspension(m)
        h = cohomology(m)
        hs = cohomology(s)
        for n in range(-6, 7):
            assert hs.dim(n) == h.dim(n + 1)

    @given(chain_maps())
    @settings(max_examples=30, deadline=None)
    def test_cone_acyclic_iff_quasi_iso(self, f):
        assert (cohomology(cone(f)).total() == 0) == is_quasi_iso(f)

    @given(complexes(max_dim=2), complexes(max_dim=2))
    @settings(max_examples=25, deadline=None)
    def test_ext_matches_semisimple_oracle(self, m, n):
        span = range(-5, 6)
        for i in span:
            assert ext_dim(m, n, i) == semisimple_ext_oracle(m, n, i)

    @given(complexes(max_dim=2), complexes(max_dim=2))
    @settings(max_examples=20, deadline=None)
    def test_hom_zero_cycles_are_chain_maps(self, m, n):
        h = hom_complex(m, n)
        if not h.dim(0):
            return
        z = linalg.kernel_basis(h.d(0))
        assert z.cols == len(chain_map_basis(m, n))

    @given(composable_pairs())
    @settings(max_examples=25, deadline=None)
    def test_two_out_of_three_never_exactly_two(self, pair):
        f, g = pair
        trues = sum([is_quasi_iso(f), is_quasi_iso(g), is_quasi_iso(g.compose(f))])
        assert trues != 2
