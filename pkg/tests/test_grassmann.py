import pytest

from dgkit.complexes import ChainMap, Complex, direct_sum, disk, sphere, zero_complex
from dgkit.errors import InvalidPoint
from dgkit.filtered import FilteredComplex, trivial_filtration
from dgkit.grassmann import (
    FlagPoint,
    GrassPoint,
    Shadow,
    shadow_flag,
    shadow_grass,
    validate_flag_point,
    validate_grass_point,
)
from dgkit.linalg import Matrix


def M(rows):
    return Matrix.from_rows(rows)


def line_in_plane_point():
    """V = Q^2 in degree 0, W = V, U = span(e1), phi = id."""
    v = sphere(0, 2)
    u = sphere(0)
    incl = ChainMap(u, v, {0: M([[1], [0]])})
    return GrassPoint(ambient=v, sub=u, incl=incl, total=v, phi=ChainMap.identity(v))


def acyclic_ambient_point():
    """V = D(0), W = D(0), U = 0, phi = id."""
    v = disk(0)
    u = zero_complex()
    return GrassPoint(ambient=v, sub=u, incl=ChainMap.zero(u, v), total=v,
                      phi=ChainMap.identity(v))


def broken_h1_point():
    """V = S(0), W = S(0) + D(0), U = the degree-1 line of the disk summand."""
    v = sphere(0)
    w = direct_sum(sphere(0), disk(0))
    u = sphere(1)
    incl = ChainMap(u, w, {1: M([[1]])})
    phi = ChainMap(w, v, {0: M([[1, 0]])})
    return GrassPoint(ambient=v, sub=u, incl=incl, total=w, phi=phi)


class TestValidity:
    def test_line_in_plane_valid(self):
        ok, problems = validate_grass_point(line_in_plane_point())
        assert ok and not problems

    def test_acyclic_ambient_valid(self):
        ok, problems = validate_grass_point(acyclic_ambient_point())
        assert ok

    def test_degree_one_leak_invalid(self):
        ok, problems = validate_grass_point(broken_h1_point())
        assert not ok
        assert any("injective" in msg for msg in problems)

    def test_non_quasi_iso_reported(self):
        v = sphere(0, 2)
        u = sphere(0)
        incl = ChainMap(u, u, {0: M([[1]])})
        p = GrassPoint(ambient=v, sub=u, incl=incl, total=u,
                       phi=ChainMap(u, v, {0: M([[1], [0]])}))
        ok, problems = validate_grass_point(p)
        assert not ok
        assert any("quasi-isomorphism" in msg for msg in problems)


class TestShadow:
    def test_line_shadow(self):
        s = shadow_grass(line_in_plane_point())
        assert s.dims() == {0: 1}
        assert s.ambient_h_dims == {0: 2}

    def test_acyclic_shadow_empty(self):
        s = shadow_grass(acyclic_ambient_point())
        assert s.dims() == {}

    def test_full_point(self):
        v = direct_sum(sphere(0, 2), sphere(1))
        p = GrassPoint(ambient=v, sub=v, incl=ChainMap.identity(v), total=v,
                       phi=ChainMap.identity(v))
        s = shadow_grass(p)
        assert s.dims() == {0: 2, 1: 1}

    def test_invalid_point_raises(self):
        with pytest.raises(InvalidPoint):
            shadow_grass(broken_h1_point())

    def test_shadow_bounded_by_ambient(self):
        s = shadow_grass(line_in_plane_point())
        for i, d in s.dims().items():
            assert 0 <= d <= s.ambient_h_dims[i]

    def test_quasi_isomorphic_points_same_shadow(self):
        # same U, but W enlarged by an acyclic summand
        v = sphere(0, 2)
        u = sphere(0)
        w2 = direct_sum(v, disk(1))
        incl1 = ChainMap(u, v, {0: M([[1], [0]])})
        incl2 = ChainMap(u, w2, {0: M([[1], [0]])})
        phi2 = ChainMap(w2, v, {0: Matrix.identity(2)})
        p1 = line_in_plane_point()
        p2 = GrassPoint(ambient=v, sub=u, incl=incl2, total=w2, phi=phi2)
        s1, s2 = shadow_grass(p1), shadow_grass(p2)
        assert s1.same_subspaces(s2)
        # and a genuinely different line is distinguished
        incl3 = ChainMap(u, v, {0: M([[0], [1]])})
        p3 = GrassPoint(ambient=v, sub=u, incl=incl3, total=v, phi=ChainMap.identity(v))
        assert not s1.same_subspaces(shadow_grass(p3))


class TestFlag:
    def flag_point(self):
        """2-step filtration on V = Q^3 in degree 0 with F^1 a line."""
        v = sphere(0, 3)
        line = sphere(0)
        incl = ChainMap(line, v, {0: M([[1], [0], [0]])})
        zc = zero_complex()
        filtered = FilteredComplex([v, line, zc],
                                   [incl, ChainMap.zero(zc, line)])
        return FlagPoint(ambient=v, total=filtered, phi=ChainMap.identity(v))

    def test_trivial_filtration_full_chain(self):
        v = sphere(0, 2)
        p = FlagPoint(ambient=v, total=trivial_filtration(v, 1), phi=ChainMap.identity(v))
        ok, _ = validate_flag_point(p)
        assert ok
        shadows = shadow_flag(p)
        assert shadows[0].dims() == {0: 2}
        assert shadows[1].dims() == {}

    def test_nested_line(self):
        p = self.flag_point()
        ok, _ = validate_flag_point(p)
        assert ok
        shadows = shadow_flag(p)
        assert shadows[0].dims() == {0: 3}
        assert shadows[1].dims() == {0: 1}
        assert shadows[0].contains(shadows[1])

    def test_non_injective_level_invalid(self):
        # F^1 = D(0) mapping into V = D(0): H is zero everywhere, but make
        # the level map kill cohomology of a sphere level instead
        v = sphere(0)
        w = direct_sum(sphere(0), disk(0))
        lvl = sphere(1)
        incl = ChainMap(lvl, w, {1: M([[1]])})
        zc = zero_complex()
        filtered = FilteredComplex([w, lvl, zc], [incl, ChainMap.zero(zc, lvl)])
        phi = ChainMap(w, v, {0: M([[1, 0]])})
        p = FlagPoint(ambient=v, total=filtered, phi=phi)
        ok, problems = validate_flag_point(p)
        assert not ok
        with pytest.raises(InvalidPoint):
            shadow_flag(p)
