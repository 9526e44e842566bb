from fractions import Fraction as Q

import pytest

from dgkit import model
from dgkit.complexes import (
    ChainMap,
    Complex,
    cohomology,
    direct_sum,
    disk,
    is_quasi_iso,
    make_complex,
    sphere,
    zero_complex,
)
from dgkit.errors import NonCommutingSquare, NotAcyclic
from dgkit.linalg import Matrix


def M(rows):
    return Matrix.from_rows(rows)


def incl_sphere_in_disk(n):
    """S(n+1) -> D(n), the generating cofibration."""
    return ChainMap(sphere(n + 1), disk(n), {n + 1: M([[1]])})


def disk_onto_sphere(n):
    """D(n) -> S(n), identity in degree n."""
    return ChainMap(disk(n), sphere(n), {n: M([[1]])})


class TestFibrations:
    def test_to_zero(self):
        m = direct_sum(sphere(0), disk(1))
        assert model.is_fibration(ChainMap.zero(m, zero_complex()))

    def test_disk_onto_sphere(self):
        assert model.is_fibration(disk_onto_sphere(0))

    def test_sphere_into_disk_not_fibration(self):
        p = ChainMap(sphere(1), disk(0), {1: M([[1]])})
        assert not model.is_fibration(p)

    def test_trivial_fibration_identity(self):
        assert model.is_trivial_fibration(ChainMap.identity(disk(0)))

    def test_disk_to_zero_trivial(self):
        assert model.is_trivial_fibration(ChainMap.zero(disk(0), zero_complex()))

    def test_disk_onto_sphere_not_trivial(self):
        p = disk_onto_sphere(0)
        assert model.is_fibration(p)
        assert not model.is_trivial_fibration(p)
        k, _ = model.kernel_complex(p)
        assert k == sphere(1)


class TestCofibrations:
    def test_zero_to_disk_trivial(self):
        i = ChainMap.zero(zero_complex(), disk(0))
        assert model.is_cofibration(i)
        assert model.is_trivial_cofibration(i)

    def test_generating_cofibration_not_trivial(self):
        i = incl_sphere_in_disk(0)
        assert model.is_cofibration(i)
        c, _ = model.cokernel_complex(i)
        assert cohomology(c).dims == {0: 1}
        assert not model.is_trivial_cofibration(i)

    def test_non_injective(self):
        i = ChainMap.zero(sphere(0), sphere(1))
        assert not model.is_cofibration(i)


class TestLiftSquare:
    def test_identity_i(self):
        m = disk(0)
        i = ChainMap.identity(m)
        p = disk_onto_sphere(0)
        f = ChainMap(m, m, {0: M([[1]]), 1: M([[1]])})
        g = p.compose(f)
        h = model.lift_square(i, p, f, g)
        assert h is not None
        assert h.compose(i) == f
        assert p.compose(h) == g

    def test_two_unknown_system_inconsistent(self):
        # i: S(1) -> D(0), p: D(0) -> S(0), f the canonical inclusion, g = 0
        i = incl_sphere_in_disk(0)
        p = disk_onto_sphere(0)
        f = ChainMap(sphere(1), disk(0), {1: M([[1]])})
        g = ChainMap.zero(disk(0), sphere(0))
        assert model.lift_square(i, p, f, g) is None

    def test_same_square_with_identity_bottom(self):
        i = incl_sphere_in_disk(0)
        p = disk_onto_sphere(0)
        f = ChainMap(sphere(1), disk(0), {1: M([[1]])})
        g = ChainMap(disk(0), sphere(0), {0: M([[1]])})
        h = model.lift_square(i, p, f, g)
        assert h is not None
        assert h == ChainMap.identity(disk(0))

    def test_non_commuting_rejected(self):
        s = sphere(0)
        i = ChainMap.identity(s)
        p = disk_onto_sphere(0)
        f = ChainMap.zero(s, disk(0))
        g = ChainMap.identity(s)
        # g i = id but p f = 0
        with pytest.raises(NonCommutingSquare):
            model.lift_square(i, p, f, g)


class TestContractingHomotopy:
    def test_disk_forced(self):
        h = model.contracting_homotopy(disk(2))
        assert h[3] == Matrix.identity(1)

    def test_zero_complex(self):
        assert model.contracting_homotopy(zero_complex()) == {}

    def test_disk_sum(self):
        k = direct_sum(disk(0), disk(2))
        h = model.contracting_homotopy(k)
        for n in k.support():
            hn = h.get(n, Matrix.zero(k.dim(n - 1), k.dim(n)))
            hn1 = h.get(n + 1, Matrix.zero(k.dim(n), k.dim(n + 1)))
            assert k.d(n - 1) * hn + hn1 * k.d(n) == Matrix.identity(k.dim(n))

    def test_not_acyclic(self):
        with pytest.raises(NotAcyclic):
            model.contracting_homotopy(sphere(0))


class TestFactorizations:
    def test_zero_to_sphere_through_disk(self):
        f = ChainMap.zero(zero_complex(), sphere(0))
        i, p = model.factor_trivcof_fib(f)
        assert i.target == disk(0)
        assert model.is_trivial_cofibration(i)
        assert model.is_fibration(p)
        assert p.compose(i) == f

    def test_identity_factorization(self):
        m = make_complex({0: 2, 1: 1}, {0: M([[1, 0]])})
        f = ChainMap.identity(m)
        i, p = model.factor_trivcof_fib(f)
        assert model.is_trivial_cofibration(i)
        assert model.is_fibration(p)
        assert p.compose(i) == f

    def test_to_zero_factorization(self):
        m = disk(0)
        f = ChainMap.zero(m, zero_complex())
        i, p = model.factor_trivcof_fib(f)
        assert p.compose(i) == f
        assert model.is_trivial_cofibration(i)
        assert model.is_fibration(p)

    def test_cylinder_identity(self):
        m = make_complex({0: 1, 1: 1}, {0: M([[3]])})
        f = ChainMap.identity(m)
        i, p = model.factor_cof_trivfib(f)
        assert model.is_cofibration(i)
        assert model.is_trivial_fibration(p)
        assert p.compose(i) == f

    def test_cylinder_from_zero(self):
        f = ChainMap.zero(zero_complex(), sphere(0))
        i, p = model.factor_cof_trivfib(f)
        assert p.compose(i) == f
        assert i.target == sphere(0)

    def test_cylinder_general(self):
        m = disk(0)
        n = sphere(0)
        f = disk_onto_sphere(0)
        i, p = model.factor_cof_trivfib(f)
        assert model.is_cofibration(i)
        assert model.is_trivial_fibration(p)
        assert p.compose(i) == f


class TestObstruction:
    def test_identity_vanishes(self):
        s = direct_sum(sphere(0), sphere(2))
        assert model.obstruction_group(ChainMap.identity(s), sphere(2)) == 0

    def test_zero_map_example(self):
        theta = ChainMap.zero(sphere(0), sphere(0))
        assert model.obstruction_group(theta, sphere(2)) == 1

    def test_quasi_iso_vanishes(self):
        s = sphere(0)
        src = direct_sum(s, disk(0))
        theta = ChainMap(src, s, {0: M([[1, 1]])})
        assert is_quasi_iso(theta)
        c = direct_sum(sphere(1), sphere(2), disk(0))
        assert model.obstruction_group(theta, c) == 0


class TestGeneratorDetection:
    def test_fibration_detection_matches(self):
        candidates = [
            disk_onto_sphere(0),
            ChainMap(sphere(1), disk(0), {1: M([[1]])}),
            ChainMap.identity(disk(0)),
            ChainMap.zero(direct_sum(sphere(0), disk(1)), sphere(0)),
            ChainMap(direct_sum(sphere(0), disk(0)), sphere(0), {0: M([[1, 1]])}),
        ]
        for p in candidates:
            assert model.detects_fibration(p) == model.is_fibration(p)

    def test_trivial_fibration_detection_matches(self):
        candidates = [
            disk_onto_sphere(0),
            ChainMap.identity(disk(0)),
            ChainMap.zero(disk(0), zero_complex()),
            ChainMap.zero(sphere(0), zero_complex()),
            ChainMap(direct_sum(sphere(0), disk(0)), sphere(0), {0: M([[1, 1]])}),
        ]
        for p in candidates:
            assert model.detects_trivial_fibration(p) == model.is_trivial_fibration(p)
