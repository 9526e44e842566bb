import pytest

from dgkit import serialize
from dgkit.complexes import cohomology, is_quasi_iso, zero_complex
from dgkit.errors import UnknownSuite
from dgkit.harness import (
    Budget,
    chain_map_basis,
    instance_rng,
    random_acyclic,
    random_automorphism,
    random_chain_map,
    random_complex,
    random_filtered,
    random_filtered_fibration,
    random_filtered_map,
    random_graded,
    random_injection,
    random_quasi_iso,
    random_surjection,
    run_suite,
)
from dgkit.filtered import is_filtered_fibration, is_filtered_trivial_fibration
from dgkit.model import is_cofibration, is_trivial_fibration


class TestGenerators:
    def test_zero_budget_gives_zero_complex(self):
        rng = instance_rng(1, 0)
        c = random_complex(rng, Budget(max_dim=0))
        assert c.is_zero()

    def test_determinism(self):
        for idx in range(5):
            a = random_complex(instance_rng(7, idx), Budget())
            b = random_complex(instance_rng(7, idx), Budget())
            assert a == b

    def test_distinct_streams(self):
        outs = {repr(random_complex(instance_rng(7, i), Budget())) for i in range(8)}
        assert len(outs) > 1

    def test_random_complex_valid(self):
        for idx in range(10):
            random_complex(instance_rng(3, idx), Budget())  # constructor validates

    def test_random_chain_map_commutes(self):
        rng = instance_rng(5, 1)
        b = Budget(max_dim=3)
        src, tgt = random_complex(rng, b), random_complex(rng, b)
        f = random_chain_map(rng, src, tgt)
        from dgkit.complexes import ChainMap

        ChainMap(src, tgt, f.maps)  # validates the chain condition

    def test_automorphism_invertible(self):
        rng = instance_rng(11, 2)
        c = random_complex(rng, Budget(max_dim=3))
        a = random_automorphism(rng, c)
        from dgkit import linalg

        for n in c.support():
            assert linalg.rank(a.f(n)) == c.dim(n)

    def test_acyclic_is_acyclic(self):
        for idx in range(8):
            k = random_acyclic(instance_rng(13, idx), Budget())
            assert cohomology(k).total() == 0

    def test_quasi_iso_is_quasi_iso(self):
        for idx in range(6):
            f = random_quasi_iso(instance_rng(17, idx), Budget(max_dim=2))
            assert is_quasi_iso(f)

    def test_surjection_and_injection(self):
        rng = instance_rng(19, 3)
        b = Budget(max_dim=2)
        y = random_complex(rng, b)
        p = random_surjection(rng, y, random_acyclic(rng, b))
        assert is_trivial_fibration(p)
        i = random_injection(rng, random_complex(rng, b), random_complex(rng, b))
        assert is_cofibration(i)

    def test_random_filtered_invariants(self):
        for idx in range(6):
            f = random_filtered(instance_rng(23, idx), Budget(max_dim=3, length=3))
            assert f.level(f.length).is_zero()
            for k in range(f.length):
                assert f.inclusion(k).is_injective()

    def test_filtered_fibration_construction(self):
        rng = instance_rng(29, 0)
        small = Budget(max_dim=2, deg_lo=-1, deg_hi=1, length=3)
        y = random_filtered(rng, small)
        p = random_filtered_fibration(rng, y, trivial=False)
        assert is_filtered_fibration(p)
        p2 = random_filtered_fibration(rng, y, trivial=True)
        assert is_filtered_trivial_fibration(p2)

    def test_graded_generation(self):
        for idx in range(5):
            random_graded(instance_rng(31, idx), Budget(max_dim=2, length=3))


class TestRunSuite:
    def test_unknown_suite(self):
        with pytest.raises(UnknownSuite):
            run_suite("not-a-suite", 1, 1)

    def test_zero_count_vacuous(self):
        r = run_suite("model-axioms", 42, 0)
        assert r["ok"] and r["failures"] == 0 and r["instances"] == []

    def test_reports_bitwise_identical(self):
        a = run_suite("dold-kan-roundtrip", 42, 6)
        b = run_suite("dold-kan-roundtrip", 42, 6)
        assert serialize.dumps(a) == serialize.dumps(b)

    def test_report_shape(self):
        r = run_suite("contracting-homotopy", 1, 3)
        assert r["suite"] == "contracting-homotopy"
        assert [inst["index"] for inst in r["instances"]] == [0, 1, 2]
        for inst in r["instances"]:
            for check in inst["checks"]:
                assert set(check) >= {"name", "ok"}
