"""Factor rings by excluded minors: ideals, bases, and normality."""

import itertools
import os

import pytest

from qdet import cache
from qdet.algebra import MatrixShape, NCPoly, graded_dim
from qdet.errors import NoScalarFound, NotAboveGamma, ShapeMismatch
from qdet.factor import (IdealComponent, StandardMonomial, basis_check,
                         generator_image_check, generator_image_suite,
                         hilbert_check, hilbert_function, ideal_component,
                         normality_check, normality_scalar, quotient_equal,
                         quotient_is_zero, regularity_check, spans_clear,
                         standard_monomial_count, standard_monomials,
                         tower_image_check, zero_divisor_check)
from qdet.linalg import component_basis
from qdet.minors import Minor, enumerate_minors, minor_value, std_le
from qdet.scalars import (LaurentScalar, RationalScalar, ONE, Q, RAT_ONE)


@pytest.fixture
def g11(shape22):
    return Minor(shape22, (1,), (1,))


@pytest.fixture
def g1312(shape33):
    return Minor(shape33, (1, 3), (1, 2))


class TestIdealComponents:
    def test_ranks_for_corner_variable(self, g11):
        assert [ideal_component(g11, d).rank for d in range(5)] == \
            [0, 0, 1, 4, 10]

    def test_degree_two_is_the_determinant_line(self, g11, shape22):
        ic = ideal_component(g11, 2)
        dq = minor_value(Minor(shape22, (1, 2), (1, 2)))
        assert ic.contains(dq)
        assert ic.contains(dq.scale(Q - 1))
        x11x22 = NCPoly.generator(shape22, 1, 1) * NCPoly.generator(shape22, 2, 2)
        assert not ic.contains(x11x22)
        assert ic.reduce(dq).is_zero
        assert not ic.reduce(x11x22).is_zero

    def test_row_polys_lie_in_the_ideal(self, g1312):
        ic = ideal_component(g1312, 3)
        assert ic.rank > 0
        for p in ic.row_polys():
            assert quotient_is_zero(g1312, p)


class TestQuotient:
    def test_relations_modulo_corner(self, g11, shape22):
        x = lambda i, j: NCPoly.generator(shape22, i, j)
        assert quotient_is_zero(g11, NCPoly.zero(shape22))
        assert quotient_equal(g11, x(1, 1) * x(2, 2), (x(1, 2) * x(2, 1)).scale(Q))
        assert not quotient_is_zero(g11, x(1, 1))
        # mixed degrees are handled component by component
        dq = minor_value(Minor(shape22, (1, 2), (1, 2)))
        assert quotient_is_zero(g11, dq + x(1, 1) * dq)
        assert not quotient_is_zero(g11, dq + x(1, 1))

    def test_shape_guard(self, g11, shape33):
        with pytest.raises(ShapeMismatch):
            quotient_is_zero(g11, NCPoly.one(shape33))

    def test_hilbert_functions(self, g11, shape22):
        assert hilbert_function(g11, 4) == [1, 4, 9, 16, 25]
        # the full minor excludes nothing: the quotient is the whole ring
        full = Minor(shape22, (1, 2), (1, 2))
        assert hilbert_function(full, 3) == \
            [graded_dim(shape22, d) for d in range(4)]
        # the largest corner leaves a single variable
        last = Minor(shape22, (2,), (2,))
        assert hilbert_function(last, 3) == [1, 1, 1, 1]

    def test_hilbert_check_passes(self, g11, g1312):
        assert hilbert_check(g11, 3).passed
        assert hilbert_check(g1312, 3).passed


def brute_chains(shape, degree, floor=None):
    """Exhaustive filter over raw factor tuples, as an oracle."""
    pool = [mn for mn in enumerate_minors(shape)
            if floor is None or std_le(floor, mn)]
    found = set()
    for length in range(degree + 1):
        for tup in itertools.product(pool, repeat=length):
            if sum(f.size for f in tup) != degree:
                continue
            if all(std_le(a, b) for a, b in zip(tup, tup[1:])):
                found.add(tup)
    return found


class TestStandardMonomials:
    def test_container(self, shape22):
        one = StandardMonomial(shape22, ())
        assert one.degree == 0 and str(one) == "1"
        assert one.value() == NCPoly.one(shape22)
        pair = StandardMonomial(shape22, (Minor(shape22, (1,), (1,)),
                                          Minor(shape22, (2,), (2,))))
        assert str(pair) == "[1|1][2|2]"
        assert pair.degree == 2

    def test_against_exhaustive_oracle(self, shape22, shape33, g11, g1312):
        cases = [(shape22, 2, None), (shape22, 3, None), (shape22, 2, g11),
                 (shape22, 3, g11), (shape33, 2, None), (shape33, 2, g1312)]
        for shape, degree, floor in cases:
            got = {s.factors for s in standard_monomials(shape, degree, floor)}
            assert got == brute_chains(shape, degree, floor)

    def test_counts(self, shape22, g11):
        assert standard_monomial_count(shape22, 2) == 10
        assert standard_monomial_count(shape22, 2, floor=g11) == 9
        assert [standard_monomial_count(shape22, d, floor=g11)
                for d in range(5)] == [1, 4, 9, 16, 25]

    def test_chains_are_nondecreasing(self, shape33):
        for s in standard_monomials(shape33, 3):
            for a, b in zip(s.factors, s.factors[1:]):
                assert std_le(a, b)


class TestBasisChecks:
    def test_full_ring(self, shape22, shape33):
        for d in range(5):
            assert basis_check(shape22, d).passed
        for d in range(3):
            assert basis_check(shape33, d).passed

    def test_quotient_bases(self, g11, g1312):
        for d in range(5):
            assert basis_check(g11.shape, d, gamma=g11).passed
        for d in range(4):
            assert basis_check(g1312.shape, d, gamma=g1312).passed

    def test_shape_guard(self, shape33, g11):
        with pytest.raises(ShapeMismatch):
            basis_check(shape33, 2, gamma=g11)


class TestNormalityScalars:
    def test_corner_values(self, g11, shape22):
        want = {(1, 1): RAT_ONE,
                (1, 2): RationalScalar.from_laurent(Q),
                (2, 1): RationalScalar.from_laurent(Q),
                (2, 2): RationalScalar.from_laurent(Q ** 2)}
        for (i, j), c in want.items():
            assert normality_scalar(g11, Minor(shape22, (i,), (j,))) == c

    def test_not_above(self, g11, shape22):
        with pytest.raises(NotAboveGamma):
            normality_scalar(g11, Minor(shape22, (1, 2), (1, 2)))

    def test_shape_guard(self, g11, shape33):
        with pytest.raises(ShapeMismatch):
            normality_scalar(g11, Minor(shape33, (1,), (1,)))

    def test_reports_pass(self, g11, g1312):
        assert normality_check(g11).passed
        rep = normality_check(g1312)
        assert rep.passed
        # every minor above gamma received a scalar
        above = [t for t in enumerate_minors(g1312.shape) if std_le(g1312, t)]
        assert len(rep.items) == len(above)

    def test_failure_paths(self, monkeypatch, shape22):
        full = Minor(shape22, (1, 2), (1, 2))

        class FakeComponent:
            def __init__(self, verdict):
                self.verdict = verdict
                self.basis = component_basis(shape22, 4)

            def contains(self, p):
                return self.verdict

            @property
            def echelon(self):
                class E:
                    @staticmethod
                    def rows():
                        return []
                return E

        # everything collapses: tau*gamma already vanishes
        monkeypatch.setattr("qdet.factor.ideal_component",
                            lambda *a, **k: FakeComponent(True))
        with pytest.raises(NoScalarFound, match="vanishes"):
            normality_scalar(full, full)

        # nothing vanishes and no relation is available: the solved scalar
        # for gamma = tau is 1, but re-verification is denied
        monkeypatch.setattr("qdet.factor.ideal_component",
                            lambda *a, **k: FakeComponent(False))
        with pytest.raises(NoScalarFound, match="re-verification"):
            normality_scalar(full, full)

        # gamma*tau not congruent to any multiple of tau*gamma
        g11 = Minor(shape22, (1,), (1,))
        fake = FakeComponent(False)
        fake.basis = component_basis(shape22, 2)
        monkeypatch.setattr("qdet.factor.ideal_component",
                            lambda *a, **k: fake)
        with pytest.raises(NoScalarFound, match="not congruent"):
            normality_scalar(g11, Minor(shape22, (2,), (2,)))


class TestGeneratorImages:
    def test_base_variable_is_trivial(self, g1312):
        rep = generator_image_check(g1312, 1, 1)
        assert rep.passed
        assert [item.name for item in rep.items] == ["base variable"]

    def test_column_expansion_case(self, g1312):
        rep = generator_image_check(g1312, 2, 3)
        assert rep.passed
        names = [item.name for item in rep.items]
        assert names == ["expansion holds", "surviving minor[1,3|2,3]",
                         "surviving minor[1,3|1,3]", "head term",
                         "dead minor[1,2,3|1,2,3]", "head present",
                         "congruence"]

    def test_row_expansion_case(self, g1312):
        rep = generator_image_check(g1312, 2, 1)
        assert rep.passed
        assert any("head term" == item.name for item in rep.items)

    def test_suites(self, g11, g1312):
        assert generator_image_suite(g11).passed
        assert generator_image_suite(g1312).passed


class TestRegularityAndDomain:
    def test_regularity(self, g11, g1312):
        assert regularity_check(g11, 3).passed
        assert regularity_check(g1312, 3).passed

    def test_zero_divisors(self, g11, g1312):
        rep = zero_divisor_check(g11, 3)
        assert rep.passed
        assert len(rep.items) > 0
        assert zero_divisor_check(g1312, 3).passed

    def test_tower_image(self, g1312, g11):
        rep = tower_image_check(g1312, 3)
        assert rep.passed
        assert tower_image_check(g11, 3).passed


class TestDiskCache:
    def test_row_round_trip(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QDET_CACHE", str(tmp_path))
        rows = [{0: LaurentScalar({1: 1, -1: -1})},
                {2: ONE, 5: LaurentScalar({-3: 1})}]
        key = ("test", 1, (2, 3))
        cache.store_rows(key, rows)
        assert cache.load_rows(key) == rows
        assert cache.load_rows(("other",)) is None

    def test_corrupt_and_mismatched_files_are_misses(self, tmp_path,
                                                     monkeypatch):
        monkeypatch.setenv("QDET_CACHE", str(tmp_path))
        key = ("test", 2)
        cache.store_rows(key, [{0: ONE}])
        path = cache._path_for(str(tmp_path), key)
        with open(path, "w", encoding="ascii") as fh:
            fh.write("{not json")
        assert cache.load_rows(key) is None
        cache.store_rows(key, [{0: ONE}])
        with open(path, "r", encoding="ascii") as fh:
            payload = fh.read()
        with open(path, "w", encoding="ascii") as fh:
            fh.write(payload.replace('"format":1', '"format":99'))
        assert cache.load_rows(key) is None

    def test_env_overrides_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QDET_CACHE", str(tmp_path / "env"))
        cache.set_cache_dir(str(tmp_path / "set"))
        try:
            assert cache.cache_dir() == str(tmp_path / "env")
            monkeypatch.delenv("QDET_CACHE")
            assert cache.cache_dir() == str(tmp_path / "set")
        finally:
            cache.set_cache_dir(None)
        assert cache.cache_dir() is None

    def test_ideal_spans_persist_and_reload(self, tmp_path, monkeypatch,
                                            shape22):
        gamma = Minor(shape22, (1,), (1,))
        monkeypatch.setenv("QDET_CACHE", str(tmp_path))
        try:
            spans_clear()
            want = ideal_component(gamma, 2).rank
            files = list(tmp_path.glob("*.json"))
            assert files
            # poison the stored span to prove the reload path is taken
            key = ("ideal", 2, 2, (1,), (1,), 2)
            cache.store_rows(key, [{0: ONE}, {1: ONE}, {2: ONE}])
            spans_clear()
            assert ideal_component(gamma, 2).rank == 3
        finally:
            monkeypatch.delenv("QDET_CACHE")
            spans_clear()
        assert ideal_component(gamma, 2).rank == want == 1
