"""Numerical semigroup structure, Apery sets, structural clauses."""

import pytest

from realpoincare.errors import ValidationError
from realpoincare.semigroup import (
    build_structure,
    lemma_structure_check,
    membership_sieve,
)


class TestBuildStructure:
    def test_cusp_semigroup(self):
        s = build_structure((2, 3))
        assert s.conductor == 2
        assert s.members_up_to(6) == (0, 2, 3, 4, 5, 6)

    def test_standard_semigroup(self):
        s = build_structure((4, 6, 13))
        assert s.conductor == 16
        assert not s.contains(15)
        assert all(s.contains(a) for a in range(16, 60))
        # conductor = sum (N_i - 1) mbar_i - mbar_0 + 1 = 6 + 13 - 4 + 1
        assert s.conductor == 6 + 13 - 4 + 1

    def test_real_semigroup_of_first_example(self):
        s = build_structure((4, 10, 21))
        assert s.conductor == 28
        assert not s.contains(27)
        assert s.members_up_to(28) == (
            0, 4, 8, 10, 12, 14, 16, 18, 20, 21, 22, 24, 25, 26, 28,
        )

    def test_gcd_chain(self):
        s = build_structure((4, 10, 21))
        assert s.e == (4, 2, 1)
        assert s.N == (2, 2)

    def test_non_numerical_rejected(self):
        with pytest.raises(ValidationError):
            build_structure((4, 6))

    def test_trivial_semigroup(self):
        s = build_structure((1,))
        assert s.conductor == 0
        assert s.contains(0) and s.contains(1) and s.contains(10**6)

    def test_generator_order_preserved(self):
        s = build_structure((4, 6, 25))
        assert s.generators == (4, 6, 25)
        assert s.conductor == 28


class TestApery:
    def test_cusp(self):
        assert build_structure((2, 3)).apery_set(2) == (0, 3)

    def test_standard(self):
        assert build_structure((4, 6, 13)).apery_set(4) == (0, 13, 6, 19)

    def test_real_first_example(self):
        assert build_structure((4, 10, 21)).apery_set(4) == (0, 21, 10, 31)

    def test_non_member_rejected(self):
        with pytest.raises(ValidationError):
            build_structure((4, 6, 13)).apery_set(5)

    def test_apery_size_and_residues(self):
        s = build_structure((4, 6, 25))
        ap = s.apery_set(6)
        assert len(ap) == 6
        assert sorted(a % 6 for a in ap) == list(range(6))
        assert all(s.contains(a) and not s.contains(a - 6) for a in ap if a)


class TestLemmaClauses:
    def test_remark_triple_one(self):
        assert lemma_structure_check((4, 10, 21), (2, 2)).passed

    def test_remark_triple_two(self):
        assert lemma_structure_check((4, 6, 25), (2, 2)).passed

    def test_cusp(self):
        assert lemma_structure_check((2, 3), (2,)).passed

    def test_genus3(self):
        assert lemma_structure_check((8, 20, 42, 85), (2, 2, 2)).passed
        assert lemma_structure_check((8, 12, 26, 105), (2, 2, 2)).passed

    def test_violations_reported(self):
        # 12 = 4 + 8 lies in <4>: clause (a) must fire for M_1 = 6, N_1 = 4
        report = lemma_structure_check((4, 6, 13), (4, 1))
        assert not report.passed
        # non-minimal generator: 8 in <4>
        report = lemma_structure_check((4, 8), (2,))
        assert not report.passed
        assert any("minimality" in f or "clause (a)" in f for f in report.failures)


class TestStructureProperties:
    TRIPLES = [(4, 10, 21), (4, 6, 25), (4, 6, 13), (2, 3), (8, 20, 42, 85)]

    def test_conductor_symmetry(self):
        for gens in self.TRIPLES:
            assert build_structure(gens).check_conductor_symmetry().passed

    def test_closure(self):
        for gens in self.TRIPLES:
            assert build_structure(gens).check_closure().passed

    def test_unique_representation(self):
        for gens in self.TRIPLES:
            s = build_structure(gens)
            for a in range(2 * s.conductor + 1):
                count = s.unique_representation_counts(a)
                assert count == (1 if s.contains(a) else 0), (gens, a)

    def test_two_sieves_agree(self):
        from realpoincare.oracle import semigroup_enumerate

        for gens in self.TRIPLES:
            bound = 3 * max(gens)
            assert membership_sieve(gens, bound) == semigroup_enumerate(gens, bound)

    def test_symmetry_fails_for_non_symmetric_semigroup(self):
        # <3,4,5> is not symmetric: the check must notice
        assert not build_structure((3, 4, 5)).check_conductor_symmetry().passed
