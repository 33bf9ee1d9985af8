"""The brute-force oracle: jet-matrix ranks and the independent sieve."""

import pytest

from realpoincare.branch import parse_branch
from realpoincare.errors import ResourceError
from realpoincare.oracle import (
    compare_profiles,
    dims_bruteforce,
    semigroup_enumerate,
)
from realpoincare.pipeline import analyze_text
from realpoincare.poincare import dimension_profile_closed_form


class TestSieve:
    def test_first_real_semigroup(self):
        table = semigroup_enumerate((4, 10, 21), 28)
        members = [a for a, v in enumerate(table) if v]
        assert members == [0, 4, 8, 10, 12, 14, 16, 18, 20, 21, 22, 24, 25, 26, 28]

    def test_trivial(self):
        assert all(semigroup_enumerate((1,), 10))

    def test_second_real_semigroup(self):
        table = semigroup_enumerate((4, 6, 25), 30)
        members = {a for a, v in enumerate(table) if v}
        assert members == {0, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 25, 26, 28, 29, 30}


class TestDimsBruteforce:
    def test_first_branch_low_orders(self):
        b = parse_branch("n = 4 / y = i*t^4 + t^6 + t^7")
        profile = dims_bruteforce(b, 12)
        # witnesses x and y have value 4 with R-independent leading terms 1, i
        assert profile.dims[4] == 2
        assert profile.dims[0] == 1
        assert profile.dims[1] == 0

    def test_cusp_membership(self):
        b = parse_branch("n = 2 / y = t^3")
        profile = dims_bruteforce(b, 20)
        members = semigroup_enumerate((2, 3), 20)
        assert list(profile.dims) == [1 if v else 0 for v in members]
        assert 2 not in profile.dims

    def test_smooth_branch(self):
        profile = dims_bruteforce(parse_branch("n = 1 / y = 0"), 10)
        assert list(profile.dims) == [1] * 11

    def test_real_disguise_dims_are_membership(self):
        b = parse_branch("n = 8 / y = (1+i)*t^9")
        profile = dims_bruteforce(b, 30)
        members = semigroup_enumerate((8, 9), 30)
        assert list(profile.dims) == [1 if v else 0 for v in members]

    def test_monotone_rank_steps(self):
        b = parse_branch("n = 4 / y = (1+i)*t^6 + t^7")
        profile = dims_bruteforce(b, 40)
        assert all(d in (0, 1, 2) for d in profile.dims)

    def test_degree_doubling_is_sound(self):
        # doubling the monomial degree bound must not change any dimension
        b = parse_branch("n = 4 / y = (1+i)*t^6 + t^7")
        base = dims_bruteforce(b, 30)
        doubled = dims_bruteforce(b, 30, degree=2 * base.degree_used)
        assert base.dims == doubled.dims

    def test_size_cap(self):
        with pytest.raises(ResourceError):
            dims_bruteforce(parse_branch("n = 2 / y = t^3"), 100, size_cap=50)

    def test_matrix_shape_metadata(self):
        b = parse_branch("n = 2 / y = t^3")
        profile = dims_bruteforce(b, 10)
        assert profile.rows == 22
        D = 10 // 2 + 1
        assert profile.degree_used == D
        assert profile.columns_total == (D + 1) * (D + 2) // 2
        assert profile.columns_active <= profile.columns_total


class TestNegativeControl:
    def test_corrupted_m_rho_is_detected_at_m_rho(self):
        analysis = analyze_text("n = 4 / y = i*t^4 + t^6 + t^7")
        inv = analysis.invariants
        a_max = inv.conductor + inv.m_rho + 10
        oracle = dims_bruteforce(analysis.branch, a_max)
        good = dimension_profile_closed_form(inv.structure, inv.m_rho, a_max)
        assert not compare_profiles(good, list(oracle.dims), "dim")
        corrupted = dimension_profile_closed_form(inv.structure, inv.m_rho + 1, a_max)
        mismatches = compare_profiles(corrupted, list(oracle.dims), "dim")
        assert mismatches
        assert mismatches[0].position == inv.m_rho

    def test_corrupted_generator_is_detected(self):
        analysis = analyze_text("n = 4 / y = (1+i)*t^6 + t^7")
        inv = analysis.invariants
        bound = 2 * inv.conductor
        from realpoincare.poincare import CyclotomicFraction

        bad = CyclotomicFraction.of(inv.M_tau, (4, 6, 27))
        sieve = semigroup_enumerate(inv.M_sigma, bound)
        mism = compare_profiles([1 if v else 0 for v in sieve], bad.expand(bound).coeffs, "PS")
        assert mism
