"""Real semigroup generators, M-values per vertex, the recipe branch."""

from realpoincare.branch import char_exponents, parse_branch
from realpoincare.invariants import (
    M_of_vertex,
    conjugate_branch_recipe,
    geodesic_property_check,
    m_rho_value,
    real_generators,
)
from realpoincare.resolution import (
    classify_vertices,
    multiplicity_table,
    resolve,
    splitting_search,
)


def build(text):
    b = parse_branch(text)
    r = resolve(b)
    ce = char_exponents(b)
    cls = classify_vertices(r, ce.genus)
    sp = splitting_search(b, r, cls.tau)
    mt = multiplicity_table(r)
    inv = real_generators(mt, cls, ce, r, sp)
    return b, r, ce, cls, sp, mt, inv


class TestRemarkExamples:
    def test_alpha_i(self):
        *_, inv = build("n = 4 / y = i*t^4 + t^6 + t^7")
        assert inv.M_sigma == (4, 10, 21)
        assert inv.M_tau == (20, 42)
        assert inv.m_rho == 4
        assert (inv.q, inv.figure2) == (0, False)

    def test_alpha_one_plus_i(self):
        *_, inv = build("n = 4 / y = (1+i)*t^6 + t^7")
        assert inv.M_sigma == (4, 6, 25)
        assert inv.m_rho == 12
        assert (inv.q, inv.figure2) == (1, False)

    def test_initial_curve(self):
        *_, inv = build("n = 4 / y = t^6 + (1+i)*t^7")
        assert inv.M_sigma == (4, 6, 13)
        assert inv.m_rho == 26
        assert (inv.q, inv.figure2) == (2, True)
        # m_rho is the Noether self-pairing 4^2 + 2^2 + 2^2 + 1 + 1
        assert inv.m_rho == 16 + 4 + 4 + 1 + 1

    def test_recipes(self):
        for text, expected_b in [
            ("n = 4 / y = i*t^4 + t^6 + t^7", (4, 10, 11)),
            ("n = 4 / y = (1+i)*t^6 + t^7", (4, 6, 19)),
            ("n = 4 / y = t^6 + (1+i)*t^7", (4, 6, 7)),
        ]:
            *_, inv = build(text)
            recipe = conjugate_branch_recipe(inv)
            assert recipe.b == expected_b
            assert recipe.parametrization.n == expected_b[0]
            assert recipe.parametrization.support() == expected_b[1:]


class TestMOfVertex:
    def test_fixed_vertex_is_m(self):
        b, r, ce, cls, sp, mt, inv = build("n = 4 / y = i*t^4 + t^6 + t^7")
        assert M_of_vertex(mt, r, sp, sp.rho) == inv.m_rho == 4

    def test_tau1_value(self):
        # M at tau_1 = 12 + 2*4 = 20 = N_1 M_sigma_1
        b, r, ce, cls, sp, mt, inv = build("n = 4 / y = i*t^4 + t^6 + t^7")
        assert M_of_vertex(mt, r, sp, 3) == 20 == ce.N[0] * inv.M_sigma[1]

    def test_delta_C_value_late_split(self):
        # M at delta_C = 26 + 2*12 = 50 = N_2 M_sigma_2
        b, r, ce, cls, sp, mt, inv = build("n = 4 / y = (1+i)*t^6 + t^7")
        assert M_of_vertex(mt, r, sp, 5) == 50 == ce.N[1] * inv.M_sigma[2]

    def test_m_rho_source(self):
        b, r, ce, cls, sp, mt, inv = build("n = 4 / y = (1+i)*t^6 + t^7")
        assert m_rho_value(mt, sp) == mt.entry(3, 5) == 12


class TestFigure2Extras:
    def test_extra_blowups_raise_m_rho(self):
        # all five centers real and the next two coordinates still real:
        # the minimal real resolution needs two more blow-ups; each adds 1
        b, r, ce, cls, sp, mt, inv = build("n = 4 / y = t^6 + t^7 + i*t^9")
        assert sp.extra_blowups == 2
        assert inv.m_rho == mt.entry(5, 5) + 2 == 28
        assert inv.M_sigma == (4, 6, 13)

    def test_oracle_confirms_shifted_m_rho(self):
        from realpoincare.oracle import dims_bruteforce

        b, *_rest, inv = build("n = 4 / y = t^6 + t^7 + i*t^9")
        profile = dims_bruteforce(b, inv.m_rho + 2)
        first_two = next(a for a, d in enumerate(profile.dims) if d == 2)
        assert first_two == inv.m_rho == 28


class TestMidChainSplit:
    def test_two_routes_agree_off_rupture(self):
        # rho between tau_1 and tau_2: eq-(M) product form versus curvettes
        b, r, ce, cls, sp, mt, inv = build("n = 4 / y = t^6 + i*t^10 + t^11")
        assert sp.rho == 5 and cls.tau == (3, 7)
        assert inv.M_sigma == (4, 6, 33)
        assert inv.m_rho == 16


class TestGeodesic:
    def test_examples(self):
        b, r, ce, cls, sp, mt, inv = build("n = 4 / y = i*t^4 + t^6 + t^7")
        report = geodesic_property_check(inv, mt, r, sp)
        assert report.passed
        # spot value: M at tau_1 minus m_rho = 16 = 4*4 is a member
        assert inv.structure.contains(M_of_vertex(mt, r, sp, 3) - inv.m_rho)

    def test_all_branches(self):
        for text in [
            "n = 4 / y = (1+i)*t^6 + t^7",
            "n = 4 / y = t^6 + (1+i)*t^7",
            "n = 4 / y = t^6 + i*t^10 + t^11",
            "n = 8 / y = i*t^8 + t^12 + t^14 + t^15",
            "n = 8 / y = t^12 + (1+i)*t^14 + t^15",
        ]:
            b, r, ce, cls, sp, mt, inv = build(text)
            assert geodesic_property_check(inv, mt, r, sp).passed, text


class TestStructuralProperties:
    BRANCHES = [
        "n = 4 / y = i*t^4 + t^6 + t^7",
        "n = 4 / y = (1+i)*t^6 + t^7",
        "n = 4 / y = t^6 + (1+i)*t^7",
        "n = 4 / y = t^6 + i*t^10 + t^11",
        "n = 8 / y = i*t^8 + t^12 + t^14 + t^15",
        "n = 8 / y = t^12 + (1+i)*t^14 + t^15",
    ]

    def test_m_rho_is_a_value(self):
        for text in self.BRANCHES:
            *_, inv = build(text)
            assert inv.structure.contains(inv.m_rho), text

    def test_M_tau_relation_and_prefix(self):
        for text in self.BRANCHES:
            b, r, ce, cls, sp, mt, inv = build(text)
            for i in range(1, len(inv.M_sigma)):
                assert inv.M_tau[i - 1] == ce.N[i - 1] * inv.M_sigma[i]
            for i in range(inv.q + 1):
                assert inv.M_sigma[i] == mt.m_of(cls.sigma[i]), text

    def test_gcd_chain_matches_classical(self):
        for text in self.BRANCHES:
            b, r, ce, cls, sp, mt, inv = build(text)
            assert inv.structure.e == ce.e
            assert inv.structure.N == ce.N

    def test_recipe_is_real_and_increasing(self):
        for text in self.BRANCHES:
            *_, inv = build(text)
            recipe = conjugate_branch_recipe(inv)
            assert all(b1 < b2 for b1, b2 in zip(recipe.b, recipe.b[1:]))
            from realpoincare.branch import is_real_branch

            assert is_real_branch(recipe.parametrization)[0]
