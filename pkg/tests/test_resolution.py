"""Blow-up simulation, dual graph, multiplicity table, splitting point."""

import pytest

from realpoincare.branch import char_exponents, conjugate, parse_branch
from realpoincare.errors import ValidationError
from realpoincare.resolution import (
    classify_vertices,
    multiplicity_table,
    resolve,
    splitting_search,
)


def pipeline_upto_splitting(text):
    b = parse_branch(text)
    r = resolve(b)
    ce = char_exponents(b)
    cls = classify_vertices(r, ce.genus)
    sp = splitting_search(b, r, cls.tau)
    return b, r, ce, cls, sp


class TestCusp:
    def setup_method(self):
        self.b = parse_branch("n = 2 / y = t^3")
        self.r = resolve(self.b)

    def test_points(self):
        assert self.r.multiplicities == (2, 1, 1)
        assert [p.kind for p in self.r.points] == ["origin", "free", "satellite"]
        assert self.r.points[2].proximate_to == {1, 2}
        assert self.r.delta_C == 3

    def test_graph(self):
        g = self.r.graph
        assert g.edges == {frozenset((1, 3)), frozenset((2, 3))}
        assert [g.self_intersection[v] for v in (1, 2, 3)] == [-3, -2, -1]

    def test_intersection_matrix_determinant_sign(self):
        E = self.r.graph.intersection_matrix()
        assert E == [[-3, 0, 1], [0, -2, 1], [1, 1, -1]]

    def test_multiplicity_table_matches_hand_inversion(self):
        mt = multiplicity_table(self.r)
        assert mt.m == [[1, 1, 2], [1, 2, 3], [2, 3, 6]]

    def test_classification(self):
        cls = classify_vertices(self.r, char_exponents(self.b).genus)
        assert cls.sigma == (1, 2)
        assert cls.tau == (3,)
        assert cls.delta_C == 3

    def test_curvette_noether(self):
        assert self.r.curvette_multiplicities(3) == (2, 1, 1)
        mt = multiplicity_table(self.r)
        assert sum(a * b for a, b in zip((2, 1, 1), (2, 1, 1))) == mt.entry(3, 3)

    def test_splitting_refused_on_real_branch(self):
        with pytest.raises(ValidationError):
            splitting_search(self.b, self.r, (3,))


class TestStandardGenus2:
    """x = t^4, y = alpha t^6 + t^7 for various alpha."""

    def test_combinatorics(self):
        b = parse_branch("n = 4 / y = (1+i)*t^6 + t^7")
        r = resolve(b)
        assert r.multiplicities == (4, 2, 2, 1, 1)
        assert [p.kind for p in r.points] == [
            "origin",
            "free",
            "satellite",
            "free",
            "satellite",
        ]
        assert r.delta_C == 5
        # total intersection multiplicity sum m(m-1) = 16
        assert sum(m * (m - 1) for m in r.multiplicities) == 16

    def test_m_column(self):
        b = parse_branch("n = 4 / y = (1+i)*t^6 + t^7")
        r = resolve(b)
        mt = multiplicity_table(r)
        cls = classify_vertices(r, 2)
        column = [mt.m_of(v) for v in cls.sigma + cls.tau]
        assert column == [4, 6, 13, 12, 26]

    def test_translation_constant_recorded(self):
        b = parse_branch("n = 4 / y = i*t^4 + t^6 + t^7")
        r = resolve(b)
        assert str(r.points[1].translation) == "i"

    def test_curvette_examples(self):
        b = parse_branch("n = 4 / y = (1+i)*t^6 + t^7")
        r = resolve(b)
        mt = multiplicity_table(r)
        assert r.curvette_multiplicities(3) == (2, 1, 1, 0, 0)
        # Noether pairing with the branch multiplicities gives m[3][5]
        total = sum(a * b for a, b in zip((2, 1, 1, 0, 0), r.multiplicities))
        assert total == 12 == mt.entry(3, 5)
        assert all(r.curvette_multiplicities(d)[0] >= 1 for d in range(1, 6))


class TestSplitting:
    def test_split_at_origin(self):
        _, _, _, _, sp = pipeline_upto_splitting("n = 4 / y = i*t^4 + t^6 + t^7")
        assert (sp.rho, sp.q, sp.figure2) == (1, 0, False)

    def test_split_at_first_rupture(self):
        _, _, _, _, sp = pipeline_upto_splitting("n = 4 / y = (1+i)*t^6 + t^7")
        assert (sp.rho, sp.q, sp.figure2) == (3, 1, False)

    def test_figure2(self):
        _, _, _, _, sp = pipeline_upto_splitting("n = 4 / y = t^6 + (1+i)*t^7")
        assert (sp.rho, sp.q, sp.figure2) == (5, 2, True)
        assert sp.extra_blowups == 0
        assert str(sp.first_nonreal_translation) == "-1/8*i"

    def test_figure2_with_extra_blowups(self):
        _, _, _, _, sp = pipeline_upto_splitting("n = 4 / y = t^6 + t^7 + i*t^9")
        assert sp.figure2 and sp.rho == 5
        assert sp.extra_blowups == 2

    def test_split_mid_chain(self):
        # the non-real constant appears on a chain vertex between tau_1 and tau_2
        _, _, _, cls, sp = pipeline_upto_splitting("n = 4 / y = t^6 + i*t^10 + t^11")
        assert cls.tau == (3, 7)
        assert (sp.rho, sp.q, sp.figure2) == (5, 1, False)


class TestStructuralInvariants:
    BRANCHES = [
        "n = 2 / y = t^3",
        "n = 4 / y = i*t^4 + t^6 + t^7",
        "n = 4 / y = (1+i)*t^6 + t^7",
        "n = 4 / y = t^6 + (1+i)*t^7",
        "n = 8 / y = i*t^8 + t^12 + t^14 + t^15",
        "n = 8 / y = t^12 + (1+i)*t^14 + t^15",
        "n = 4 / y = t^6 + i*t^10 + t^11",
    ]

    def test_proximity_factorization_and_inverse(self):
        # multiplicity_table internally asserts E o E = -P^T P, -(E o E) m = I,
        # positivity, and the curvette row at delta_C; surviving it is the test
        for text in self.BRANCHES:
            r = resolve(parse_branch(text))
            multiplicity_table(r)

    def test_multiplicity_sequence_matches_char_exponents(self):
        from realpoincare.branch import multiplicity_sequence_from_char

        for text in self.BRANCHES:
            b = parse_branch(text)
            assert resolve(b).multiplicities == multiplicity_sequence_from_char(
                char_exponents(b)
            )

    def test_first_point_invariants(self):
        for text in self.BRANCHES:
            b = parse_branch(text)
            r = resolve(b)
            assert r.points[0].kind == "origin"
            assert r.points[0].center_real
            assert r.points[0].multiplicity == b.multiplicity
            for p in r.points[1:]:
                assert len(p.proximate_to) in (1, 2)
                assert (p.kind == "satellite") == (len(p.proximate_to) == 2)
                assert p.id - 1 in p.proximate_to

    def test_weakly_decreasing_multiplicities(self):
        for text in self.BRANCHES:
            mults = resolve(parse_branch(text)).multiplicities
            assert all(a >= b for a, b in zip(mults, mults[1:]))

    def test_conjugate_branch_same_structure(self):
        for text in self.BRANCHES:
            b = parse_branch(text)
            r = resolve(b)
            rc = resolve(conjugate(b))
            assert rc.multiplicities == r.multiplicities
            assert rc.graph.edges == r.graph.edges
            assert rc.graph.self_intersection == r.graph.self_intersection
            for p, pc in zip(r.points, rc.points):
                assert p.proximate_to == pc.proximate_to
                if p.translation is None:
                    assert pc.translation is None
                else:
                    assert pc.translation == p.translation.conjugate()

    def test_conjugate_branch_same_splitting(self):
        for text in self.BRANCHES:
            b = parse_branch(text)
            if b.is_smooth:
                continue
            from realpoincare.branch import is_conjugation_invariant

            if is_conjugation_invariant(b)[0]:
                continue
            _, _, _, cls, sp = pipeline_upto_splitting(text)
            cb = conjugate(b)
            rc = resolve(cb)
            clsc = classify_vertices(rc, char_exponents(cb).genus)
            spc = splitting_search(cb, rc, clsc.tau)
            assert (spc.rho, spc.q, spc.figure2, spc.extra_blowups) == (
                sp.rho,
                sp.q,
                sp.figure2,
                sp.extra_blowups,
            )

    def test_determinism_across_truncations(self):
        for text in self.BRANCHES:
            b = parse_branch(text)
            r1 = resolve(b)
            r2 = resolve(b, min_truncation=4 * r1.truncation_used)
            assert r1.multiplicities == r2.multiplicities
            assert r1.graph.edges == r2.graph.edges
            assert r1.graph.self_intersection == r2.graph.self_intersection
            assert [p.translation for p in r1.points] == [p.translation for p in r2.points]

    def test_geodesic(self):
        r = resolve(parse_branch("n = 4 / y = (1+i)*t^6 + t^7"))
        assert r.graph.geodesic(1, 5) == [1, 3, 5]
        assert r.graph.geodesic(3, 3) == [3]
        assert r.graph.geodesic(2, 4) == [2, 3, 5, 4]

    def test_smooth_refused(self):
        with pytest.raises(ValidationError):
            resolve(parse_branch("n = 1 / y = 0"))
