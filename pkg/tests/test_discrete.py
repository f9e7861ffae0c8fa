import random
from collections import Counter

import pytest

import plmorse as pm
from plmorse.discrete import (critical_cells, genericize, matching,
                              random_matching, to_pl_morse, validate,
                              values_from_matching, _cells)
from plmorse.morse import analyze

# perfect matching on the boundary of the tetrahedron: critical cells are
# the vertex 0 and the facet 123
PERFECT_DD3 = {
    (1,): (0, 1), (2,): (0, 2), (3,): (0, 3),
    (1, 2): (0, 1, 2), (1, 3): (0, 1, 3), (2, 3): (0, 2, 3),
}


def dim_values(c):
    return {s: len(s) - 1 for s in _cells(c)}


class TestValidate:
    def test_dimension_function_valid(self, torus7, dd3, dunce):
        for c in (torus7, dd3, dunce):
            assert validate(c, dim_values(c)) == ("valid", None)

    def test_two_exceptional_faces_invalid(self):
        tri = pm.SimplicialComplex.from_facets([[1, 2, 3]])
        g = dim_values(tri)
        g[(1, 2)] = 9
        g[(1, 3)] = 9
        verdict, witness = validate(tri, g)
        assert verdict == "invalid" and witness == (1, 2, 3)

    def test_perfect_matching_valid(self, dd3):
        g = values_from_matching(dd3, PERFECT_DD3)
        assert validate(dd3, g) == ("valid", None)
        assert set(critical_cells(dd3, g)) == {(0,), (1, 2, 3)}

    def test_missing_cell(self, dd3):
        with pytest.raises(ValueError):
            validate(dd3, {(0,): 1})


class TestCriticalAndMatching:
    def test_dim_function_all_critical(self, dd3):
        g = dim_values(dd3)
        assert len(critical_cells(dd3, g)) == 14
        assert matching(dd3, g) == {}

    def test_euler_count_consistency(self, torus7, dd3, dd4, rng):
        for c in (torus7, dd3, dd4):
            for _ in range(7):
                pairs = random_matching(c, rng)
                g = values_from_matching(c, pairs)
                crit = critical_cells(c, g)
                counts = Counter(len(s) - 1 for s in crit)
                chi = sum((-1) ** k * n for k, n in counts.items())
                assert chi == c.euler_characteristic()

    def test_matching_from_values_agrees(self, dd3):
        g = values_from_matching(dd3, PERFECT_DD3)
        assert matching(dd3, g) == PERFECT_DD3


class TestGenericize:
    def test_injective_and_generic(self, torus7, rng):
        pairs = random_matching(torus7, rng)
        g = values_from_matching(torus7, pairs)
        gen = genericize(torus7, g)
        vals = list(gen.values())
        assert len(set(vals)) == len(vals)
        for s in _cells(torus7):
            for k in range(1, len(s) - 1):
                from itertools import combinations
                for f in combinations(s, k):
                    assert gen[f] < gen[s]

    def test_same_critical_cells_and_matching(self, torus7, dd3, rng):
        for c in (torus7, dd3):
            for _ in range(5):
                pairs = random_matching(c, rng)
                g = values_from_matching(c, pairs)
                gen = genericize(c, g)
                assert validate(c, gen) == ("valid", None)
                assert set(critical_cells(c, gen)) \
                    == set(critical_cells(c, g))
                assert matching(c, gen) == matching(c, g)

    def test_idempotent_ranking(self, dd3):
        g = values_from_matching(dd3, PERFECT_DD3)
        g1 = genericize(dd3, g)
        g2 = genericize(dd3, g1)
        assert g1 == g2

    def test_dim_function_order(self):
        tri = pm.SimplicialComplex.from_facets([["a", "b", "c"]])
        gen = genericize(tri, dim_values(tri))
        ordered = sorted(gen, key=lambda s: gen[s])
        assert ordered == [("a",), ("b",), ("c",),
                           ("a", "b"), ("a", "c"), ("b", "c"),
                           ("a", "b", "c")]

    def test_paired_cells_adjacent(self, dd3):
        g = values_from_matching(dd3, PERFECT_DD3)
        gen = genericize(dd3, g)
        for face, coface in PERFECT_DD3.items():
            assert gen[face] == gen[coface] + 1

    def test_nonimmediate_large_face_reordered(self):
        # valid non-generic input: the vertex a sits above the triangle;
        # genericize must push it below while keeping the matching
        tri = pm.SimplicialComplex.from_facets([["a", "b", "c"]])
        g = {("b",): 0, ("c",): 1, ("b", "c"): 2, ("a", "b"): 3,
             ("a", "b", "c"): 5, ("a",): 6, ("a", "c"): 7}
        assert validate(tri, g) == ("valid", None)
        gen = genericize(tri, g)
        assert gen[("a",)] < gen[("a", "b", "c")]
        assert matching(tri, gen) == matching(tri, g)


class TestConversion:
    def test_perfect_dd3_two_critical_vertices(self, dd3):
        g = values_from_matching(dd3, PERFECT_DD3)
        conv = to_pl_morse(dd3, g)
        assert conv.guarantees
        rep = analyze(conv.derived, conv.order, fields=("Q",))
        crit = [v for v in conv.order.order
                if rep.records[v].is_h_critical()]
        assert len(crit) == 2
        assert rep.weighted_mu["Q"] == (1, 0, 1)

    def test_dim_function_mu(self, dd3):
        conv = to_pl_morse(dd3, dim_values(dd3))
        rep = analyze(conv.derived, conv.order, fields=("Q",))
        assert rep.weighted_mu["Q"] == (4, 6, 4)
        assert rep.euler_equation

    def test_disc_boundary_classes(self, disc):
        conv = to_pl_morse(disc, dim_values(disc))
        rep = analyze(conv.derived, conv.order, fields=("Q",))
        bdry = set(conv.derived.boundary_subcomplex().vertices)
        for cell in _cells(disc):
            v = conv.vertex_of_cell[cell]
            rec = rep.records[v]
            if len(cell) == 3:
                assert rec.boundary_class == "interior"
                assert rec.indices == (2,)
            else:
                assert v in bdry
                assert rec.boundary_class == ("plus_critical", len(cell) - 1)

    def test_conversion_guarantee(self, torus7, dd3, dd4, rng):
        for c in (torus7, dd3, dd4):
            for _ in range(5):
                pairs = random_matching(c, rng)
                g = values_from_matching(c, pairs)
                conv = to_pl_morse(c, g)
                rep = analyze(conv.derived, conv.order, fields=("Q", "F2"))
                crit_cells = set(conv.critical)
                for cell in _cells(c):
                    v = conv.vertex_of_cell[cell]
                    rec = rep.records[v]
                    if cell in crit_cells:
                        assert rec.is_h_critical()
                        k = len(cell) - 1
                        want = tuple(1 if i == k else 0
                                     for i in range(c.dimension + 1))
                        assert rec.multiplicities["Q"] == want
                        assert rec.multiplicities["F2"] == want
                    else:
                        assert rec.status == "h_regular"
                        assert rec.strong_regularity == "strongly_regular"

    def test_weighted_mu_counts_critical_cells(self, torus7, rng):
        for _ in range(5):
            pairs = random_matching(torus7, rng)
            g = values_from_matching(torus7, pairs)
            conv = to_pl_morse(torus7, g)
            rep = analyze(conv.derived, conv.order, fields=("Q",))
            counts = Counter(len(s) - 1 for s in conv.critical)
            assert rep.weighted_mu["Q"] == tuple(
                counts.get(k, 0) for k in range(3))

    def test_nonmanifold_guarantees_withheld(self, dunce):
        conv = to_pl_morse(dunce, dim_values(dunce))
        assert not conv.guarantees
