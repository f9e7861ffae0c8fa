import random

import pytest

import plmorse as pm
from plmorse.homology import (SparseIntMatrix, boundary_matrix, betti,
                              field_rank, integral_homology, is_z_acyclic,
                              smith_normal_form, parse_field)
from conftest import random_subcomplex


class TestBoundaryMatrix:
    def test_cycle_column_sums(self):
        c = pm.SimplicialComplex.from_facets([[1, 2], [2, 3], [1, 3]])
        m = boundary_matrix(c, 1)
        assert m.nrows == 3 and m.ncols == 3
        for j in range(3):
            assert sum(m.column(j).values()) == 0

    def test_single_triangle_d2(self):
        c = pm.SimplicialComplex.from_facets([[1, 2, 3]])
        m = boundary_matrix(c, 2)
        assert m.nrows == 3 and m.ncols == 1
        assert sorted(m.entries.values()) == [-1, 1, 1]

    def test_dd_zero(self, dd4, torus7, dunce, rng):
        for c in (dd4, torus7, dunce):
            for k in range(2, c.dimension + 1):
                assert boundary_matrix(c, k - 1).compose(
                    boundary_matrix(c, k)).is_zero()
        for _ in range(10):
            sub = random_subcomplex(rng.choice([dd4, dunce]), rng)
            for k in range(2, sub.dimension + 1):
                assert boundary_matrix(sub, k - 1).compose(
                    boundary_matrix(sub, k)).is_zero()

    def test_out_of_range(self, dd3):
        with pytest.raises(ValueError):
            boundary_matrix(dd3, 5)


class TestSmithNormalForm:
    def test_identity(self):
        m = SparseIntMatrix(3, 3, {(i, i): 1 for i in range(3)})
        assert smith_normal_form(m) == ([1, 1, 1], 3)

    def test_known_2x2(self):
        m = SparseIntMatrix(2, 2, {(0, 0): 2, (0, 1): 4, (1, 0): 6, (1, 1): 8})
        assert smith_normal_form(m) == ([2, 4], 2)

    def test_zero_matrix(self):
        m = SparseIntMatrix(4, 5, {})
        assert smith_normal_form(m) == ([], 0)

    def test_divisibility_chain(self):
        m = SparseIntMatrix(2, 2, {(0, 0): 2, (1, 1): 3})
        inv, rank = smith_normal_form(m)
        assert inv == [1, 6] and rank == 2

    def test_against_sympy_oracle(self):
        from sympy import Matrix, ZZ
        from sympy.matrices.normalforms import smith_normal_form as snf

        rng = random.Random(7)
        for _ in range(120):
            m = rng.randint(1, 6)
            n = rng.randint(1, 6)
            entries = {}
            for r in range(m):
                for c in range(n):
                    if rng.random() < 0.5:
                        v = rng.randint(-4, 4)
                        if v:
                            entries[(r, c)] = v
            mine, rank = smith_normal_form(SparseIntMatrix(m, n, entries))
            dense = Matrix([[entries.get((r, c), 0) for c in range(n)]
                            for r in range(m)])
            ref = snf(dense, domain=ZZ)
            ref_diag = sorted(abs(ref[i, i]) for i in range(min(m, n))
                              if ref[i, i] != 0)
            assert sorted(mine) == ref_diag
            assert rank == dense.rank()


class TestBetti:
    def test_dd3_sphere(self, dd3):
        assert betti(dd3, "Q") == (1, 0, 1)

    def test_torus(self, torus7):
        assert betti(torus7, "Q") == (1, 2, 1)
        assert betti(torus7, "F2") == (1, 2, 1)

    def test_dunce_reduced_f2(self, dunce):
        assert betti(dunce, "F2", reduced=True) == (0, 0, 0)

    def test_rp2_field_dependence(self, rp2):
        assert betti(rp2, "Q") == (1, 0, 0)
        assert betti(rp2, "F2") == (1, 1, 1)

    def test_nonprime_rejected(self, dd3):
        with pytest.raises(ValueError):
            betti(dd3, "F4")
        with pytest.raises(ValueError):
            parse_field("F1")

    def test_field_rank_matches_snf_rank(self, torus7, rp2, rng):
        for c in (torus7, rp2):
            for k in range(1, c.dimension + 1):
                m = boundary_matrix(c, k)
                assert field_rank(m, "Q") == smith_normal_form(m)[1]


class TestIntegralHomology:
    def test_dd3(self, dd3):
        prof = integral_homology(dd3)
        assert prof.betti == (1, 0, 1)
        assert not any(prof.torsion)

    def test_rp2_torsion(self, rp2):
        prof = integral_homology(rp2)
        assert prof.betti == (1, 0, 0)
        assert prof.torsion == ((), (2,), ())

    def test_z_acyclic(self, dunce):
        point = pm.SimplicialComplex.from_facets([[1]])
        assert is_z_acyclic(point)
        assert is_z_acyclic(dunce)
        cycle = pm.SimplicialComplex.from_facets([[1, 2], [2, 3], [1, 3]])
        assert not is_z_acyclic(cycle)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            is_z_acyclic(pm.SimplicialComplex([]))

    def test_q_betti_equals_free_rank(self, torus7, rp2, dunce, dd4):
        for c in (torus7, rp2, dunce, dd4):
            assert betti(c, "Q") == integral_homology(c).betti

    def test_euler_poincare(self, torus7, rp2, dunce, dd4, c58):
        for c in (torus7, rp2, dunce, dd4, c58):
            assert c.euler_characteristic() == \
                sum((-1) ** k * b for k, b in enumerate(betti(c, "Q")))

    def test_universal_coefficients(self, rp2, dunce, torus7, rng):
        # reduced homology vanishing over Q and all torsion primes <=> Z-acyclic
        def vanishes_all_fields(c):
            prof = integral_homology(c, reduced=True)
            primes = {p for t in prof.torsion for x in t
                      for p in _prime_factors(x)}
            if any(betti(c, "Q", reduced=True)):
                return False
            return all(not any(betti(c, "F%d" % p, reduced=True))
                       for p in primes)

        assert not vanishes_all_fields(rp2)          # torsion seen by F2
        assert vanishes_all_fields(dunce)
        for _ in range(10):
            sub = random_subcomplex(rng.choice([rp2, torus7, dunce]), rng)
            assert vanishes_all_fields(sub) == is_z_acyclic(sub)


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out
