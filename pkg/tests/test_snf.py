"""Smith normal form over k[h] and k[h,h^-1], with full certification."""

from fractions import Fraction

from qexterior.hpoly import HLaurent, HPoly
from qexterior.scalars import GRat
from qexterior.snf import (mat_eq, mat_identity, mat_mul, mat_promote,
                           rank_fraction_field, smith_normal_form,
                           solve_linear)

h = HPoly.h
one = HPoly.one()
zero = HPoly.zero()


def certify(A, ring):
    res = smith_normal_form(A, ring)
    rows, cols = res.shape
    prod = mat_mul(mat_mul(res.U, mat_promote(A, ring), ring), res.V, ring)
    assert mat_eq(prod, res.d_matrix())
    assert mat_eq(mat_mul(res.U, res.Uinv, ring), mat_identity(rows, ring))
    assert mat_eq(mat_mul(res.V, res.Vinv, ring), mat_identity(cols, ring))
    nz = res.invariant_factors()
    for a, b in zip(nz, nz[1:]):
        assert a.divides(b)
    for d in nz:
        assert d == d.normalized()
    assert res.rank == rank_fraction_field(A)
    return res


class TestExamples:
    def test_identity(self):
        res = certify([[one, zero], [zero, one]], HPoly)
        assert [str(d) for d in res.diag] == ["1", "1"]
        assert res.rank == 2

    def test_h_one_zero_h(self):
        # hand row-reduction: swap columns, clear, obtaining diag(1, h^2)
        res = certify([[h(), one], [zero, h()]], HPoly)
        assert res.diag[0] == HPoly.one()
        assert res.diag[1] == HPoly({2: 1})
        assert res.rank == 2

    def test_zero_matrix(self):
        res = certify([[zero, zero], [zero, zero]], HPoly)
        assert all(d.is_zero() for d in res.diag)
        assert res.rank == 0

    def test_laurent_h_is_unit(self):
        res = certify([[HLaurent({1: Fraction(1)})]], HLaurent)
        assert res.diag[0] == HLaurent.one()
        assert res.rank == 1

    def test_laurent_normalization_monic_nonzero_constant(self):
        A = [[HLaurent({-2: Fraction(2), 1: Fraction(4)})]]
        res = certify(A, HLaurent)
        d = res.diag[0]
        assert d.valuation() == 0
        assert d.leading() == 1
        assert d.constant()

    def test_gaussian_coefficients(self):
        i = GRat(0, 1)
        A = [[HPoly({1: i}), HPoly({0: GRat(1)})],
             [HPoly.zero(), HPoly({1: GRat(2, 1)})]]
        res = certify(A, HPoly)
        assert res.rank == 2


class TestRandomCertification:
    def test_polynomial_ring(self, sampler):
        for _ in range(40):
            rows = sampler.rng.randint(1, 4)
            cols = sampler.rng.randint(1, 4)
            A = [[HPoly({j: sampler.fraction() for j in range(3)})
                  for _ in range(cols)] for _ in range(rows)]
            certify(A, HPoly)

    def test_laurent_ring(self, sampler):
        for _ in range(25):
            rows = sampler.rng.randint(1, 4)
            cols = sampler.rng.randint(1, 4)
            A = [[HLaurent({j: sampler.fraction() for j in range(-1, 2)})
                  for _ in range(cols)] for _ in range(rows)]
            certify(A, HLaurent)

    def test_rectangular_shapes(self, sampler):
        for rows, cols in [(1, 4), (4, 1), (2, 5), (5, 2)]:
            A = [[HPoly({j: sampler.fraction() for j in range(2)})
                  for _ in range(cols)] for _ in range(rows)]
            res = certify(A, HPoly)
            assert res.shape == (rows, cols)


class TestSolve:
    def test_solvable(self):
        A = [[h(), one], [zero, h()]]
        x = solve_linear(A, [h() * 2, HPoly({2: 1})])
        assert x is not None
        assert x[0] == HPoly.one() and x[1] == h()

    def test_unsolvable(self):
        A = [[h(), one], [zero, h()]]
        assert solve_linear(A, [one, one]) is None

    def test_unsolvable_over_poly_solvable_over_laurent(self):
        A = [[h()]]
        assert solve_linear(A, [one], HPoly) is None
        x = solve_linear([[HLaurent({1: Fraction(1)})]], [HLaurent.one()],
                         HLaurent)
        assert x is not None and x[0] == HLaurent({-1: Fraction(1)})

    def test_random_solvable(self, sampler):
        for _ in range(25):
            ring = HLaurent if sampler.rng.randint(0, 1) else HPoly
            lo = -2 if ring is HLaurent else 0
            rows = sampler.rng.randint(1, 4)
            cols = sampler.rng.randint(1, 4)
            A = [[ring({j: sampler.fraction() for j in range(lo, 2)})
                  for _ in range(cols)] for _ in range(rows)]
            x0 = [ring({j: sampler.fraction() for j in range(lo, 2)})
                  for _ in range(cols)]
            b = [sum((A[i][j] * x0[j] for j in range(cols)), start=ring.zero())
                 for i in range(rows)]
            x = solve_linear(A, b, ring)
            assert x is not None
            got = [sum((A[i][j] * x[j] for j in range(cols)), start=ring.zero())
                   for i in range(rows)]
            assert all(u == v for u, v in zip(got, b))


class TestRankOracle:
    def test_rank_drops(self):
        A = [[h(), h()], [h(), h()]]
        assert rank_fraction_field(A) == 1
        assert smith_normal_form(A, HPoly).rank == 1

    def test_empty(self):
        assert rank_fraction_field([]) == 0

    def test_laurent_units_not_shifted_per_entry(self):
        # [[1, 1], [h^-1, 1]] has det 1 - h^-1 != 0, so rank 2; a naive
        # per-entry unit shift collapses it to rank 1
        one = HLaurent.one()
        A = [[one, one], [HLaurent({-1: Fraction(1)}), one]]
        assert rank_fraction_field(A) == 2
        assert smith_normal_form(A, HLaurent).rank == 2
