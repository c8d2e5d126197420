"""Quantum Chern-Weil: curvature, covariant derivative, characteristic
forms, gauge behaviour, transgression."""

from fractions import Fraction

import pytest

from qexterior.calculus import quantum_d
from qexterior.chern import (QConnection, char_form, char_form_certificate,
                             covariant_square_check, gauge_char_diagnostic,
                             gauge_transform, quantum_covariant_d,
                             quantum_curvature, transgression_check)
from qexterior.coeffs import FourierCoeff
from qexterior.forms import HForm
from qexterior.models import PoissonModel
from qexterior.sampling import Sampler


@pytest.fixture(scope="module")
def t2():
    return PoissonModel.darboux_torus(1)


def rand_connection(s, model, rank):
    return QConnection(model, [[s.model_form(model, degree=1, h_max=0)
                                for _ in range(rank)] for _ in range(rank)])


class TestCurvature:
    def test_zero_connection(self, t2):
        F = quantum_curvature(QConnection.zero(t2, 2))
        assert all(x.is_zero() for row in F for x in row)

    def test_rank1_is_dh_theta(self, t2):
        theta = t2.form_monomial([1], FourierCoeff.character(2, (0, 1)))
        F = quantum_curvature(QConnection(t2, [[theta]]))
        assert F[0][0] == quantum_d(theta, t2)

    def test_rank2_constant_matrices(self, t2):
        A = [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(-1)]]
        B = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(1)]]
        theta = [[t2.form_monomial([1], A[i][j]) +
                  t2.form_monomial([2], B[i][j]) for j in range(2)]
                 for i in range(2)]
        F = quantum_curvature(QConnection(t2, theta))
        comm = [[sum(A[i][l] * B[l][j] - B[i][l] * A[l][j] for l in range(2))
                 for j in range(2)] for i in range(2)]
        w12 = t2.constant_bivector().entry(1, 2)
        for i in range(2):
            for j in range(2):
                expect = t2.form_monomial([1, 2], comm[i][j]) + \
                    t2.form_scalar(comm[i][j] * w12).h_shift(1)
                assert F[i][j] == expect

    def test_entries_are_even_degree_two(self, t2):
        s = Sampler(3)
        conn = rand_connection(s, t2, 2)
        for row in quantum_curvature(conn):
            for entry in row:
                if entry:
                    assert entry.graded_degree() == 2

    def test_connection_validation(self, t2):
        with pytest.raises(ValueError):
            QConnection(t2, [[t2.form_monomial([1, 2])]])
        with pytest.raises(ValueError):
            QConnection(t2, [[t2.form_monomial([1]).h_shift(1)]])


class TestCovariantDerivative:
    def test_zero_connection_reduces_to_dh(self, t2):
        s = Sampler(5)
        conn = QConnection.zero(t2, 2)
        phi = [s.model_form(t2, h_max=0) for _ in range(2)]
        got = quantum_covariant_d(phi, conn)
        assert got == [quantum_d(p, t2) for p in phi]

    def test_unit_section(self, t2):
        theta = t2.form_monomial([1], FourierCoeff.character(2, (0, 1)))
        conn = QConnection(t2, [[theta]])
        assert quantum_covariant_d([t2.form_scalar(1)], conn) == [theta]

    def test_square_equals_curvature(self, t2):
        s = Sampler(7)
        t4 = PoissonModel.darboux_torus(2)
        for model in (t2, t4):
            for _ in range(6):
                rank = s.rng.randint(1, 3)
                conn = rand_connection(s, model, rank)
                phi = [s.model_form(model, degree=s.rng.randint(0, 2), h_max=0)
                       for _ in range(rank)]
                assert covariant_square_check(phi, conn)

    def test_shape_mismatch(self, t2):
        conn = QConnection.zero(t2, 2)
        with pytest.raises(ValueError):
            quantum_covariant_d([t2.form_scalar(1)], conn)


class TestCharForms:
    def test_zero_curvature(self, t2):
        F = quantum_curvature(QConnection.zero(t2, 2))
        assert char_form(F, 1, t2).is_zero()

    def test_rank1_closedness_forced(self, t2):
        theta = t2.form_monomial([1], FourierCoeff.character(2, (0, 1)))
        F = quantum_curvature(QConnection(t2, [[theta]]))
        form, cert = char_form_certificate(F, 1, t2)
        assert form == F[0][0]
        assert cert.is_zero()

    def test_closedness_random(self, t2):
        s = Sampler(11)
        for _ in range(5):
            rank = s.rng.randint(1, 3)
            F = quantum_curvature(rand_connection(s, t2, rank))
            for k in (1, 2, 3):
                assert quantum_d(char_form(F, k, t2), t2).is_zero()

    def test_h_zero_gives_classical_chern_weil(self, t2):
        from qexterior.calculus import exterior_d
        from qexterior.forms import wedge
        s = Sampler(13)
        rank = 2
        conn = rand_connection(s, t2, rank)
        F = quantum_curvature(conn)
        # classical curvature: d theta + theta ^ theta
        Fc = [[exterior_d(conn.theta[i][j]) for j in range(rank)]
              for i in range(rank)]
        for i in range(rank):
            for j in range(rank):
                for l in range(rank):
                    Fc[i][j] = Fc[i][j] + wedge(conn.theta[i][l],
                                                conn.theta[l][j])
        for i in range(rank):
            for j in range(rank):
                assert F[i][j].at_h(0) == Fc[i][j]

    def test_power_validation(self, t2):
        F = quantum_curvature(QConnection.zero(t2, 1))
        with pytest.raises(ValueError):
            char_form(F, 0, t2)


class TestGauge:
    def test_constant_gauge_invariance(self, t2):
        s = Sampler(17)
        for _ in range(4):
            conn = rand_connection(s, t2, 2)
            G = s.invertible_matrix(2)
            for k in (1, 2):
                diag = gauge_char_diagnostic(conn, G, k)
                assert diag["agree"]

    def test_gauge_of_zero_is_pure_gauge(self, t2):
        # theta = G^{-1} dG for constant G is zero
        conn = QConnection.zero(t2, 2)
        G = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
        new = gauge_transform(conn, G)
        assert all(x.is_zero() for row in new.theta for x in row)

    def test_nonconstant_gauge_diagnostic_recorded(self, t2):
        # unipotent gauge with an oscillating off-diagonal entry
        conn = QConnection.zero(t2, 2)
        c = FourierCoeff.character(2, (1, 0))
        G = [[t2.form_scalar(1), t2.form_scalar(c)],
             [HForm.zero(2), t2.form_scalar(1)]]
        Ginv = [[t2.form_scalar(1), t2.form_scalar(c) * Fraction(-1)],
                [HForm.zero(2), t2.form_scalar(1)]]
        diag = gauge_char_diagnostic(conn, G, 1, g_inverse=Ginv)
        assert "agree" in diag
        new = gauge_transform(conn, G, Ginv)
        assert any(not x.is_zero() for row in new.theta for x in row)

    def test_bad_inverse_rejected(self, t2):
        conn = QConnection.zero(t2, 2)
        G = [[t2.form_scalar(1), t2.form_scalar(1)],
             [HForm.zero(2), t2.form_scalar(1)]]
        with pytest.raises(ValueError):
            gauge_transform(conn, G, g_inverse=G)


class TestTransgression:
    def test_equal_connections(self, t2):
        s = Sampler(19)
        conn = rand_connection(s, t2, 2)
        res = transgression_check(conn, conn, 1)
        assert res.ok
        assert res.eta.is_zero()

    def test_rank1_linear_case(self, t2):
        s = Sampler(23)
        th0 = s.model_form(t2, degree=1, h_max=0)
        th1 = s.model_form(t2, degree=1, h_max=0)
        res = transgression_check(QConnection(t2, [[th0]]),
                                  QConnection(t2, [[th1]]), 1)
        assert res.ok
        delta = quantum_d(th1, t2) - quantum_d(th0, t2)
        assert quantum_d(res.eta, t2) == delta.to_laurent()

    def test_rank2_random_pair_recorded(self, t2):
        s = Sampler(29)
        c0 = rand_connection(s, t2, 2)
        c1 = rand_connection(s, t2, 2)
        res = transgression_check(c0, c1, 1)
        if res.ok:
            delta = char_form(quantum_curvature(c1), 1, t2) - \
                char_form(quantum_curvature(c0), 1, t2)
            assert quantum_d(res.eta, t2) == delta.to_laurent()
        else:
            assert res.obstruction_mode is not None

    def test_obstruction_path(self, t2):
        # characteristic classes are connection-independent, so honest
        # pairs never obstruct; drive the solver directly with the
        # invariant volume class, which is closed but not exact
        from qexterior.chern import solve_dh_primitive
        res = solve_dh_primitive(t2, t2.form_monomial([1, 2]))
        assert not res.ok
        assert res.obstruction_mode == (0, 0)
