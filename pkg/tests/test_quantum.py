#!/usr/bin/env python3

"""
Test the 'quantum.py' code.
"""

import sys
import os
import math
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), '..'))
import quantum
import utils
from quantum import QuantumParams, GridSpec
from errors import ArgumentError, DomainError, GridError

import numpy as np
import unittest


class TestParams(unittest.TestCase):
    def test_beta(self):
        """beta (beta + lambda) = alpha^2 with beta > 0."""

        for (lam, alpha) in ((0.0, 1.5), (-1.0, 0.3), (2.0, 1.0), (-3.0, 4.0)):
            beta = quantum.beta_from_alpha(alpha, lam)
            self.assertGreater(beta, 0.0)
            actual = beta*(beta + lam)
            msg = ('Given lambda=%s, alpha=%s, expected %s, got %s'
                   % (lam, alpha, alpha*alpha, actual))
            self.assertAlmostEqual(actual, alpha*alpha, places=13, msg=msg)

        with self.assertRaises(ArgumentError):
            quantum.beta_from_alpha(0.0, 1.0)

    def test_constructors(self):
        """from_alpha and from_beta agree, inconsistent triples are refused."""

        a = QuantumParams.from_alpha(1.0, math.sqrt(12.0))
        self.assertAlmostEqual(a.beta, 3.0, places=14)
        b = QuantumParams.from_beta(1.0, 3.0)
        self.assertAlmostEqual(b.alpha, math.sqrt(12.0), places=14)
        self.assertAlmostEqual(b.threshold, 6.0, places=13)
        self.assertIsNone(QuantumParams.from_beta(-1.0, 2.0).threshold)

        with self.assertRaises(ArgumentError):
            QuantumParams(0.0, 1.0, 2.0)
        with self.assertRaises(ArgumentError):
            QuantumParams.from_beta(-1.0, 0.5)
        with self.assertRaises(ArgumentError):
            QuantumParams.from_beta(1.0, -1.0)


class TestLadder(unittest.TestCase):
    def test_harmonic(self):
        """lambda = 0 gives beta (n + 1/2)."""

        p = QuantumParams.from_alpha(0.0, 2.0)
        actual = quantum.ladder_spectrum(p, 4)
        self.assertTrue(np.allclose(actual, [1.0, 3.0, 5.0, 7.0], rtol=0, atol=1e-14))

    def test_values(self):
        """E_n = n beta - n^2 lambda/2 + beta/2."""

        p = QuantumParams.from_beta(1.0, 3.0)
        expected = [1.5, 4.0, 5.5]
        actual = quantum.ladder_spectrum(p, 3)
        msg = 'Expected %s, got %s' % (str(expected), str(actual))
        self.assertTrue(np.allclose(actual, expected, rtol=0, atol=1e-14), msg)

        with self.assertRaises(ArgumentError):
            quantum.ladder_spectrum(p, 0)

    def test_shape_invariance_ladder(self):
        """Summing the remainders R(beta - k lambda) rebuilds the ladder."""

        for (lam, beta) in ((0.0, 1.0), (-1.0, 2.0), (1.0, 3.0), (0.3, 7.0)):
            p = QuantumParams.from_beta(lam, beta)
            direct = quantum.ladder_spectrum(p, 6)
            built = quantum.shape_invariance_ladder(p, 6)
            self.assertLess(np.max(np.abs(direct - built)), 1e-12)

        self.assertEqual(quantum.shape_invariance_remainder(2.0, 1.0), 2.5)

    def test_bound_states(self):
        """Level n is bound while beta - n lambda > 0."""

        for (lam, beta, expected) in ((1.0, 1.0, 1), (1.0, 3.0, 3), (1.0, 2.5, 3),
                                      (0.5, 1.2, 3), (1.0, 3.0 + 1e-12, 3)):
            p = QuantumParams.from_beta(lam, beta)
            actual = quantum.bound_state_count(p)
            msg = ('Given lambda=%s, beta=%s, expected %s, got %s'
                   % (lam, beta, expected, actual))
            self.assertEqual(actual, expected, msg)

            # the last bound level lies below the threshold
            top = quantum.ladder_spectrum(p, actual)[-1]
            self.assertLess(top, p.threshold)

        for lam in (0.0, -1.0):
            p = QuantumParams.from_beta(lam, 2.0)
            self.assertEqual(quantum.bound_state_count(p), quantum.Infinite)


class TestCoordinates(unittest.TestCase):
    def test_round_trip(self):
        """x_of_q inverts adapted_coordinate."""

        x = np.linspace(-0.99, 0.99, 41)
        for lam in (-1.0, 0.0, 2.0):
            back = quantum.x_of_q(quantum.adapted_coordinate(x, lam), lam)
            self.assertLess(np.max(np.abs(back - x)), 1e-13)

    def test_domain(self):
        """lambda < 0 confines x and q."""

        with self.assertRaises(DomainError):
            quantum.adapted_coordinate(1.5, -1.0)
        with self.assertRaises(DomainError):
            quantum.x_of_q(2.0, -1.0)
        self.assertEqual(quantum.q_limit(-4.0), 0.25*math.pi)
        self.assertEqual(quantum.q_limit(0.5), math.inf)

    def test_flat_kinetic_term(self):
        """(1 + lambda x^2) f'' + lambda x f' is d^2/dq^2 in the adapted coordinate."""

        def F(q):
            return math.sin(q) + 0.1*q**3

        def F2(q):
            return -math.sin(q) + 0.6*q

        h = 1e-3
        for lam in (-0.9, -0.2, 0.5, 2.0):
            def f(x):
                return F(float(quantum.adapted_coordinate(x, lam)))

            def df(x):
                return utils.central_diff4(f, x, h=h)

            for q in np.linspace(-0.6, 0.6, 7):
                x = float(quantum.x_of_q(q, lam))
                actual = (1.0 + lam*x*x)*utils.central_diff4(df, x, h=h) + lam*x*df(x)
                msg = ('Given lambda=%s, q=%s, expected %s, got %s'
                       % (lam, q, F2(q), actual))
                self.assertAlmostEqual(actual, F2(q), delta=1e-7, msg=msg)

    def test_potential(self):
        """potential_q matches (alpha^2/2) x^2/(1 + lambda x^2)."""

        q = np.linspace(-1.2, 1.2, 25)
        for lam in (-1.0, 0.0, 0.7):
            p = QuantumParams.from_beta(lam, 2.0)
            x = quantum.x_of_q(q, lam)
            expected = 0.5*p.alpha*p.alpha*x*x/(1 + lam*x*x)
            self.assertLess(np.max(np.abs(quantum.potential_q(q, p) - expected)), 1e-12)

    def test_superpotential(self):
        """V = (W^2 - W')/2 + beta/2."""

        for lam in (-1.0, 0.0, 0.7):
            p = QuantumParams.from_beta(lam, 2.0)
            for q in (-1.0, -0.3, 0.0, 0.5, 1.2):
                W = float(quantum.superpotential_q(q, p.beta, lam))
                dW = utils.central_diff4(lambda u: float(quantum.superpotential_q(u, p.beta, lam)), q)
                expected = float(quantum.potential_q(q, p))
                actual = 0.5*(W*W - dW) + 0.5*p.beta
                msg = ('Given lambda=%s at q=%s, expected %s, got %s'
                       % (lam, q, expected, actual))
                self.assertAlmostEqual(actual, expected, places=8, msg=msg)

    def test_groundstate(self):
        """psi0 at a few points."""

        p = QuantumParams.from_beta(-1.0, 2.0)
        self.assertAlmostEqual(float(quantum.groundstate_psi0(0.5, p)), 0.75, places=14)
        p = QuantumParams.from_beta(0.0, 2.0)
        self.assertAlmostEqual(float(quantum.groundstate_psi0(1.0, p)), math.exp(-1.0),
                               places=14)


class TestGrid(unittest.TestCase):
    def test_grid_spec(self):
        """Too few points or a bad half-width are refused."""

        for (n, q_max) in ((2, None), (3.5, None), (100, -1.0), (100, math.inf)):
            with self.assertRaises(GridError):
                GridSpec(n, q_max)

    def test_points(self):
        """N interior points, h = 2L/(N+1)."""

        grid = quantum.Grid(5.0, 9)
        self.assertEqual(grid.h, 1.0)
        self.assertTrue(np.allclose(grid.q, np.arange(-4.0, 5.0)))

        p = QuantumParams.from_beta(-1.0, 2.0)
        grid = quantum.make_grid(p, GridSpec(99, q_max=3.0))
        self.assertEqual(grid.half_width, 0.5*math.pi)

        p = QuantumParams.from_beta(0.0, 1.0)
        grid = quantum.make_grid(p, GridSpec(99, q_max=3.0))
        self.assertEqual(grid.half_width, 3.0)
        grid = quantum.make_grid(p, GridSpec(99))
        self.assertGreaterEqual(grid.half_width, quantum.DefaultQMax)

    def test_matrix(self):
        """The tridiagonal product and dense form agree."""

        m = quantum.TridiagonalMatrix([2.0, 3.0, 4.0], [-1.0, 0.5])
        u = np.array([1.0, -2.0, 0.5])
        self.assertTrue(np.allclose(m.dot(u), m.to_dense() @ u))
        self.assertEqual(len(m), 3)
        with self.assertRaises(GridError):
            quantum.TridiagonalMatrix([1.0, 2.0], [1.0, 2.0])

    def test_eig_lowest(self):
        """Bisection eigenvalues against a dense solver."""

        p = QuantumParams.from_beta(0.5, 2.0)
        matrix = quantum.discretize_hamiltonian(p, GridSpec(60, q_max=6.0))
        expected = np.linalg.eigvalsh(matrix.to_dense())[:4]
        actual = quantum.eig_lowest(matrix, 4)
        self.assertLess(np.max(np.abs(actual - expected)), 1e-9)

        for k in (0, 61, 1.5):
            with self.assertRaises(ArgumentError):
                quantum.eig_lowest(matrix, k)


class TestSpectrum(unittest.TestCase):
    def test_ladder_vs_numeric(self):
        """The diagonalised levels match the ladder."""

        for (lam, beta) in ((0.0, 1.0), (-1.0, 2.0), (1.0, 3.0)):
            p = QuantumParams.from_beta(lam, beta)
            report = quantum.spectrum_report(p, GridSpec(3000), 5)
            msg = ('Given lambda=%s, beta=%s, differences %s'
                   % (lam, beta, str(report.differences)))
            self.assertLess(report.max_difference, 1e-3, msg)

    def test_bound_levels_only(self):
        """For lambda > 0 only bound levels are compared."""

        p = QuantumParams.from_beta(1.0, 2.5)
        report = quantum.spectrum_report(p, GridSpec(3000), 5)
        self.assertEqual(len(report.ladder), 3)
        self.assertEqual(report.bound_states, 3)
        self.assertAlmostEqual(report.threshold, 4.375, places=12)
        self.assertLess(report.max_difference, 1e-3)

        d = report.to_dict()
        for key in ('lambda', 'alpha', 'beta', 'grid', 'ladder', 'numeric',
                    'differences', 'max_difference', 'bound_states', 'threshold'):
            self.assertIn(key, d)
        self.assertEqual(d['grid']['n_points'], 3000)

    def test_residuals(self):
        """The ground state and the factorisation on the grid."""

        trials = (lambda x: (1.0 - x*x)**2, lambda x: x*(1.0 - x*x)**2)
        p = QuantumParams.from_beta(-1.0, 2.0)
        self.assertLess(quantum.groundstate_residual(p, GridSpec(2000)), 1e-5)
        self.assertLess(quantum.annihilation_residual(p, GridSpec(2000)), 1e-4)
        self.assertLess(quantum.shape_invariance_residual(p, GridSpec(2000), trials), 1e-4)

        p = QuantumParams.from_beta(0.0, 1.0)
        self.assertLess(quantum.annihilation_residual(p, GridSpec(2000)), 1e-6)
        trials = (lambda x: np.exp(-0.5*x*x),)
        self.assertLess(quantum.shape_invariance_residual(p, GridSpec(2000), trials), 1e-6)

    def test_derivative(self):
        """The 4th-order stencil is exact for cubics away from the ends."""

        h = 0.1
        q = np.arange(-2.0, 2.05, h)
        d = quantum.derivative_q(q**3, h)
        self.assertTrue(np.allclose(d[2:-2], 3*q[2:-2]**2, rtol=0, atol=1e-10))


if __name__ == '__main__':
    unittest.main()
