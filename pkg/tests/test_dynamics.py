#!/usr/bin/env python3

"""
Test the 'dynamics.py' code.
"""

import sys
import os
import math
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), '..'))
import dynamics
import integrators
import invariants
from model import (DeformParams, NonstdParams, State1D, State2D, PhaseState2D,
                   Profile)
from errors import (AmplitudeError, DomainError, PoleError, ArgumentError,
                    SingularCoefficientError, SingularLevelSetError)

import numpy as np
import unittest


class TestML1D(unittest.TestCase):
    def test_frequency(self):
        """omega^2 (1 + lambda A^2) = alpha^2."""

        for (A, lam, alpha) in ((1.0, 0.5, 1.0), (0.5, -1.0, 2.0), (3.0, 0.0, 1.5)):
            p = DeformParams(lam, alpha)
            w = dynamics.ml1d_frequency(A, p)
            actual = w*w*(1 + lam*A*A)
            msg = ('Given A=%s, lambda=%s, expected %s, got %s'
                   % (str(A), str(lam), str(alpha*alpha), str(actual)))
            self.assertAlmostEqual(actual, alpha*alpha, places=13, msg=msg)

        with self.assertRaises(AmplitudeError):
            dynamics.ml1d_frequency(2.0, DeformParams(-0.5, 1.0))

    def test_exact_solution(self):
        """x = A cos(omega t + phi) solves the equation of motion."""

        for lam in (-0.5, 0.0, 0.5):
            p = DeformParams(lam, 1.0)
            t = np.linspace(0.0, 10.0, 201)
            state = dynamics.ml1d_exact(t, 1.0, 0.3, p)
            accel = dynamics.ml1d_exact_acceleration(t, 1.0, 0.3, p)
            residual = dynamics.eom_residual(state, accel,
                                             lambda s: dynamics.ml1d_rhs(s, p))
            msg = 'Given lambda=%s, residual %s' % (str(lam), str(residual))
            self.assertLess(residual, 1e-12, msg)

            energies = [dynamics.ml1d_energy(State1D(x, v), p)
                        for (x, v) in zip(state.x, state.v)]
            self.assertLess(max(energies) - min(energies), 1e-13)

    def test_domain(self):
        """lambda < 0 with |x| >= 1/sqrt(-lambda) is outside the domain."""

        with self.assertRaises(DomainError):
            dynamics.ml1d_rhs(State1D(1.5, 0.0), DeformParams(-1.0, 1.0))


class TestML2D(unittest.TestCase):
    def test_legendre(self):
        """The Legendre map and its inverse round trip."""

        s = State2D(0.3, -0.4, 0.7, 0.2)
        for lam in (-0.9, 0.0, 2.0):
            back = dynamics.inverse_legendre_2d(dynamics.legendre_2d(s, lam), lam)
            actual = np.max(np.abs(back.as_array() - s.as_array()))
            msg = 'Given lambda=%s, round trip error %s' % (str(lam), str(actual))
            self.assertLess(actual, 1e-14, msg)

    def test_energy(self):
        """The Lagrangian energy equals H at the Legendre image."""

        s = State2D(0.3, -0.4, 0.7, 0.2)
        for lam in (-0.9, 0.5):
            p = DeformParams(lam, 1.3)
            expected = dynamics.ml2d_lagrangian_energy(s, p)
            actual = dynamics.hamiltonian_2d(dynamics.legendre_2d(s, lam), p)
            self.assertAlmostEqual(actual, expected, places=12)

    def test_harmonic_limit(self):
        """lambda = 0 with V = r^2 is the isotropic oscillator."""

        s = PhaseState2D(0.3, -0.4, 0.7, 0.2)
        p = DeformParams(0.0, 1.7)
        expected = dynamics.harmonic2d_rhs(s, 1, 1, 1.7)
        actual = dynamics.ml2d_hamiltonian_rhs(s, p, dynamics.HarmonicPotential())
        for (a, e) in zip(actual, expected):
            self.assertAlmostEqual(a, e, places=14)

    def test_gradients(self):
        """Analytic oscillator gradient against central differences."""

        V = dynamics.OscillatorPotential(-0.5)
        numeric = dynamics.CallablePotential(V.value)
        (gx, gy) = V.gradient(0.4, 0.9)
        (nx, ny) = numeric.gradient(0.4, 0.9)
        self.assertAlmostEqual(gx, nx, places=9)
        self.assertAlmostEqual(gy, ny, places=9)

    def test_as_potential(self):
        """None, Potential objects and callables all become a Potential."""

        self.assertIsInstance(dynamics.as_potential(None, 0.5),
                              dynamics.OscillatorPotential)
        V = dynamics.HarmonicPotential()
        self.assertIs(dynamics.as_potential(V), V)
        self.assertEqual(dynamics.as_potential(lambda x, y: x*y)(2.0, 3.0), 6.0)


class TestNonstandard(unittest.TestCase):
    def test_free_solution(self):
        """x = 2t/(k t^2 - E) solves x'' + 3kxx' + k^2x^3 = 0."""

        (E, k) = (1.0, -0.5)
        t = np.linspace(-5.0, 5.0, 401)
        state = dynamics.nonstd1d_exact_free(t, E, k)
        accel = dynamics.nonstd1d_free_acceleration(t, E, k)
        residual = dynamics.eom_residual(
                        state, accel,
                        lambda s: (s.v, dynamics.nonstd_omega_accel(s.x, s.v, k, 0.0)))
        self.assertLess(residual, 1e-11)

    def test_free_pole(self):
        """A sign change of k t^2 - E is a pole."""

        with self.assertRaises(PoleError):
            dynamics.nonstd1d_exact_free(np.linspace(0.0, 3.0, 10), 1.0, 1.0)

    def test_omega_solution(self):
        """The trigonometric solution of the omega equation."""

        (E, phi, k, omega) = (1.0, 0.2, 0.3, 1.0)
        t = np.linspace(0.0, 20.0, 401)
        state = dynamics.nonstd1d_exact_omega(t, E, phi, k, omega)
        accel = dynamics.nonstd1d_omega_acceleration(t, E, phi, k, omega)
        residual = dynamics.eom_residual(
                        state, accel,
                        lambda s: (s.v, dynamics.nonstd_omega_accel(s.x, s.v, k, omega)))
        self.assertLess(residual, 1e-12)

        with self.assertRaises(ArgumentError):
            dynamics.nonstd1d_exact_omega(t, 0.0, phi, k, omega)
        with self.assertRaises(PoleError):
            dynamics.nonstd1d_exact_omega(t, 4.0, phi, 0.6, omega)

    def test_general_form(self):
        """The general nonstandard equation matches the divided-through form."""

        (k, omega) = (0.3, 1.2)
        (alpha, U) = dynamics.nonstd_channel_profiles(k, omega)
        for (x, v) in ((0.5, 0.1), (-1.0, 2.0), (0.0, -0.7)):
            (_, actual) = dynamics.nonstd1d_rhs(State1D(x, v), alpha, U)
            expected = dynamics.nonstd_omega_accel(x, v, k, omega)
            self.assertAlmostEqual(actual, expected, places=13)

        (alpha, U) = dynamics.nonstd_channel_profiles(0.4, 0.0)
        (_, actual) = dynamics.nonstd1d_rhs(State1D(0.5, 0.1), alpha, U)
        self.assertAlmostEqual(actual, dynamics.nonstd_omega_accel(0.5, 0.1, 0.4, 0.0),
                               places=13)

    def test_singular(self):
        """alpha = 0 and the level set alpha v + U = 0 are refused."""

        with self.assertRaises(SingularCoefficientError):
            dynamics.nonstd1d_rhs(State1D(1.0, 1.0), Profile.constant(0.0),
                                  Profile.quadratic(1.0))
        with self.assertRaises(SingularLevelSetError):
            dynamics.energy_nonstd(State1D(1.0, -1.0), Profile.constant(1.0),
                                   Profile.quadratic(1.0))

    def test_energy(self):
        """E_L along the free solution equals E."""

        (E, k) = (1.0, -0.5)
        (alpha, U) = dynamics.nonstd_channel_profiles(k, 0.0)
        state = dynamics.nonstd1d_exact_free(np.linspace(-2.0, 2.0, 9), E, k)
        for (x, v) in zip(state.x, state.v):
            actual = dynamics.energy_nonstd(State1D(x, v), alpha, U)
            self.assertAlmostEqual(actual, E, places=12)

    def test_nonstd2d(self):
        """Channels are independent, with frequencies n_i omega0."""

        p = NonstdParams(k1=0.1, k2=0.2, omega0=0.5, n1=1, n2=2)
        s = State2D(0.5, 0.3, 0.1, 0.2)
        (_, _, ax, ay) = dynamics.nonstd2d_rhs(s, p)
        self.assertEqual(ax, dynamics.nonstd_omega_accel(0.5, 0.1, 0.1, 0.5))
        self.assertEqual(ay, dynamics.nonstd_omega_accel(0.3, 0.2, 0.2, 1.0))


class TestSystemRHS(unittest.TestCase):
    def test_tags(self):
        """Unknown tags are refused."""

        with self.assertRaises(ValueError):
            dynamics.SystemRHS('pendulum', lambda s: (s.v, -s.x), State1D)

    def test_call(self):
        """Arrays in, arrays out, with the guard evaluated per state."""

        system = dynamics.ml1d_system(DeformParams(-0.5, 1.0))
        dy = system(0.0, np.array([1.0, 0.0]))
        self.assertTrue(np.allclose(dy, [0.0, -2.0]))
        self.assertEqual(float(system.guard_values(np.array([1.0, 0.0]))[0]), 0.5)

        # no guard for lambda >= 0
        system = dynamics.ml1d_system(DeformParams(0.5, 1.0))
        self.assertIsNone(system.guard_values(np.array([1.0, 0.0])))

    def test_general_nonstd(self):
        """The general 1/(alpha v + U) system conserves E_L."""

        alpha = Profile(lambda x: 1.0 + 0.5*x*x, lambda x: x)
        U = Profile.quadratic(1.0)
        system = dynamics.nonstd1d_system(alpha, U)
        self.assertEqual(system.tag, 'nonstd1d')
        cfg = integrators.IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14)
        traj = integrators.integrate_adaptive(system, 0.0, State1D(0.5, 0.3), 3.0, cfg)
        report = invariants.drift_report(
                        traj, lambda s: dynamics.energy_nonstd(s, alpha, U), 'E_L')
        self.assertLess(report.max_rel_drift, 1e-8)

    def test_harmonic_energies(self):
        """E_x and E_y of the baseline oscillator."""

        s = PhaseState2D(1.0, 1.0, 0.0, 1.0)
        (ex, ey) = dynamics.harmonic_energies(s, 2, 3, 1.0)
        self.assertEqual((ex, ey), (2.0, 5.0))


if __name__ == '__main__':
    unittest.main()
