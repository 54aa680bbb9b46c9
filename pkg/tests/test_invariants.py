#!/usr/bin/env python3

"""
Test the 'invariants.py' code.
"""

import sys
import os
import math
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), '..'))
import utils
import invariants
import integrators
import dynamics
from model import (DeformParams, NonstdParams, State1D, State2D, PhaseState2D,
                   Trajectory)
from errors import DomainError, SingularLevelSetError

import numpy as np
import unittest


class TestDriftReport(unittest.TestCase):
    def test_report(self):
        """Absolute and relative drift against the first sample."""

        traj = Trajectory([0.0, 1.0, 2.0], [[2.0, 0.0], [2.5, 0.0], [1.0, 0.0]], State1D)
        report = invariants.drift_report(traj, lambda s: s.x, name='x')
        self.assertEqual(report.initial, 2.0)
        self.assertEqual(report.max_abs_drift, 1.0)
        self.assertEqual(report.max_rel_drift, 0.5)
        self.assertEqual(report.samples, 3)

        d = report.to_dict()
        self.assertEqual(sorted(d), ['errors', 'initial', 'invariant', 'max_abs_drift',
                                     'max_rel_drift', 'samples'])
        self.assertEqual(d['invariant'], 'x')

    def test_complex(self):
        """Complex invariants drift by modulus."""

        traj = Trajectory([0.0, 1.0], [[1.0, 0.0], [0.0, 1.0]], State1D)
        report = invariants.drift_report(traj, lambda s: complex(s.x, s.v))
        self.assertAlmostEqual(report.max_abs_drift, math.sqrt(2.0), places=15)

    def test_failures(self):
        """Samples the evaluator refuses are recorded and skipped."""

        def picky(s):
            if s.x < 0:
                raise SingularLevelSetError('negative x')
            return s.x

        traj = Trajectory([0.0, 1.0, 2.0], [[1.0, 0.0], [-1.0, 0.0], [1.5, 0.0]], State1D)
        report = invariants.drift_report(traj, picky)
        self.assertEqual(report.samples, 2)
        self.assertEqual(report.max_abs_drift, 0.5)
        self.assertEqual(len(report.errors), 1)
        self.assertEqual(report.errors[0][0], 1)
        self.assertEqual(report.name, 'picky')

        traj = Trajectory([0.0], [[-1.0, 0.0]], State1D)
        report = invariants.drift_report(traj, picky)
        self.assertIsNone(report.initial)
        self.assertTrue(math.isnan(report.max_abs_drift))

        # no rebasing on a later sample when the first one fails
        traj = Trajectory([0.0, 1.0, 2.0], [[-1.0, 0.0], [1.0, 0.0], [1.5, 0.0]], State1D)
        report = invariants.drift_report(traj, picky)
        self.assertIsNone(report.initial)
        self.assertTrue(math.isnan(report.max_abs_drift))
        self.assertTrue(math.isnan(report.max_rel_drift))
        self.assertEqual(report.samples, 2)
        self.assertEqual([i for (i, _) in report.errors], [0])
        self.assertIsNone(report.to_dict()['initial'])


class TestDeformedIntegrals(unittest.TestCase):
    def test_harmonic_limit(self):
        """At lambda = 0, K1 = vx + i alpha x."""

        p = DeformParams(0.0, 2.0)
        (k1, k2) = invariants.eval_K(State2D(0.3, -0.2, 1.0, 0.5), p)
        self.assertEqual(k1, complex(1.0, 0.6))
        self.assertEqual(k2, complex(0.5, -0.4))

    def test_energy_relation(self):
        """I1 + I2 = 2E + lambda J^2."""

        rng = np.random.default_rng(11)
        for lam in (-0.8, 0.0, 0.7):
            p = DeformParams(lam, 1.3)
            for _ in range(20):
                (x, y) = rng.uniform(-0.5, 0.5, 2)
                (vx, vy) = rng.normal(size=2)
                s = State2D(x, y, vx, vy)
                (i1, i2, i3) = invariants.eval_I123(s, p)
                j = i3 / p.alpha
                expected = 2*dynamics.ml2d_lagrangian_energy(s, p) + lam*j*j
                self.assertAlmostEqual(i1 + i2, expected, places=12)

    def test_phase_state_input(self):
        """A PhaseState2D is mapped to velocities first."""

        p = DeformParams(0.4, 1.0)
        s = State2D(0.3, -0.2, 1.0, 0.5)
        a = invariants.eval_I123(s, p)
        b = invariants.eval_I123(dynamics.legendre_2d(s, p.lam), p)
        for (u, w) in zip(a, b):
            self.assertAlmostEqual(u, w, places=13)

    def test_conservation(self):
        """I1, I2, I3 and K1 conj(K2) stay put along the flow."""

        for lam in (-0.5, 0.5):
            p = DeformParams(lam, 1.0)
            start = dynamics.legendre_2d(State2D(0.9*0.5, 0.3, 0.0, 0.8), lam)
            traj = integrators.integrate_adaptive(dynamics.ml2d_system(p), 0.0,
                                                  start, 20.0)
            self.assertEqual(traj.termination, Trajectory.ReachedT1)
            for (i, name) in enumerate(('I1', 'I2', 'I3')):
                report = invariants.drift_report(
                                traj, lambda s, i=i: invariants.eval_I123(s, p)[i], name)
                msg = ('Given lambda=%s, %s drift %s'
                       % (str(lam), name, str(report.max_abs_drift)))
                self.assertLess(report.max_abs_drift, 1e-8, msg)
            report = invariants.drift_report(traj,
                                             lambda s: invariants.eval_K12(s, p))
            self.assertLess(report.max_abs_drift, 1e-8)

    def test_K_rate(self):
        """dK1/dt = i alpha K1/(1 + lambda r^2) along the flow."""

        p = DeformParams(0.5, 1.0)
        system = dynamics.ml2d_system(p)
        start = np.array([0.4, 0.1, 0.3, 0.7])
        h = 1e-2

        def K1_at(t):
            if t == 0:
                return invariants.eval_K(PhaseState2D.from_array(start), p)[0]
            traj = integrators.integrate_adaptive(system, 0.0, start, t)
            return invariants.eval_K(traj.record(len(traj) - 1), p)[0]

        values = [K1_at(2*h + k*h) for k in (-2, -1, 1, 2)]
        rate = (-values[3] + 8*values[2] - 8*values[1] + values[0]) / (12*h)
        traj = integrators.integrate_adaptive(system, 0.0, start, 2*h)
        mid = traj.record(len(traj) - 1)
        expected = invariants.eval_K_rate(mid, p) * invariants.eval_K(mid, p)[0]
        self.assertLess(abs(rate - expected), 1e-6)

    def test_domain(self):
        """K is undefined outside the disc."""

        with self.assertRaises(DomainError):
            invariants.eval_K(State2D(1.0, 1.0, 0.0, 0.0), DeformParams(-1.0, 1.0))


class TestHarmonic(unittest.TestCase):
    def test_J(self):
        """K_x^n2 conj(K_y)^n1 is constant on the exact motion."""

        values = []
        for t in np.linspace(0.0, 10.0, 11):
            s = PhaseState2D(math.cos(2*t), 0.5*math.cos(3*t + 0.4),
                             -2*math.sin(2*t), -1.5*math.sin(3*t + 0.4))
            values.append(invariants.eval_harmonic_J(s, 2, 3, 1.0))
        values = np.array(values)
        spread = np.max(np.abs(values - values[0])) / abs(values[0])
        self.assertLess(spread, 1e-12)


class TestNonstandard(unittest.TestCase):
    def test_free_integrals(self):
        """E1, E2, I3 and I4 on shifted exact solutions."""

        (k1, E1, k2, E2, t0) = (-0.5, 1.0, -0.3, 2.0, 0.7)
        expected_i4 = 0.5*k1*k2*t0*t0 - 0.5*(k2*E1 + k1*E2)
        for t in np.linspace(-3.0, 3.0, 13):
            cx = dynamics.nonstd1d_exact_free(t, E1, k1)
            cy = dynamics.nonstd1d_exact_free(t - t0, E2, k2)
            s = State2D(float(cx.x), float(cy.x), float(cx.v), float(cy.v))
            (e1, e2, i3, i4) = invariants.eval_nonstd_integrals(s, k1, k2)
            self.assertAlmostEqual(e1, E1, places=12)
            self.assertAlmostEqual(e2, E2, places=12)
            self.assertAlmostEqual(i3, t0, places=12)
            self.assertAlmostEqual(i4, expected_i4, places=12)

    def test_singular(self):
        """The channel denominators may not vanish."""

        with self.assertRaises(SingularLevelSetError):
            invariants.eval_nonstd_integrals(State2D(1.0, 0.0, -1.0, 1.0), 1.0, 1.0)

    def test_rational_K(self):
        """|K_i|^2 = E_i and K1^n2 conj(K2)^n1 is constant."""

        p = NonstdParams(k1=0.2, k2=-0.1, omega0=0.5, n1=1, n2=2)
        (E1, E2) = (1.0, 0.5)
        values = []
        energies = []
        for t in np.linspace(0.0, 12.0, 25):
            cx = dynamics.nonstd1d_exact_omega(t, E1, 0.1, p.k1, p.omega1)
            cy = dynamics.nonstd1d_exact_omega(t, E2, 0.3, p.k2, p.omega2)
            s = State2D(float(cx.x), float(cy.x), float(cx.v), float(cy.v))
            (K1, K2) = invariants.nonstd_K_components(s, p)
            self.assertAlmostEqual(abs(K1)**2, E1, places=12)
            self.assertAlmostEqual(abs(K2)**2, E2, places=12)
            values.append(invariants.eval_nonstd_K(s, p))
            energies.append(invariants.eval_nonstd_channel_energies(s, p))
        values = np.array(values)
        self.assertLess(np.max(np.abs(values - values[0])), 1e-12)
        energies = np.array(energies)
        self.assertLess(np.max(np.ptp(energies, axis=0)), 1e-10)


class TestLieAlgebra(unittest.TestCase):
    def test_brackets(self):
        """The symmetry fields close on the algebra for every lambda."""

        rng = np.random.default_rng(3)
        for lam in (-0.9, -0.2, 0.0, 0.5, 3.0):
            for _ in range(50):
                (x, y) = rng.uniform(-0.7, 0.7, 2)
                residuals = invariants.lie_bracket_residual(lam, (x, y))
                msg = 'Given lambda=%s at (%s, %s), residuals %s' % (lam, x, y, residuals)
                self.assertLess(max(residuals), 1e-12, msg)

    def test_outside(self):
        """Points outside the disc are refused."""

        with self.assertRaises(DomainError):
            invariants.lie_bracket_residual(-1.0, (1.0, 0.5))

    def test_jacobians(self):
        """Analytic Jacobians of the symmetry fields against central differences."""

        rng = np.random.default_rng(11)
        for lam in (-0.9, -0.2, 0.5, 3.0):
            for field in invariants.symmetry_fields(lam):
                for _ in range(20):
                    (x, y) = rng.uniform(-0.7, 0.7, 2)
                    numeric = np.column_stack((
                        utils.central_diff4(lambda u: field(u, y), x, h=1e-3),
                        utils.central_diff4(lambda u: field(x, u), y, h=1e-3)))
                    actual = np.max(np.abs(field.jac(x, y) - numeric))
                    msg = ('Given %s, lambda=%s at (%s, %s), Jacobian error %s'
                           % (field.name, lam, x, y, actual))
                    self.assertLess(actual, 1e-7, msg)


class TestPoissonBracket(unittest.TestCase):
    def test_canonical(self):
        """{x, px} = 1 and {x, py} = 0."""

        s = PhaseState2D(0.3, 0.2, 0.5, -0.1)
        self.assertAlmostEqual(invariants.poisson_bracket(lambda u: u.x,
                                                          lambda u: u.px, s), 1.0, places=12)
        self.assertAlmostEqual(invariants.poisson_bracket(lambda u: u.x,
                                                          lambda u: u.py, s), 0.0, places=12)

    def test_integrals_commute(self):
        """H Poisson-commutes with I1, I2 and I3."""

        for lam in (-0.5, 0.5):
            p = DeformParams(lam, 1.2)
            H = lambda u: dynamics.hamiltonian_2d(u, p)
            s = PhaseState2D(0.3, -0.4, 0.6, 0.2)
            for i in range(3):
                value = invariants.poisson_bracket(
                                H, lambda u, i=i: invariants.eval_I123(u, p)[i], s)
                msg = 'Given lambda=%s, {H, I%d} = %s' % (str(lam), i + 1, str(value))
                self.assertLess(abs(value), 1e-8, msg)


if __name__ == '__main__':
    unittest.main()
