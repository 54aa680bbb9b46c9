"""
Deterministic verification suites.

checks = run_suite('identities', seed=20041)
text = format_table(checks)

Every suite draws its random samples from a numpy Generator seeded with
'seed', so a suite prints the same table on every run.
"""

import math
from dataclasses import dataclass

import numpy as np

import utils
import dynamics
import invariants
import separability
import quantum
import isochrony
from model import State1D, State2D, PhaseState2D, DeformParams, NonstdParams, Profile
from integrators import IntegratorConfig, integrate_adaptive, measure_period
from errors import OscillabError
import logger
log = logger.Log('oscillab.log', logger.Log.CRITICAL)


@dataclass(frozen=True)
class Check:
    """One verified quantity.

    value must be <= limit, or > limit when 'above' is set; a 'report'
    row is printed for information and always passes
    """

    suite: str
    name: str
    value: float
    limit: float
    above: bool = False
    message: str = ''
    report: bool = False

    @property
    def passed(self):
        if self.report:
            return True
        if not math.isfinite(self.value):
            return False
        if self.above:
            return self.value > self.limit
        return self.value <= self.limit


def _measure(suite, name, fn, limit, above=False, report=False):
    """Run fn() -> value as a Check; an error inside fn() fails the check."""

    try:
        value = float(fn())
        message = ''
    except (OscillabError, ArithmeticError, ValueError) as exc:
        value = math.nan
        message = '%s: %s' % (type(exc).__name__, str(exc))
        log.error('verify: %s/%s raised %s' % (suite, name, message))
    return Check(suite, name, value, limit, above, message, report)


def _disc_points(rng, lam, n, extent=3.0):
    """n random (x, y) with 1 + lambda r^2 > 0 (within 95% of the disc for lambda < 0)."""

    if lam < 0:
        radius = 0.95 / math.sqrt(-lam)
        r = radius * np.sqrt(rng.random(n))
        phi = 2*math.pi*rng.random(n)
        return np.column_stack((r*np.cos(phi), r*np.sin(phi)))
    return rng.uniform(-extent, extent, size=(n, 2))


def _phase_states(rng, lam, n, extent=1.0):
    points = _disc_points(rng, lam, n, extent)
    momenta = rng.uniform(-1.0, 1.0, size=(n, 2))
    return [PhaseState2D(float(x), float(y), float(px), float(py))
            for ((x, y), (px, py)) in zip(points, momenta)]


######
# identities
######

IdentityLambdas = (-0.9, -0.5, 0.0, 0.5, 3.0)


def suite_identities(rng):
    suite = 'identities'
    checks = []

    for lam in IdentityLambdas:
        p = DeformParams(lam, 1.0)
        points = _disc_points(rng, lam, 10000)
        checks.append(_measure(suite, 'superseparable V, lambda=%g' % lam,
                               lambda: max(separability.superseparable_identity_residual(x, y, p)
                                           for (x, y) in points), 1e-13))

    for lam in IdentityLambdas:
        states = _phase_states(rng, lam, 1000)
        checks.append(_measure(suite, 'Lagrange identity, lambda=%g' % lam,
                               lambda: max(separability.lagrange_identity_residual(s, lam)
                                           for s in states), 1e-12))

    for lam in IdentityLambdas:
        p = DeformParams(lam, 1.0)
        V = separability.SeparablePotential.superseparable(lam)
        states = [s for s in _phase_states(rng, lam, 1000) if s.r2 > 0.04]
        for family in separability.Families:
            def dependency(family=family):
                worst = 0.0
                for s in states:
                    (i1, i2) = separability.quadratic_integrals(family, s, p, V)
                    worst = max(worst, abs(i1 + i2 - 2*dynamics.hamiltonian_2d(s, p, V)))
                return worst
            checks.append(_measure(suite, 'I1+I2=2H %s, lambda=%g' % (family, lam),
                                   dependency, 1e-12))

            def hj(family=family):
                return max(separability.hj_residual(family, s, p, V,
                                                    dynamics.hamiltonian_2d(s, p, V))
                           for s in states)
            checks.append(_measure(suite, 'HJ residual %s, lambda=%g' % (family, lam),
                                   hj, 1e-13))

    p = DeformParams(0.5, 1.3)
    states = [dynamics.inverse_legendre_2d(s, p.lam) for s in _phase_states(rng, p.lam, 1000)]
    checks.append(_measure(suite, 'I3 = alpha J',
                           lambda: max(abs(invariants.eval_I123(s, p)[2]
                                           - p.alpha*(s.x*s.vy - s.y*s.vx)) for s in states),
                           1e-14))

    def zx_roundtrip(lam=-0.5):
        worst = 0.0
        for (x, y) in _disc_points(rng, lam, 1000):
            (z, yy) = separability.to_zx(x, y, lam)
            (xx, yy) = separability.from_zx(z, yy, lam)
            worst = max(worst, abs(xx - x), abs(yy - y))
        return worst
    checks.append(_measure(suite, 'zx chart roundtrip, lambda=-0.5', zx_roundtrip, 1e-13))

    def zy_roundtrip(lam=-0.5):
        worst = 0.0
        for (x, y) in _disc_points(rng, lam, 1000):
            (xx, z) = separability.to_zy(x, y, lam)
            (xx, yy) = separability.from_zy(xx, z, lam)
            worst = max(worst, abs(xx - x), abs(yy - y))
        return worst
    checks.append(_measure(suite, 'zy chart roundtrip, lambda=-0.5', zy_roundtrip, 1e-13))

    def legendre_roundtrip(lam=0.5):
        worst = 0.0
        for s in _phase_states(rng, lam, 1000):
            back = dynamics.legendre_2d(dynamics.inverse_legendre_2d(s, lam), lam)
            worst = max(worst, float(np.max(np.abs(back.as_array() - s.as_array()))))
        return worst
    checks.append(_measure(suite, 'Legendre roundtrip, lambda=0.5', legendre_roundtrip, 1e-13))

    for (lam, beta) in ((0.0, 1.0), (-1.0, 2.0), (1.0, 3.0)):
        q = quantum.QuantumParams.from_beta(lam, beta)
        checks.append(_measure(suite, 'ladder by remainders, lambda=%g' % lam,
                               lambda: np.max(np.abs(quantum.ladder_spectrum(q, 8)
                                                     - quantum.shape_invariance_ladder(q, 8))),
                               1e-12))

    def beta_consistency():
        worst = 0.0
        for (alpha, lam) in rng.uniform((0.1, -2.0), (5.0, 5.0), size=(100, 2)):
            beta = quantum.beta_from_alpha(alpha, lam)
            worst = max(worst, abs(beta*(beta + lam) - alpha*alpha) / (alpha*alpha))
        return worst
    checks.append(_measure(suite, 'beta(beta+lambda) = alpha^2', beta_consistency, 1e-12))

    return checks


######
# brackets
######

BracketLambdas = (-0.5, 0.0, 0.5, 2.0)


def suite_brackets(rng):
    suite = 'brackets'
    checks = []

    for lam in BracketLambdas:
        points = _disc_points(rng, lam, 100, extent=2.0)
        for (i, label) in enumerate(('[X1,X2] = lambda XJ', '[X1,XJ] = X2', '[X2,XJ] = -X1')):
            checks.append(_measure(suite, '%s, lambda=%g' % (label, lam),
                                   lambda i=i: max(invariants.lie_bracket_residual(lam, pt)[i]
                                                   for pt in points), 1e-12))

    s0 = _phase_states(rng, 0.0, 1)[0]
    checks.append(_measure(suite, '{x, px} = 1',
                           lambda: abs(invariants.poisson_bracket(lambda s: s.x,
                                                                  lambda s: s.px, s0) - 1.0),
                           1e-10))

    p = DeformParams(0.5, 1.0)
    states = _phase_states(rng, p.lam, 20)

    def H(s):
        return dynamics.hamiltonian_2d(s, p)

    for (i, name) in enumerate(('I1', 'I2', 'I3')):
        checks.append(_measure(suite, '{H, %s} = 0, lambda=0.5' % name,
                               lambda i=i: max(abs(invariants.poisson_bracket(
                                   H, lambda s: invariants.eval_I123(s, p)[i], s))
                                   for s in states), 1e-8))

    # pairwise brackets are printed, not bounded
    for (i, j) in ((0, 1), (0, 2), (1, 2)):
        checks.append(_measure(suite, 'max |{I%d, I%d}|, lambda=0.5' % (i + 1, j + 1),
                               lambda i=i, j=j: max(abs(invariants.poisson_bracket(
                                   lambda s: invariants.eval_I123(s, p)[i],
                                   lambda s: invariants.eval_I123(s, p)[j], s))
                                   for s in states), math.inf, report=True))

    checks.append(_measure(suite, '{E_x, E_y} = 0, harmonic',
                           lambda: max(abs(invariants.poisson_bracket(
                               lambda s: dynamics.harmonic_energies(s, 2, 3, 1.0)[0],
                               lambda s: dynamics.harmonic_energies(s, 2, 3, 1.0)[1], s))
                               for s in states), 1e-10))
    return checks


######
# exact_solutions
######

def suite_exact_solutions(rng):
    suite = 'exact_solutions'
    checks = []

    for (lam, A) in ((-0.5, 0.8), (0.5, 1.0), (3.0, 1.0)):
        p = DeformParams(lam, 1.0)
        t = np.linspace(0.0, 20.0, 401)
        checks.append(_measure(suite, 'ml1d EOM residual, lambda=%g' % lam,
                               lambda: dynamics.eom_residual(
                                   dynamics.ml1d_exact(t, A, 0.3, p),
                                   dynamics.ml1d_exact_acceleration(t, A, 0.3, p),
                                   lambda s: dynamics.ml1d_rhs(s, p)), 1e-10))

    (k, E) = (-0.5, 1.0)
    t = np.linspace(-5.0, 5.0, 401)
    free_rhs = dynamics.nonstd1d_free_system(k).fn
    checks.append(_measure(suite, 'nonstd free EOM residual',
                           lambda: dynamics.eom_residual(
                               dynamics.nonstd1d_exact_free(t, E, k),
                               dynamics.nonstd1d_free_acceleration(t, E, k), free_rhs),
                           1e-10))
    (a_fn, u_fn) = dynamics.nonstd_channel_profiles(k, 0.0)
    checks.append(_measure(suite, 'nonstd free E_L spread',
                           lambda: _spread(dynamics.energy_nonstd(s, a_fn, u_fn)
                                           for s in _samples(dynamics.nonstd1d_exact_free(t, E, k))),
                           1e-10))

    (k, omega, E, phi) = (0.3, 1.0, 1.0, 0.2)
    t = np.linspace(0.0, 3*2*math.pi/omega, 601)
    omega_rhs = dynamics.nonstd1d_omega_system(k, omega).fn
    checks.append(_measure(suite, 'nonstd omega EOM residual',
                           lambda: dynamics.eom_residual(
                               dynamics.nonstd1d_exact_omega(t, E, phi, k, omega),
                               dynamics.nonstd1d_omega_acceleration(t, E, phi, k, omega),
                               omega_rhs), 1e-10))
    general = dynamics.nonstd_channel_profiles(k, omega)
    checks.append(_measure(suite, 'nonstd omega general-form residual',
                           lambda: dynamics.eom_residual(
                               dynamics.nonstd1d_exact_omega(t, E, phi, k, omega),
                               dynamics.nonstd1d_omega_acceleration(t, E, phi, k, omega),
                               lambda s: dynamics.nonstd1d_rhs(s, *general)), 1e-10))
    checks.append(_measure(suite, 'nonstd omega E_L spread',
                           lambda: _spread(dynamics.energy_nonstd(s, *general)
                                           for s in _samples(dynamics.nonstd1d_exact_omega(
                                               t, E, phi, k, omega))), 1e-10))

    def omega_numeric():
        system = dynamics.nonstd1d_omega_system(k, omega)
        start = dynamics.nonstd1d_exact_omega(0.0, E, phi, k, omega)
        cfg = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14, sample_dt=0.05)
        traj = integrate_adaptive(system, 0.0, start, t[-1], cfg)
        exact = dynamics.nonstd1d_exact_omega(traj.times, E, phi, k, omega)
        return float(np.max(np.abs(traj.column('x') - exact.x)))
    checks.append(_measure(suite, 'nonstd omega numeric vs exact', omega_numeric, 1e-7))

    return checks


def _samples(state):
    return [State1D(float(x), float(v)) for (x, v) in zip(state.x, state.v)]


def _spread(values):
    values = np.array(list(values))
    return float(np.max(values) - np.min(values))


######
# isochrony
######

IsochronyEnergies = tuple(float(e) for e in np.logspace(-2.0, 2.0, 9))


def suite_isochrony(rng):
    suite = 'isochrony'
    checks = []

    pot = isochrony.PiecewisePotential.quadratic(1.0, 1.0)
    checks.append(_measure(suite, 'piecewise quadratic spread',
                           lambda: isochrony.isochrony_scan(pot, IsochronyEnergies), 1e-9))

    for (w1, w2) in ((1.0, 1.0), (1.0, 2.0), (0.5, 3.0)):
        pot = isochrony.PiecewisePotential.quadratic(w1, w2)
        closed = isochrony.quadratic_period(w1, w2)
        checks.append(_measure(suite, 'T = closed form, omega=(%g, %g)' % (w1, w2),
                               lambda pot=pot, closed=closed:
                                   max(abs(isochrony.period(pot, E) - closed)/closed
                                       for E in (0.01, 1.0, 100.0)), 1e-8))

    half = isochrony.PiecewisePotential.symmetric(Profile.quadratic(0.5))
    checks.append(_measure(suite, 'T = 2 pi for U = x^2/2',
                           lambda: max(abs(isochrony.period(half, E) - 2*math.pi)/(2*math.pi)
                                       for E in (0.01, 1.0, 100.0)), 1e-10))

    quartic = isochrony.PiecewisePotential.symmetric(Profile.power(1.0, 4))
    checks.append(_measure(suite, 'quartic T(16)/T(1) = 1/2',
                           lambda: abs(isochrony.period(quartic, 16.0)
                                       / isochrony.period(quartic, 1.0) - 0.5), 1e-8))
    checks.append(_measure(suite, 'quartic spread (control)',
                           lambda: isochrony.isochrony_scan(quartic, IsochronyEnergies),
                           0.5, above=True))
    lopsided = isochrony.PiecewisePotential(Profile.power(4.0, 4), Profile.power(1.0, 4))
    checks.append(_measure(suite, 'asymmetric quartic spread (control)',
                           lambda: isochrony.isochrony_scan(lopsided, IsochronyEnergies),
                           0.5, above=True))

    pot = isochrony.PiecewisePotential.quadratic(1.0, 2.0)
    cfg = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14, max_steps=200000)
    for E in (0.1, 1.0, 10.0):
        def measured(E=E):
            T = isochrony.period(pot, E)
            start = State1D(0.0, math.sqrt(2*E))
            T_num = measure_period(dynamics.piecewise_system(pot), start, 3, 4.5*T, cfg)
            return abs(T_num - T) / T
        checks.append(_measure(suite, 'quadrature vs integrator, E=%g' % E, measured, 1e-6))

    return checks


######
# conservation
######

ConservationCfg = IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12)
TightCfg = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14)


def _max_rel_drift(traj, evaluator):
    report = invariants.drift_report(traj, evaluator)
    if report.errors:
        raise OscillabError('%d samples failed, first: %s'
                            % (len(report.errors), report.errors[0][1]))
    return report.max_rel_drift


def _uniform_prefix(times, dt):
    """Length of the leading run of samples at t = i*dt.

    The closing sample at t1 is off the grid unless t1 is a multiple of dt.
    """

    times = np.asarray(times)
    off = np.abs(times - dt*np.arange(len(times))) > 1e-9*max(1.0, float(times[-1]))
    return int(np.argmax(off)) if np.any(off) else len(times)


def suite_conservation(rng):
    suite = 'conservation'
    checks = []

    for (lam, A) in ((-0.5, 0.8), (0.5, 1.0), (3.0, 1.0)):
        p = DeformParams(lam, 1.0)

        def period_law(p=p, A=A):
            expected = 2*math.pi*math.sqrt(1.0 + p.lam*A*A) / p.alpha
            T = measure_period(dynamics.ml1d_system(p), State1D(A, 0.0), 2,
                               3.5*expected, ConservationCfg)
            return abs(T - expected) / expected
        checks.append(_measure(suite, 'ml1d period law, lambda=%g' % lam, period_law, 1e-6))

    start = State2D(0.9, 0.3, 0.0, 0.8)
    for lam in (-0.5, 0.5):
        p = DeformParams(lam, 1.0)
        phase = dynamics.legendre_2d(start, lam)
        traj = None

        def trajectory(p=p, phase=phase):
            nonlocal traj
            if traj is None:
                traj = integrate_adaptive(dynamics.ml2d_system(p), 0.0, phase, 100.0,
                                          ConservationCfg)
            return traj

        for (i, name) in enumerate(('I1', 'I2', 'I3')):
            checks.append(_measure(suite, 'ml2d %s drift, lambda=%g' % (name, lam),
                                   lambda i=i, p=p, trajectory=trajectory: _max_rel_drift(
                                       trajectory(), lambda s: invariants.eval_I123(s, p)[i]),
                                   1e-8))
        wrong = DeformParams(1.1*lam, 1.0)
        checks.append(_measure(suite, 'ml2d I1 drift, lambda off by 10%% (control, lambda=%g)' % lam,
                               lambda wrong=wrong, trajectory=trajectory: _max_rel_drift(
                                   trajectory(), lambda s: invariants.eval_I123(s, wrong)[0]),
                               1e-3, above=True))

    def k_rate(lam=0.5):
        p = DeformParams(lam, 1.0)
        cfg = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14, sample_dt=0.01)
        traj = integrate_adaptive(dynamics.ml2d_system(p), 0.0,
                                  dynamics.legendre_2d(start, lam), 2*math.pi, cfg)
        dt = cfg.sample_dt
        records = list(traj.records())[:_uniform_prefix(traj.times, dt)]
        k1 = np.array([invariants.eval_K(s, p)[0] for s in records])
        rate = np.array([invariants.eval_K_rate(s, p) for s in records])
        dk = (-k1[4:] + 8*k1[3:-1] - 8*k1[1:-3] + k1[:-4]) / (12*dt)
        expected = rate[2:-2]*k1[2:-2]
        return float(np.max(np.abs(dk - expected) / np.abs(expected)))
    checks.append(_measure(suite, 'dK1/dt = i alpha K1/(1+lambda r^2)', k_rate, 1e-6))

    def harmonic_J():
        system = dynamics.harmonic2d_system(2, 3, 1.0)
        traj = integrate_adaptive(system, 0.0, PhaseState2D(1.0, 0.5, 0.2, -0.3),
                                  50*2*math.pi, TightCfg)
        return _max_rel_drift(traj, lambda s: invariants.eval_harmonic_J(s, 2, 3, 1.0))
    checks.append(_measure(suite, 'harmonic J drift, (n1,n2)=(2,3)', harmonic_J, 1e-8))

    def nonstd_free_2d(index):
        p = NonstdParams(k1=0.1, k2=0.1)
        traj = integrate_adaptive(dynamics.nonstd2d_system(p), 0.0,
                                  State2D(1.0, 0.5, 1.0, 1.0), 50.0, ConservationCfg)
        return _max_rel_drift(traj, lambda s: invariants.eval_nonstd_integrals(s, 0.1, 0.1)[index])
    for (i, name) in enumerate(('E1', 'E2', 'I3', 'I4')):
        checks.append(_measure(suite, 'nonstd2d %s drift' % name,
                               lambda i=i: nonstd_free_2d(i), 1e-8))

    def nonstd_omega_2d(name):
        p = NonstdParams(k1=0.1, k2=0.1, omega0=1.0, n1=1, n2=2)
        traj = integrate_adaptive(dynamics.nonstd2d_system(p), 0.0,
                                  State2D(0.5, 0.3, 0.0, 0.2), 50.0, ConservationCfg)
        if name == 'K':
            return _max_rel_drift(traj, lambda s: invariants.eval_nonstd_K(s, p))
        index = 0 if name == 'E1' else 1
        return _max_rel_drift(traj,
                              lambda s: invariants.eval_nonstd_channel_energies(s, p)[index])
    for name in ('E1', 'E2', 'K'):
        checks.append(_measure(suite, 'nonstd2d omega %s drift, (n1,n2)=(1,2)' % name,
                               lambda name=name: nonstd_omega_2d(name), 1e-8))

    lam = 0.5
    p = DeformParams(lam, 1.0)
    families = {
        separability.ZxFamily: (Profile.quadratic(1.0), Profile.quadratic(1.0)),
        separability.ZyFamily: (Profile.quadratic(1.0), Profile.quadratic(1.0)),
        separability.PolarFamily: (Profile.quadratic(1.0),
                                   Profile(lambda phi: 0.2*(2.0 + math.cos(phi)),
                                           lambda phi: -0.2*math.sin(phi), name='G')),
    }
    for (family, (first, second)) in families.items():
        V = separability.SeparablePotential(family, first, second, lam)
        state = PhaseState2D(0.7, 0.4, 0.1, 0.6)

        def family_drift(index, V=V, family=family, state=state):
            traj = integrate_adaptive(dynamics.ml2d_system(p, V), 0.0, state, 20.0,
                                      ConservationCfg)
            return _max_rel_drift(traj, lambda s: separability.quadratic_integrals(
                family, s, p, V)[index])
        for (i, name) in enumerate(('I1', 'I2')):
            checks.append(_measure(suite, '%s %s drift, lambda=0.5' % (family, name),
                                   lambda i=i, family_drift=family_drift: family_drift(i),
                                   1e-8))

    return checks


######
# spectrum
######

SpectrumCases = ((0.0, 1.0), (-1.0, 2.0), (1.0, 3.0))


def suite_spectrum(rng):
    suite = 'spectrum'
    checks = []

    for (lam, beta) in SpectrumCases:
        p = quantum.QuantumParams.from_beta(lam, beta)
        coarse = None

        def ladder(p=p):
            nonlocal coarse
            coarse = quantum.spectrum_report(p, quantum.GridSpec(4000), 5)
            return coarse.max_difference
        checks.append(_measure(suite, 'ladder vs bisection N=4000, lambda=%g' % lam,
                               ladder, 1e-3))

        def order(p=p):
            if coarse is None:
                raise OscillabError('no N=4000 result to compare with')
            fine = quantum.spectrum_report(p, quantum.GridSpec(8000), 5)
            return math.log2(coarse.max_difference / fine.max_difference)
        checks.append(_measure(suite, 'convergence order, lambda=%g' % lam, order,
                               1.8, above=True))

    p = quantum.QuantumParams.from_beta(-1.0, 2.0)
    checks.append(_measure(suite, 'H psi0 = beta/2 psi0, lambda=-1',
                           lambda: quantum.groundstate_residual(p, quantum.GridSpec(4000)),
                           1e-5))

    for (lam, beta) in SpectrumCases:
        p = quantum.QuantumParams.from_beta(lam, beta)
        checks.append(_measure(suite, 'A psi0 = 0, lambda=%g' % lam,
                               lambda p=p: quantum.annihilation_residual(p, quantum.GridSpec(4000)),
                               1e-5))

    trials = {
        0.0: (lambda x: np.exp(-0.5*x*x), lambda x: x*np.exp(-0.5*x*x)),
        -1.0: (lambda x: (1.0 - x*x)**2, lambda x: x*(1.0 - x*x)**2),
        1.0: (lambda x: np.exp(-x*x), lambda x: x*np.exp(-x*x)),
    }
    for (lam, beta) in SpectrumCases:
        p = quantum.QuantumParams.from_beta(lam, beta)
        checks.append(_measure(suite, 'shape invariance, lambda=%g' % lam,
                               lambda p=p, lam=lam: quantum.shape_invariance_residual(
                                   p, quantum.GridSpec(4000), trials[lam]), 1e-5))

    for (lam, beta, expected) in ((1.0, 1.0, 1), (1.0, 3.0, 3)):
        p = quantum.QuantumParams.from_beta(lam, beta)
        checks.append(_measure(suite, 'bound states, lambda=%g beta=%g' % (lam, beta),
                               lambda p=p, expected=expected:
                                   abs(quantum.bound_state_count(p) - expected), 0.0))
    return checks


######
# Running suites
######

Suites = {'identities': suite_identities,
          'brackets': suite_brackets,
          'exact_solutions': suite_exact_solutions,
          'isochrony': suite_isochrony,
          'conservation': suite_conservation,
          'spectrum': suite_spectrum}

# the order 'all' runs them in
SuiteOrder = ('identities', 'brackets', 'exact_solutions', 'isochrony',
              'conservation', 'spectrum')


def suite_names(tag):
    """The suites a 'verify' tag stands for."""

    if tag == 'all':
        return list(SuiteOrder)
    if tag not in Suites:
        raise KeyError(tag)
    return [tag]


def run_suite(name, seed=None):
    """Run one suite with its own Generator seeded from 'seed'."""

    rng = utils.make_rng(seed)
    log.info('verify: running %s (seed %s)' % (name, str(seed)))
    checks = Suites[name](rng)
    failed = sum(1 for c in checks if not c.passed)
    log.info('verify: %s done, %d checks, %d failed' % (name, len(checks), failed))
    return checks


def format_table(checks):
    """The pass/fail table printed by 'oscillab verify'."""

    lines = ['%-16s %-56s %12s %2s %9s  %s' % ('suite', 'check', 'value', '', 'limit', 'result')]
    for c in checks:
        if c.report:
            lines.append('%-16s %-56s %12.3e %2s %9s  %s'
                         % (c.suite, c.name, c.value, '', '-', 'INFO'))
        else:
            lines.append('%-16s %-56s %12.3e %2s %9.1e  %s'
                         % (c.suite, c.name, c.value, '>' if c.above else '<=',
                            c.limit, 'PASS' if c.passed else 'FAIL'))
        if c.message:
            lines.append('%16s %s' % ('', c.message))
    failed = sum(1 for c in checks if not c.passed)
    lines.append('%d checks, %d failed' % (len(checks), failed))
    return '\n'.join(lines) + '\n'
