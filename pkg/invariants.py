"""
Constants of motion, drift measurement and the symmetry algebra.

(K1, K2) = eval_K(state, params)
(I1, I2, I3) = eval_I123(state, params)
report = drift_report(traj, evaluator, name='I1')
(r12, r1J, r2J) = lie_bracket_residual(lam, (x, y))
value = poisson_bracket(f, g, phase_state)

Evaluators written for velocity states also accept a PhaseState2D; it is
mapped to velocities with inverse_legendre_2d() first.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from model import State1D, PhaseState2D, require_domain, coprime_frequencies
from dynamics import inverse_legendre_2d, energy_nonstd, nonstd_channel_profiles
from errors import SingularLevelSetError, DomainError, OscillabError
import logger
log = logger.Log('oscillab.log', logger.Log.CRITICAL)


######
# Drift reports
######

# relative drift is taken against max(|initial|, RelDriftFloor)
RelDriftFloor = 1e-12


@dataclass
class InvariantReport:
    """Drift statistics of one invariant over a trajectory.

    errors  (sample index, message) for samples the evaluator failed on
    """

    name: str
    initial: object
    max_abs_drift: float
    max_rel_drift: float
    samples: int
    errors: list = field(default_factory=list)

    def to_dict(self):
        return {'invariant': self.name,
                'initial': self.initial,
                'max_abs_drift': self.max_abs_drift,
                'max_rel_drift': self.max_rel_drift,
                'samples': self.samples,
                'errors': [{'index': i, 'message': m} for (i, m) in self.errors]}


def drift_report(traj, invariant, name=None):
    """Measure how far 'invariant' moves from its first value along 'traj'.

    traj       a Trajectory
    invariant  function(state record) -> real or complex value
    name       label for the report (default: the function name)

    An evaluator failure at a sample is recorded in the report's errors
    and the sample is skipped.  A failure at the first sample leaves no
    reference value: initial is None and both drifts are NaN.
    """

    if name is None:
        name = getattr(invariant, '__name__', 'invariant')

    values = []
    errors = []
    for (i, state) in enumerate(traj.records()):
        try:
            values.append(invariant(state))
        except (OscillabError, ArithmeticError, ValueError) as exc:
            errors.append((i, '%s: %s' % (type(exc).__name__, str(exc))))

    if errors:
        log.warn("drift_report: '%s' failed at %d of %d samples, first at index %d"
                 % (name, len(errors), len(traj), errors[0][0]))

    if not values or (errors and errors[0][0] == 0):
        return InvariantReport(name, None, math.nan, math.nan, len(values), errors)

    initial = values[0]
    abs_drift = float(np.max(np.abs(np.asarray(values) - initial)))
    rel_drift = abs_drift / max(abs(initial), RelDriftFloor)
    return InvariantReport(name, initial, abs_drift, rel_drift, len(values), errors)


######
# The deformed 2D oscillator
######

def _velocities(s, lam):
    if isinstance(s, PhaseState2D):
        return inverse_legendre_2d(s, lam)
    return s


def eval_K(s, p):
    """The complex functions (K1, K2).

    K1 = (vx - lambda J y + i alpha x) / sqrt(1 + lambda r^2)
    K2 = (vy + lambda J x + i alpha y) / sqrt(1 + lambda r^2)
    """

    s = _velocities(s, p.lam)
    require_domain(s, p)
    root = math.sqrt(1.0 + p.lam*(s.x*s.x + s.y*s.y))
    j = s.x*s.vy - s.y*s.vx
    k1 = complex(s.vx - p.lam*j*s.y, p.alpha*s.x) / root
    k2 = complex(s.vy + p.lam*j*s.x, p.alpha*s.y) / root
    return (k1, k2)


def eval_K_rate(s, p):
    """i alpha/(1 + lambda r^2): dK_i/dt = rate * K_i."""

    s = _velocities(s, p.lam)
    require_domain(s, p)
    return 1j*p.alpha / (1.0 + p.lam*(s.x*s.x + s.y*s.y))


def eval_K12(s, p):
    """K1 * conj(K2), a complex constant of motion."""

    (k1, k2) = eval_K(s, p)
    return k1 * k2.conjugate()


def eval_I123(s, p):
    """(|K1|^2, |K2|^2, alpha J) with J = x vy - y vx."""

    (k1, k2) = eval_K(s, p)
    s = _velocities(s, p.lam)
    i1 = k1.real*k1.real + k1.imag*k1.imag
    i2 = k2.real*k2.real + k2.imag*k2.imag
    return (i1, i2, p.alpha*(s.x*s.vy - s.y*s.vx))


######
# Baseline harmonic oscillator
######

def eval_harmonic_J(s, n1, n2, omega0):
    """K_x^n2 * conj(K_y)^n1 with K_x = px + i n1 omega0 x, K_y = py + i n2 omega0 y."""

    (n1, n2, omega0) = coprime_frequencies(n1, n2, omega0)
    kx = complex(s.px, n1*omega0*s.x)
    ky = complex(s.py, n2*omega0*s.y)
    return kx**n2 * ky.conjugate()**n1


######
# Nonstandard Lagrangians
######

def _denominator(value, what):
    if value == 0:
        raise SingularLevelSetError('%s == 0' % what)
    return value


def eval_nonstd_integrals(s, k1, k2):
    """(E1, E2, I3, I4) of L = 1/(vx + k1 x^2) + 1/(vy + k2 y^2)."""

    d1 = _denominator(s.vx + k1*s.x*s.x, 'vx + k1 x^2')
    d2 = _denominator(s.vy + k2*s.y*s.y, 'vy + k2 y^2')
    (a1, u1) = nonstd_channel_profiles(k1, 0.0)
    (a2, u2) = nonstd_channel_profiles(k2, 0.0)
    e1 = energy_nonstd(State1D(s.x, s.vx), a1, u1)
    e2 = energy_nonstd(State1D(s.y, s.vy), a2, u2)
    i3 = s.x/d1 - s.y/d2
    i4 = k2/d1 + k1/d2 - k1*k2*s.x*s.y/(d1*d2)
    return (e1, e2, i3, i4)


def eval_nonstd_channel_energies(s, p):
    """(E1, E2) of the two channels of the flow set by NonstdParams 'p'."""

    (a1, u1) = nonstd_channel_profiles(p.k1, p.omega1)
    (a2, u2) = nonstd_channel_profiles(p.k2, p.omega2)
    return (energy_nonstd(State1D(s.x, s.vx), a1, u1),
            energy_nonstd(State1D(s.y, s.vy), a2, u2))


def nonstd_K_components(s, p):
    """The two complex functions of the rational nonstandard case.

    K_i = (v + k x^2 + i n omega0 x) / (k v + k^2 x^2 + n^2 omega0^2)
    """

    w1 = p.n1*p.omega0
    w2 = p.n2*p.omega0
    d1 = _denominator(p.k1*s.vx + p.k1*p.k1*s.x*s.x + w1*w1,
                      'k1 vx + k1^2 x^2 + n1^2 omega0^2')
    d2 = _denominator(p.k2*s.vy + p.k2*p.k2*s.y*s.y + w2*w2,
                      'k2 vy + k2^2 y^2 + n2^2 omega0^2')
    K1 = complex(s.vx + p.k1*s.x*s.x, w1*s.x) / d1
    K2 = complex(s.vy + p.k2*s.y*s.y, w2*s.y) / d2
    return (K1, K2)


def eval_nonstd_K(s, p):
    """K1^n2 * conj(K2)^n1, constant along the rational nonstandard flow."""

    (K1, K2) = nonstd_K_components(s, p)
    return K1**p.n2 * K2.conjugate()**p.n1


######
# Vector fields and their Lie brackets
######

class VectorField:
    """A planar vector field with an analytic Jacobian.

    components(x, y) -> (a, b)          the field a d/dx + b d/dy
    jacobian(x, y)   -> ((da/dx, da/dy), (db/dx, db/dy))
    """

    def __init__(self, name, components, jacobian):
        self.name = name
        self.components = components
        self.jacobian = jacobian

    def __call__(self, x, y):
        return np.array(self.components(x, y), dtype=float)

    def jac(self, x, y):
        return np.array(self.jacobian(x, y), dtype=float)


def symmetry_fields(lam):
    """(X1, X2, XJ): sqrt(1+lambda r^2) d/dx, sqrt(1+lambda r^2) d/dy, x d/dy - y d/dx."""

    def root(x, y):
        return math.sqrt(1.0 + lam*(x*x + y*y))

    x1 = VectorField('X1', lambda x, y: (root(x, y), 0.0),
                     lambda x, y: ((lam*x/root(x, y), lam*y/root(x, y)), (0.0, 0.0)))
    x2 = VectorField('X2', lambda x, y: (0.0, root(x, y)),
                     lambda x, y: ((0.0, 0.0), (lam*x/root(x, y), lam*y/root(x, y))))
    xj = VectorField('XJ', lambda x, y: (-y, x),
                     lambda x, y: ((0.0, -1.0), (1.0, 0.0)))
    return (x1, x2, xj)


def lie_bracket(u, w, x, y):
    """Components of [u, w] = (u . grad) w - (w . grad) u at (x, y)."""

    return w.jac(x, y) @ u(x, y) - u.jac(x, y) @ w(x, y)


def lie_bracket_residual(lam, point):
    """Residuals of [X1,X2] = lambda XJ, [X1,XJ] = X2, [X2,XJ] = -X1.

    Each residual is the largest absolute component of the difference.
    """

    (x, y) = point
    if lam < 0 and 1.0 + lam*(x*x + y*y) <= 0:
        raise DomainError('(%s, %s) outside 1 + lambda*r^2 > 0' % (str(x), str(y)))
    (x1, x2, xj) = symmetry_fields(lam)
    r12 = lie_bracket(x1, x2, x, y) - lam*xj(x, y)
    r1j = lie_bracket(x1, xj, x, y) - x2(x, y)
    r2j = lie_bracket(x2, xj, x, y) + x1(x, y)
    return (float(np.max(np.abs(r12))), float(np.max(np.abs(r1j))),
            float(np.max(np.abs(r2j))))


######
# Poisson brackets by finite differences
######

DefaultBracketStep = 1e-3


def _partials(f, s, h):
    """(df/dx, df/dy, df/dpx, df/dpy) by 4th-order central differences."""

    base = s.as_array()
    result = []
    for i in range(4):
        def shifted(delta):
            y = base.copy()
            y[i] += delta
            return f(PhaseState2D.from_array(y))
        result.append((-shifted(2*h) + 8*shifted(h) - 8*shifted(-h)
                       + shifted(-2*h)) / (12*h))
    return result


def poisson_bracket(f, g, s, h=DefaultBracketStep):
    """{f, g} = f_x g_px - f_px g_x + f_y g_py - f_py g_y at PhaseState2D 's'."""

    (fx, fy, fpx, fpy) = _partials(f, s, h)
    (gx, gy, gpx, gpy) = _partials(g, s, h)
    return fx*gpx - fpx*gx + fy*gpy - fpy*gy
