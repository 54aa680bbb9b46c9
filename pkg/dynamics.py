"""
Vector fields, Legendre maps and closed-form solutions of the classical
oscillators.

The systems:

    harmonic2d           H = (px^2+py^2)/2 + (n1^2 x^2 + n2^2 y^2) omega0^2/2
    ml1d                 L = (v^2 - alpha^2 x^2) / (2 (1 + lambda x^2))
    ml2d_hamiltonian     H = [px^2 + py^2 + lambda (x px + y py)^2]/2
                             + alpha^2 V(x, y)/2
    nonstd1d_free        L = 1/(v + k x^2)
    nonstd1d_omega       L = 1/(k v + k^2 x^2 + omega^2)
    nonstd2d             one nonstandard channel per coordinate
    isochrony_piecewise  H = v^2/2 + U(x), U piecewise on x<0 and x>0

Every *_rhs() function takes a state record and returns the tuple of
time derivatives.  SystemRHS wraps one of them as the array map the
integrators step.
"""

import math

import numpy as np

import utils
from model import (State1D, State2D, PhaseState2D, Profile, NonstdParams,
                   conformal_factor, require_domain, coprime_frequencies)
from errors import (DomainError, AmplitudeError, PoleError,
                    SingularCoefficientError, SingularLevelSetError,
                    ArgumentError)
import logger
log = logger.Log('oscillab.log', logger.Log.CRITICAL)


######
# Potentials for H(lambda)
######

class Potential:
    """A potential V(x, y) with its gradient."""

    name = 'potential'

    def value(self, x, y):
        raise NotImplementedError

    def gradient(self, x, y):
        """(dV/dx, dV/dy) by 4th-order central differences."""

        gx = utils.central_diff4(lambda u: self.value(u, y), x)
        gy = utils.central_diff4(lambda u: self.value(x, u), y)
        return (gx, gy)

    def __call__(self, x, y):
        return self.value(x, y)


class OscillatorPotential(Potential):
    """r^2/(1 + lambda r^2), the potential of the deformed 2D oscillator."""

    name = 'oscillator'

    def __init__(self, lam):
        self.lam = lam

    def value(self, x, y):
        r2 = x*x + y*y
        return r2 / (1.0 + self.lam*r2)

    def gradient(self, x, y):
        w = 1.0 + self.lam*(x*x + y*y)
        return (2*x / (w*w), 2*y / (w*w))


class HarmonicPotential(Potential):
    """r^2"""

    name = 'harmonic'

    def value(self, x, y):
        return x*x + y*y

    def gradient(self, x, y):
        return (2*x, 2*y)


class CallablePotential(Potential):
    """A user function V(x, y); gradient by central differences."""

    name = 'user'

    def __init__(self, fn):
        self.fn = fn

    def value(self, x, y):
        return self.fn(x, y)


def as_potential(V, lam=0.0):
    """Turn None, a Potential or a plain callable into a Potential."""

    if V is None:
        return OscillatorPotential(lam)
    if isinstance(V, Potential):
        return V
    return CallablePotential(V)


######
# Baseline 2D harmonic oscillator
######

def harmonic2d_rhs(s, n1, n2, omega0):
    """Hamilton's equations of the anisotropic harmonic oscillator.

    s  a PhaseState2D, frequencies are n1*omega0 and n2*omega0
    """

    w1 = n1 * omega0
    w2 = n2 * omega0
    return (s.px, s.py, -w1*w1*s.x, -w2*w2*s.y)


def harmonic_energies(s, n1, n2, omega0):
    """(E_x, E_y) of the baseline oscillator, each a constant of motion."""

    (n1, n2, omega0) = coprime_frequencies(n1, n2, omega0)
    w1 = n1 * omega0
    w2 = n2 * omega0
    return (0.5*(s.px*s.px + w1*w1*s.x*s.x), 0.5*(s.py*s.py + w2*w2*s.y*s.y))


######
# One-dimensional position-dependent mass oscillator
######

def ml1d_rhs(s, p):
    """(dx, dv) for the 1D oscillator with mass (1 + lambda x^2)^-1.

    s  a State1D
    p  a DeformParams
    """

    require_domain(s, p)
    return (s.v, s.x*(p.lam*s.v*s.v - p.alpha*p.alpha) / (1.0 + p.lam*s.x*s.x))


def ml1d_energy(s, p):
    """The conserved energy (v^2 + alpha^2 x^2) / (2 (1 + lambda x^2))."""

    require_domain(s, p)
    return 0.5*(s.v*s.v + p.alpha*p.alpha*s.x*s.x) / (1.0 + p.lam*s.x*s.x)


def ml1d_frequency(A, p):
    """Angular frequency of the oscillation of amplitude A.

    From omega^2 (1 + lambda A^2) = alpha^2.
    """

    w = 1.0 + p.lam*A*A
    if p.lam < 0 and not 0 < w <= 1:
        raise AmplitudeError('amplitude %s not allowed for lambda=%s'
                             % (str(A), str(p.lam)))
    return p.alpha / math.sqrt(w)


def ml1d_exact(t, A, phi, p):
    """State on the exact solution x = A cos(omega t + phi).

    t may be a scalar or a numpy array.
    """

    w = ml1d_frequency(A, p)
    theta = w*t + phi
    return State1D(A*np.cos(theta), -A*w*np.sin(theta))


def ml1d_exact_acceleration(t, A, phi, p):
    """Second time derivative of ml1d_exact()."""

    w = ml1d_frequency(A, p)
    return -w*w*A*np.cos(w*t + phi)


######
# Two-dimensional oscillator: Legendre maps and Hamiltonian flow
######

def _lam_domain(s, lam):
    """DomainError unless 1 + lam*r^2 > 0."""

    if lam < 0 and conformal_factor(s.x*s.x + s.y*s.y, lam) <= 0:
        raise DomainError('state %s outside 1 + lambda*r^2 > 0 (lambda=%s)'
                          % (str(s), str(lam)))


def legendre_2d(s, lam):
    """Velocity state -> PhaseState2D for the deformed 2D kinetic term."""

    _lam_domain(s, lam)
    w = 1.0 + lam*(s.x*s.x + s.y*s.y)
    xy = lam*s.x*s.y
    px = ((1.0 + lam*s.y*s.y)*s.vx - xy*s.vy) / w
    py = ((1.0 + lam*s.x*s.x)*s.vy - xy*s.vx) / w
    return PhaseState2D(s.x, s.y, px, py)


def inverse_legendre_2d(s, lam):
    """PhaseState2D -> velocity state; the velocities are dH/dp."""

    _lam_domain(s, lam)
    d = s.x*s.px + s.y*s.py
    return State2D(s.x, s.y, s.px + lam*s.x*d, s.py + lam*s.y*d)


def hamiltonian_2d(s, p, V=None):
    """H(lambda) at the PhaseState2D 's'."""

    V = as_potential(V, p.lam)
    d = s.x*s.px + s.y*s.py
    return (0.5*(s.px*s.px + s.py*s.py + p.lam*d*d)
            + 0.5*p.alpha*p.alpha*V.value(s.x, s.y))


def ml2d_lagrangian_energy(s, p, V=None):
    """Energy of a velocity state, [v^2 + lambda J^2]/(2(1+lambda r^2)) + alpha^2 V/2."""

    _lam_domain(s, p.lam)
    V = as_potential(V, p.lam)
    j = s.x*s.vy - s.y*s.vx
    w = 1.0 + p.lam*(s.x*s.x + s.y*s.y)
    return (0.5*(s.vx*s.vx + s.vy*s.vy + p.lam*j*j) / w
            + 0.5*p.alpha*p.alpha*V.value(s.x, s.y))


def ml2d_hamiltonian_rhs(s, p, V=None):
    """Hamilton's equations of H(lambda) with potential V.

    s  a PhaseState2D
    p  a DeformParams
    V  a Potential, a callable V(x, y), or None for the oscillator
       potential r^2/(1 + lambda r^2)

    Returns (dx, dy, dpx, dpy).
    """

    _lam_domain(s, p.lam)
    V = as_potential(V, p.lam)
    d = s.x*s.px + s.y*s.py
    (gx, gy) = V.gradient(s.x, s.y)
    half_a2 = 0.5*p.alpha*p.alpha
    return (s.px + p.lam*s.x*d,
            s.py + p.lam*s.y*d,
            -p.lam*d*s.px - half_a2*gx,
            -p.lam*d*s.py - half_a2*gy)


######
# Nonstandard Lagrangians L = 1/(alpha(x) v + U(x))
######

def _as_profile(fn):
    return fn if isinstance(fn, Profile) else Profile(fn)


def nonstd1d_rhs(s, alpha_fn, U_fn):
    """(dx, dv) for the Lagrangian 1/(alpha(x) v + U(x)).

    alpha^2 a + alpha alpha' v^2 + (3/2) alpha U' v + U U'/2 = 0
    """

    alpha_fn = _as_profile(alpha_fn)
    U_fn = _as_profile(U_fn)
    a = alpha_fn(s.x)
    if a == 0:
        raise SingularCoefficientError('alpha(%s) == 0' % str(s.x))
    da = alpha_fn.derivative(s.x)
    u = U_fn(s.x)
    du = U_fn.derivative(s.x)
    return (s.v, -(a*da*s.v*s.v + 1.5*a*du*s.v + 0.5*u*du) / (a*a))


def nonstd_omega_accel(x, v, k, omega):
    """Acceleration of x'' + 3 k x x' + k^2 x^3 + omega^2 x = 0.

    This is the divided-through form of the equation for
    1/(k v + k^2 x^2 + omega^2), valid at k == 0 as well; omega == 0
    gives the U = k x^2 equation.
    """

    return -3.0*k*x*v - k*k*x*x*x - omega*omega*x


def energy_nonstd(s, alpha_fn, U_fn):
    """E_L = -(2 alpha v + U) / (alpha v + U)^2."""

    alpha_fn = _as_profile(alpha_fn)
    U_fn = _as_profile(U_fn)
    av = alpha_fn(s.x)*s.v
    u = U_fn(s.x)
    phi = av + u
    if phi == 0:
        raise SingularLevelSetError('alpha*v + U == 0 at %s' % str(s))
    return -(2.0*av + u) / (phi*phi)


def nonstd_channel_profiles(k, omega):
    """(alpha, U) profiles of one nonstandard channel.

    omega == 0 is L = 1/(v + k x^2); otherwise L = 1/(k v + k^2 x^2 + omega^2).
    """

    if omega == 0:
        return (Profile.constant(1.0), Profile.quadratic(k))
    return (Profile.constant(k), Profile.quadratic(k*k, omega*omega))


def _check_poles(denominator, what):
    """PoleError if the denominator vanishes or changes sign."""

    den = np.atleast_1d(denominator)
    if np.any(den == 0) or np.any(np.sign(den[1:]) != np.sign(den[:-1])):
        raise PoleError('%s crosses a pole on the requested interval' % what)


def nonstd1d_exact_free(t, E, k):
    """x(t) = 2t/(k t^2 - E) and its velocity."""

    den = k*t*t - E
    _check_poles(den, 'x = 2t/(k t^2 - E)')
    return State1D(2.0*t/den, -2.0*(k*t*t + E)/(den*den))


def nonstd1d_free_acceleration(t, E, k):
    """Second time derivative of nonstd1d_exact_free()."""

    den = k*t*t - E
    _check_poles(den, 'x = 2t/(k t^2 - E)')
    return 4.0*k*t*(k*t*t + 3.0*E) / (den*den*den)


def _omega_parts(t, E, phi, k, omega):
    if E <= 0:
        raise ArgumentError('E must be > 0, got %s' % str(E))
    root = math.sqrt(E)
    theta = omega*t + phi
    den = 1.0 - k*root*np.cos(theta)
    _check_poles(den, 'x = omega sqrt(E) sin/(1 - k sqrt(E) cos)')
    return (root, theta, den)


def nonstd1d_exact_omega(t, E, phi, k, omega):
    """x(t) = omega sqrt(E) sin(omega t + phi) / (1 - k sqrt(E) cos(omega t + phi))."""

    (root, theta, den) = _omega_parts(t, E, phi, k, omega)
    x = omega*root*np.sin(theta) / den
    v = omega*omega*root*(np.cos(theta) - k*root) / (den*den)
    return State1D(x, v)


def nonstd1d_omega_acceleration(t, E, phi, k, omega):
    """Second time derivative of nonstd1d_exact_omega()."""

    (root, theta, den) = _omega_parts(t, E, phi, k, omega)
    return (-omega**3 * root * np.sin(theta)
            * (1.0 + k*root*np.cos(theta) - 2.0*k*k*E) / den**3)


def nonstd2d_rhs(s, p):
    """(dx, dy, dvx, dvy) of the separable 2D nonstandard system.

    p  a NonstdParams; channel i has coupling k_i and frequency
       n_i*omega0 (omega0 == 0 for L = 1/(vx + k1 x^2) + 1/(vy + k2 y^2))
    """

    return (s.vx, s.vy,
            nonstd_omega_accel(s.x, s.vx, p.k1, p.omega1),
            nonstd_omega_accel(s.y, s.vy, p.k2, p.omega2))


######
# Piecewise potential for the isochrony checks
######

def piecewise_rhs(s, pot):
    """(dx, dv) for H = v^2/2 + U(x); 'pot' supplies U'(x)."""

    return (s.v, -pot.derivative(s.x))


######
# Residual of a closed-form solution in its equation of motion
######

def eom_residual(state, accel, rhs):
    """max |accel - dv| with dv from rhs(state) over all samples.

    state  a State1D whose fields may be arrays of samples
    accel  the exact acceleration at the same samples
    rhs    a function State1D -> (dx, dv)
    """

    xs = np.atleast_1d(state.x)
    vs = np.atleast_1d(state.v)
    accel = np.atleast_1d(accel)
    worst = 0.0
    for (x, v, a) in zip(xs, vs, accel):
        (_, dv) = rhs(State1D(float(x), float(v)))
        worst = max(worst, abs(a - dv))
    return worst


######
# SystemRHS: a state -> state-derivative map with a tag and a guard
######

class SystemRHS:
    """A time-autonomous vector field over numpy state arrays.

    tag         one of SystemRHS.Tags
    fn          function(state_record) -> tuple of derivatives
    state_type  State1D, State2D or PhaseState2D
    guard       optional function(state_record) -> value(s); the flow is
                confined to guard > margin ('positive') or to the sign the
                guard had at the start ('sign')
    """

    Tags = ('harmonic2d', 'ml1d', 'ml2d_hamiltonian', 'nonstd1d_free',
            'nonstd1d_omega', 'nonstd1d', 'nonstd2d', 'isochrony_piecewise')

    def __init__(self, tag, fn, state_type, params=None,
                 guard=None, guard_kind='positive'):
        if tag not in SystemRHS.Tags:
            raise ValueError("unknown system tag '%s'" % tag)
        self.tag = tag
        self.fn = fn
        self.state_type = state_type
        self.params = params
        self.guard = guard
        self.guard_kind = guard_kind

    def __call__(self, t, y):
        return np.array(self.fn(self.state_type.from_array(y)), dtype=float)

    def guard_values(self, y):
        """The guard at the array state 'y' (None when unguarded)."""

        if self.guard is None:
            return None
        return np.atleast_1d(np.asarray(self.guard(self.state_type.from_array(y)),
                                        dtype=float))

    def __repr__(self):
        return 'SystemRHS(%s, %s)' % (self.tag, str(self.params))


def _conformal_guard(lam):
    if lam >= 0:
        return None
    return lambda s: 1.0 + lam*s.r2


def harmonic2d_system(n1, n2, omega0):
    (n1, n2, omega0) = coprime_frequencies(n1, n2, omega0)
    return SystemRHS('harmonic2d',
                     lambda s: harmonic2d_rhs(s, n1, n2, omega0),
                     PhaseState2D, params={'n1': n1, 'n2': n2, 'omega0': omega0})


def ml1d_system(p):
    return SystemRHS('ml1d', lambda s: ml1d_rhs(s, p), State1D, params=p,
                     guard=_conformal_guard(p.lam))


def ml2d_system(p, V=None):
    V = as_potential(V, p.lam)
    return SystemRHS('ml2d_hamiltonian',
                     lambda s: ml2d_hamiltonian_rhs(s, p, V),
                     PhaseState2D, params={'deform': p, 'potential': V.name},
                     guard=_conformal_guard(p.lam))


def nonstd1d_system(alpha_fn, U_fn, tag='nonstd1d'):
    alpha_fn = _as_profile(alpha_fn)
    U_fn = _as_profile(U_fn)
    return SystemRHS(tag, lambda s: nonstd1d_rhs(s, alpha_fn, U_fn), State1D,
                     params={'alpha': repr(alpha_fn), 'U': repr(U_fn)},
                     guard=lambda s: alpha_fn(s.x)*s.v + U_fn(s.x),
                     guard_kind='sign')


def nonstd1d_free_system(k):
    return SystemRHS('nonstd1d_free',
                     lambda s: (s.v, nonstd_omega_accel(s.x, s.v, k, 0.0)),
                     State1D, params=NonstdParams(k=k),
                     guard=lambda s: s.v + k*s.x*s.x, guard_kind='sign')


def nonstd1d_omega_system(k, omega):
    return SystemRHS('nonstd1d_omega',
                     lambda s: (s.v, nonstd_omega_accel(s.x, s.v, k, omega)),
                     State1D, params=NonstdParams(k=k, omega=omega),
                     guard=lambda s: k*s.v + k*k*s.x*s.x + omega*omega,
                     guard_kind='sign')


def _channel_denominator(x, v, k, omega):
    if omega == 0:
        return v + k*x*x
    return k*v + k*k*x*x + omega*omega


def nonstd2d_system(p):
    return SystemRHS('nonstd2d', lambda s: nonstd2d_rhs(s, p), State2D,
                     params=p,
                     guard=lambda s: (_channel_denominator(s.x, s.vx, p.k1, p.omega1),
                                      _channel_denominator(s.y, s.vy, p.k2, p.omega2)),
                     guard_kind='sign')


def piecewise_system(pot):
    return SystemRHS('isochrony_piecewise', lambda s: piecewise_rhs(s, pot),
                     State1D, params={'potential': repr(pot)})
