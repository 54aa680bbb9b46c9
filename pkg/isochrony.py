"""
Period of oscillation as a function of energy, for H = v^2/2 + U(x).

pot = PiecewisePotential(U1, U2)        # U1 on x < 0, U2 on x > 0
(x_left, x_right) = turning_points(pot, E)
T = period(pot, E)
spread = isochrony_scan(pot, [0.01, 1.0, 100.0])
"""

import math

import numpy as np
from numpy.polynomial import legendre
from scipy import optimize

from model import Profile
from errors import EnergyRangeError, ArgumentError
import logger
log = logger.Log('oscillab.log', logger.Log.CRITICAL)


# turning points are bisected to full precision, then moved inward one
# ulp at a time until U(x) <= E
TurningXTol = 1e-300
TurningRTol = 4*np.finfo(float).eps
TurningMaxIter = 400
InwardSteps = 64

# brackets are grown by doubling up to this distance from the origin
SearchBound = 1e8

# Gauss-Legendre node counts are doubled until the relative change
# in T falls below QuadTol
QuadTol = 1e-10
QuadStart = 16
QuadMax = 512

# points per half-line used to check monotonicity
MonotoneSamples = 64
MonotoneExtent = 10.0


def _profile(fn):
    return fn if isinstance(fn, Profile) else Profile(fn)


class PiecewisePotential:
    """U(x) = U1(x) for x < 0, U2(x) for x >= 0, with U(0) = 0.

    U1 must decrease on x < 0 and U2 increase on x > 0; both are checked
    on a sample of points when the potential is built.
    """

    def __init__(self, U1, U2, name=None, check=True):
        self.U1 = _profile(U1)
        self.U2 = _profile(U2)
        self.name = name or 'piecewise(%s, %s)' % (self.U1.name, self.U2.name)
        if check:
            self.check()

    @classmethod
    def symmetric(cls, U, name=None):
        return cls(U, U, name=name)

    @classmethod
    def quadratic(cls, omega1, omega2):
        """U1 = omega1^2 x^2, U2 = omega2^2 x^2."""

        return cls(Profile.quadratic(omega1*omega1), Profile.quadratic(omega2*omega2),
                   name='quadratic(%s, %s)' % (omega1, omega2))

    def check(self):
        """Raise ArgumentError unless U(0) = 0 and the sides are monotone."""

        if abs(self.U1(0.0)) > 1e-14 or abs(self.U2(0.0)) > 1e-14:
            raise ArgumentError('%s: U(0) must be 0' % self.name)
        xs = np.linspace(0.0, MonotoneExtent, MonotoneSamples + 1)[1:]
        left = np.array([self.U1(-x) for x in xs])
        right = np.array([self.U2(x) for x in xs])
        if np.any(np.diff(left) <= 0) or left[0] <= 0:
            raise ArgumentError('%s: U1 is not decreasing on x < 0' % self.name)
        if np.any(np.diff(right) <= 0) or right[0] <= 0:
            raise ArgumentError('%s: U2 is not increasing on x > 0' % self.name)

    def __call__(self, x):
        return self.U1(x) if x < 0 else self.U2(x)

    def derivative(self, x):
        return self.U1.derivative(x) if x < 0 else self.U2.derivative(x)

    def __repr__(self):
        return 'PiecewisePotential(%s)' % self.name


def _root(fn, E, direction):
    """Where fn(x) = E on the half-line of sign 'direction'.

    The result is on the inner side of the root: fn(x) <= E.
    """

    bound = 1.0
    while fn(direction*bound) < E:
        bound *= 2.0
        if bound > SearchBound:
            raise EnergyRangeError('no turning point within |x| < %g for E=%s'
                                   % (SearchBound, repr(E)))
    (a, b) = sorted((0.0, direction*bound))
    x = optimize.bisect(lambda x: fn(x) - E, a, b, xtol=TurningXTol, rtol=TurningRTol,
                        maxiter=TurningMaxIter)
    for _ in range(InwardSteps):
        if fn(x) <= E:
            return x
        x = float(np.nextafter(x, 0.0))
    raise EnergyRangeError('turning point for E=%s not bracketed near x=%s'
                           % (repr(E), repr(x)))


def turning_points(pot, E):
    """(x_left, x_right) with U(x_left) = U(x_right) = E, x_left < 0 < x_right.

    Both are on the inner side: U(x_left), U(x_right) <= E.
    """

    if not (math.isfinite(E) and E > 0):
        raise EnergyRangeError('energy must be > 0, got %s' % repr(E))
    return (_root(pot.U1, E, -1.0), _root(pot.U2, E, 1.0))


def _half_period(U, x_turn, n_nodes):
    """Integral of dx/sqrt(U(x_turn) - U(x)) from 0 to x_turn.

    x = x_turn - h with h = +-s^2, so dx = 2 s ds and the integrand
    2 s/sqrt(U.drop(x_turn, h)) is regular at s = 0.  The drop is never
    formed as a difference of two values close to E.
    """

    sign = 1.0 if x_turn > 0 else -1.0
    s_max = math.sqrt(abs(x_turn))
    (nodes, weights) = legendre.leggauss(n_nodes)
    s = 0.5*s_max*(nodes + 1.0)
    gap = np.array([U.drop(x_turn, sign*si*si) for si in s])
    if not np.all(gap > 0):
        raise EnergyRangeError("U(x_turn) - U(x) <= 0 inside the well, U is not monotone near x=%s"
                               % repr(x_turn))
    return 0.5*s_max*float(np.sum(weights * 2*s / np.sqrt(gap)))


def period(pot, E, n_max=None):
    """T(E) = sqrt(2) * integral of dx/sqrt(E - U(x)) between the turning points.

    Each side is integrated up to its turning point at the energy U(x_turn),
    which is within a few ulps below E.  Gauss-Legendre node counts double
    from QuadStart until T changes by less than QuadTol, to at most
    'n_max' nodes (default QuadMax).
    """

    if n_max is None:
        n_max = QuadMax
    (x_left, x_right) = turning_points(pot, E)
    previous = None
    n = QuadStart
    while n <= n_max:
        T = math.sqrt(2.0) * (_half_period(pot.U1, x_left, n)
                              + _half_period(pot.U2, x_right, n))
        if previous is not None and abs(T - previous) <= QuadTol*abs(T):
            return T
        previous = T
        n *= 2
    log.warn('period: %s at E=%s not converged to %g with %d nodes'
             % (repr(pot), repr(E), QuadTol, n_max))
    return previous


def isochrony_scan(pot, energies, n_max=None):
    """(max T - min T)/mean T over the energies."""

    energies = list(energies)
    if not energies:
        raise ArgumentError('isochrony_scan needs at least one energy')
    periods = np.array([period(pot, E, n_max) for E in energies])
    spread = float((periods.max() - periods.min()) / periods.mean())
    log.info('isochrony_scan: %s over %d energies, spread %s'
             % (repr(pot), len(energies), repr(spread)))
    return spread


def quadratic_period(omega1, omega2):
    """Closed form T = (pi/sqrt(2)) (1/omega1 + 1/omega2)."""

    return math.pi/math.sqrt(2.0) * (1.0/omega1 + 1.0/omega2)
