"""
Domain types shared by every module of the laboratory.

params = DeformParams(lam, alpha)
state = State2D.checked(x, y, vx, vy, params)      # validating constructor
ok = validate_domain(state, params)

All quantities are dimensionless.  Every type is an immutable value
object, so states and parameters can be shared between threads freely.
"""

import math
from dataclasses import dataclass, field

import numpy as np

import utils
from errors import DomainError, ArgumentError
import logger
log = logger.Log('oscillab.log', logger.Log.CRITICAL)


######
# Parameters
######

@dataclass(frozen=True)
class DeformParams:
    """The pair (lambda, alpha) of the deformed oscillator family.

    lam    deformation parameter, any finite real (0 is the harmonic limit)
    alpha  oscillator strength, alpha > 0
    """

    lam: float
    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.lam):
            raise ArgumentError('lambda must be finite, got %s' % str(self.lam))
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise ArgumentError('alpha must be > 0, got %s' % str(self.alpha))


def coprime_frequencies(n1, n2, omega0):
    """Normalise (n1, n2, omega0) so gcd(n1, n2) == 1.

    The frequencies n1*omega0 and n2*omega0 are unchanged.
    """

    if int(n1) != n1 or int(n2) != n2 or n1 < 1 or n2 < 1:
        raise ArgumentError('n1, n2 must be positive integers, got %s, %s'
                            % (str(n1), str(n2)))
    (n1, n2) = (int(n1), int(n2))
    g = math.gcd(n1, n2)
    return (n1 // g, n2 // g, omega0 * g)


@dataclass(frozen=True)
class NonstdParams:
    """Parameters of the nonstandard-Lagrangian oscillators.

    One-dimensional systems use 'k' and 'omega' (omega == 0 is the
    U = k*x^2 case).  Two-dimensional systems use 'k1', 'k2' and, for the
    rational case, 'omega0' with positive integers 'n1', 'n2' giving
    channel frequencies n1*omega0 and n2*omega0.  (n1, n2) are stored in
    coprime form with omega0 rescaled to match.
    """

    k: float = 0.0
    omega: float = 0.0
    k1: float = 0.0
    k2: float = 0.0
    omega0: float = 0.0
    n1: int = 1
    n2: int = 1

    def __post_init__(self):
        for name in ('k', 'omega', 'k1', 'k2', 'omega0'):
            if not math.isfinite(getattr(self, name)):
                raise ArgumentError('%s must be finite' % name)
        (n1, n2, omega0) = coprime_frequencies(self.n1, self.n2, self.omega0)
        object.__setattr__(self, 'n1', n1)
        object.__setattr__(self, 'n2', n2)
        object.__setattr__(self, 'omega0', omega0)

    @property
    def omega1(self):
        return self.n1 * self.omega0

    @property
    def omega2(self):
        return self.n2 * self.omega0


######
# States
######

class _State:
    """Behaviour shared by the state records."""

    Fields = ()

    def as_array(self):
        return np.array([getattr(self, name) for name in self.Fields],
                        dtype=float)

    @classmethod
    def from_array(cls, values):
        return cls(*(float(v) for v in values))

    @property
    def r2(self):
        return sum(getattr(self, name)**2 for name in self.Fields[:self.Dim])

    @classmethod
    def checked(cls, *args, params=None):
        """Build the state, rejecting it if it is outside the domain."""

        state = cls(*args)
        if params is not None:
            require_domain(state, params)
        return state


@dataclass(frozen=True)
class State1D(_State):
    x: float
    v: float

    Fields = ('x', 'v')
    Dim = 1


@dataclass(frozen=True)
class State2D(_State):
    x: float
    y: float
    vx: float
    vy: float

    Fields = ('x', 'y', 'vx', 'vy')
    Dim = 2


@dataclass(frozen=True)
class PhaseState2D(_State):
    x: float
    y: float
    px: float
    py: float

    Fields = ('x', 'y', 'px', 'py')
    Dim = 2


def conformal_factor(r2, lam):
    """The quantity 1 + lambda*r^2."""

    return 1.0 + lam * r2


def validate_domain(state, params):
    """True iff 1 + lambda*r^2 > 0 for the state's configuration.

    state   a State1D, State2D or PhaseState2D
    params  a DeformParams (or anything with a 'lam' attribute)
    """

    if params.lam >= 0:
        return True
    return conformal_factor(state.r2, params.lam) > 0


def require_domain(state, params):
    """Raise DomainError unless validate_domain(state, params)."""

    if not validate_domain(state, params):
        raise DomainError('state %s outside 1 + lambda*r^2 > 0 (lambda=%s)'
                          % (str(state), str(params.lam)))


######
# A one-dimensional function with an optional analytic derivative
######

class Profile:
    """A real function of one variable plus its derivative.

    profile = Profile(fn, dfn)       # dfn optional
    value = profile(x)
    slope = profile.derivative(x)

    Without 'dfn' the derivative comes from 4th-order central differences.
    'dropfn'(x, h), when given, is fn(x) - fn(x - h) formed without the
    cancellation of subtracting two close values.
    """

    def __init__(self, fn, dfn=None, name=None, dropfn=None):
        self.fn = fn
        self.dfn = dfn
        self.dropfn = dropfn
        self.name = name or getattr(fn, '__name__', 'profile')

    def __call__(self, x):
        return self.fn(x)

    def derivative(self, x):
        if self.dfn is not None:
            return self.dfn(x)
        return utils.central_diff4(self.fn, x)

    def drop(self, x, h):
        """fn(x) - fn(x - h)."""

        if self.dropfn is not None:
            return self.dropfn(x, h)
        return self.fn(x) - self.fn(x - h)

    def __repr__(self):
        return 'Profile(%s)' % self.name

    @classmethod
    def constant(cls, c):
        return cls(lambda x: c + 0.0*x, lambda x: 0.0*x, name='const(%s)' % c)

    @classmethod
    def quadratic(cls, k, c=0.0):
        """k*x^2 + c"""

        return cls(lambda x: k*x*x + c, lambda x: 2*k*x,
                   name='%s*x^2+%s' % (k, c),
                   dropfn=lambda x, h: k*h*(2*x - h))

    @classmethod
    def power(cls, c, n):
        """c*x^n"""

        dropfn = None
        if isinstance(n, int) and n >= 1:
            # x^n - y^n = (x - y) * sum x^(n-1-i) y^i; the terms share a sign while x, y do
            dropfn = lambda x, h: c*h*sum(x**(n - 1 - i) * (x - h)**i for i in range(n))
        return cls(lambda x: c * x**n, lambda x: n * c * x**(n - 1),
                   name='%s*x^%s' % (c, n), dropfn=dropfn)


######
# Trajectories
######

@dataclass(frozen=True)
class Trajectory:
    """Time-ordered samples produced by an integrator.

    times       1D array, strictly increasing
    states      2D array, one row per time, columns are state_type.Fields
    state_type  the record class of each row
    meta        system tag, parameters, integrator settings and the
                termination reason
    """

    times: np.ndarray
    states: np.ndarray
    state_type: type
    meta: dict = field(default_factory=dict)

    # the possible values of meta['termination']
    ReachedT1 = 'reached_t1'
    BoundaryEvent = 'boundary_event'
    StepUnderflow = 'step_underflow'
    Terminations = (ReachedT1, BoundaryEvent, StepUnderflow)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        states = np.asarray(self.states, dtype=float)
        if states.ndim != 2 or len(states) != len(times):
            raise ArgumentError('%d states for %d times'
                                % (len(states), len(times)))
        if len(times) > 1 and not np.all(np.diff(times) > 0):
            raise ArgumentError('trajectory times must strictly increase')
        reason = self.meta.get('termination', None)
        if reason is not None and reason not in self.Terminations:
            raise ArgumentError("unknown termination reason '%s'" % reason)
        object.__setattr__(self, 'times', times)
        object.__setattr__(self, 'states', states)

    def __len__(self):
        return len(self.times)

    @property
    def termination(self):
        return self.meta.get('termination', None)

    def record(self, index):
        """The state record at sample 'index'."""

        return self.state_type.from_array(self.states[index])

    def records(self):
        """All samples as state records."""

        return [self.state_type.from_array(row) for row in self.states]

    def column(self, name):
        """The time series of one state field."""

        return self.states[:, self.state_type.Fields.index(name)]
