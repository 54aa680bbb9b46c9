"""
Deterministic time stepping for the laboratory's vector fields.

cfg = IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12)
traj = integrate_adaptive(rhs, t0, state0, t1, cfg)
y1 = rk4_step(rhs, t, y, h)
times = crossing_times(rhs, traj, component=0)

The adaptive integrator is the Dormand-Prince 5(4) pair (coefficients from
Hairer, Norsett & Wanner, "Solving Ordinary Differential Equations I",
2nd ed., p. 178), advancing with the 5th order solution, with a PI step
size controller.  A system guard (1 + lambda r^2, or the denominator of a
nonstandard Lagrangian) stops the integration before the guard drops to
BoundaryMargin; the stopping time is found by bisection using partial
Runge-Kutta steps from the last accepted point.
"""

import math
from dataclasses import dataclass, asdict

import numpy as np

from model import Trajectory
from errors import (ArgumentError, BudgetError, DomainError,
                    SingularLevelSetError, SingularCoefficientError)
import logger
log = logger.Log('oscillab.log', logger.Log.CRITICAL)


# Dormand-Prince 5(4) tableau
C2, C3, C4, C5 = 1.0/5.0, 3.0/10.0, 4.0/5.0, 8.0/9.0

A21 = 1.0/5.0
A31, A32 = 3.0/40.0, 9.0/40.0
A41, A42, A43 = 44.0/45.0, -56.0/15.0, 32.0/9.0
A51, A52, A53, A54 = 19372.0/6561.0, -25360.0/2187.0, 64448.0/6561.0, -212.0/729.0
A61, A62, A63, A64, A65 = (9017.0/3168.0, -355.0/33.0, 46732.0/5247.0,
                           49.0/176.0, -5103.0/18656.0)

# 5th order weights (also row 7 of the tableau, first same as last)
B1, B3, B4, B5, B6 = (35.0/384.0, 500.0/1113.0, 125.0/192.0,
                      -2187.0/6784.0, 11.0/84.0)

# 4th order embedded weights
BP1, BP3, BP4, BP5, BP6, BP7 = (5179.0/57600.0, 7571.0/16695.0, 393.0/640.0,
                                -92097.0/339200.0, 187.0/2100.0, 1.0/40.0)

E1, E3, E4, E5, E6, E7 = B1 - BP1, B3 - BP3, B4 - BP4, B5 - BP5, B6 - BP6, -BP7

# errors raised by a vector field evaluated outside its domain
StageErrors = (DomainError, SingularLevelSetError, SingularCoefficientError,
               ZeroDivisionError, FloatingPointError)


@dataclass(frozen=True)
class IntegratorConfig:
    """Settings for integrate_adaptive().

    rel_tol, abs_tol  local error per step <= abs_tol + rel_tol*|state|
    h_init            first trial step
    h_min, h_max      step bounds, a step below h_min ends the run
    max_steps         budget of step attempts
    sample_dt         output interval (0 means every accepted step)
    """

    DefaultRelTol = 1e-10
    DefaultAbsTol = 1e-12
    DefaultHInit = 1e-3
    DefaultHMin = 1e-14
    DefaultHMax = 1.0
    DefaultMaxSteps = 2000000
    DefaultSampleDt = 0.0

    rel_tol: float = DefaultRelTol
    abs_tol: float = DefaultAbsTol
    h_init: float = DefaultHInit
    h_min: float = DefaultHMin
    h_max: float = DefaultHMax
    max_steps: int = DefaultMaxSteps
    sample_dt: float = DefaultSampleDt

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ArgumentError('tolerances must be > 0, got rel=%s abs=%s'
                                % (str(self.rel_tol), str(self.abs_tol)))
        if not (0 < self.h_min <= self.h_init <= self.h_max):
            raise ArgumentError('need 0 < h_min <= h_init <= h_max, got %s, %s, %s'
                                % (str(self.h_min), str(self.h_init),
                                   str(self.h_max)))
        if int(self.max_steps) != self.max_steps or self.max_steps < 1:
            raise ArgumentError('max_steps must be a positive integer, got %s'
                                % str(self.max_steps))
        if not self.sample_dt >= 0:
            raise ArgumentError('sample_dt must be >= 0, got %s'
                                % str(self.sample_dt))

    def to_dict(self):
        return asdict(self)


class StepController:
    """PI step size control with safety factor and growth clamp."""

    Safety = 0.9
    MinFactor = 0.2
    MaxFactor = 5.0
    Alpha = 0.7 / 5.0          # exponent on the current error
    Beta = 0.4 / 5.0           # exponent on the previous error
    RejectAlpha = 1.0 / 5.0
    DomainShrink = 0.5         # after a stage left the domain

    def __init__(self):
        self.err_prev = 1.0

    def accepted(self, h, err):
        err = max(err, 1e-10)
        factor = (StepController.Safety * err**(-StepController.Alpha)
                  * self.err_prev**StepController.Beta)
        self.err_prev = max(err, 1e-4)
        return h * min(StepController.MaxFactor,
                       max(StepController.MinFactor, factor))

    def rejected(self, h, err):
        factor = StepController.Safety * err**(-StepController.RejectAlpha)
        return h * min(1.0, max(StepController.MinFactor, factor))


######
# One-step methods
######

def rk4_step(rhs, t, y, h):
    """One classical 4th order Runge-Kutta step."""

    y = np.asarray(y, dtype=float)
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5*h, y + 0.5*h*k1)
    k3 = rhs(t + 0.5*h, y + 0.5*h*k2)
    k4 = rhs(t + h, y + h*k3)
    return y + (h/6.0)*(k1 + 2.0*k2 + 2.0*k3 + k4)


def dopri5_step(rhs, t, y, h, k1=None):
    """One Dormand-Prince step.

    Returns (y5, err, k7) where y5 is the 5th order result, err the
    difference to the embedded 4th order result and k7 = rhs(t+h, y5).
    """

    y = np.asarray(y, dtype=float)
    if k1 is None:
        k1 = rhs(t, y)
    k2 = rhs(t + C2*h, y + h*(A21*k1))
    k3 = rhs(t + C3*h, y + h*(A31*k1 + A32*k2))
    k4 = rhs(t + C4*h, y + h*(A41*k1 + A42*k2 + A43*k3))
    k5 = rhs(t + C5*h, y + h*(A51*k1 + A52*k2 + A53*k3 + A54*k4))
    k6 = rhs(t + h, y + h*(A61*k1 + A62*k2 + A63*k3 + A64*k4 + A65*k5))
    y5 = y + h*(B1*k1 + B3*k3 + B4*k4 + B5*k5 + B6*k6)
    k7 = rhs(t + h, y5)
    err = h*(E1*k1 + E3*k3 + E4*k4 + E5*k5 + E6*k6 + E7*k7)
    return (y5, err, k7)


def integrate_fixed(rhs, t0, y0, t1, n_steps, method='dopri5'):
    """Integrate with n_steps equal steps; returns the final state array.

    Used to measure the convergence order of the one-step methods.
    """

    if n_steps < 1:
        raise ArgumentError('n_steps must be >= 1, got %s' % str(n_steps))
    h = (t1 - t0) / n_steps
    y = np.asarray(y0, dtype=float)
    for i in range(n_steps):
        t = t0 + i*h
        if method == 'rk4':
            y = rk4_step(rhs, t, y, h)
        elif method == 'dopri5':
            y = dopri5_step(rhs, t, y, h)[0]
        else:
            raise ArgumentError("unknown method '%s'" % method)
    return y


######
# Adaptive integration with boundary events
######

BoundaryMargin = 1e-9
EventTimeTol = 1e-12


class _Guard:
    """Effective guard: positive while the state is admissible."""

    def __init__(self, rhs, y0):
        self.rhs = rhs
        self.sign = None
        g0 = rhs.guard_values(y0) if hasattr(rhs, 'guard_values') else None
        if g0 is None:
            return
        if rhs.guard_kind == 'sign':
            if np.any(g0 == 0):
                raise SingularLevelSetError('initial state on the singular level set')
            self.sign = np.sign(g0)
        else:
            self.sign = np.ones_like(g0)
            if np.any(g0 <= BoundaryMargin):
                raise DomainError('initial guard %s not above margin %g'
                                  % (str(g0), BoundaryMargin))

    def ok(self, y):
        if self.sign is None:
            return True
        try:
            g = self.rhs.guard_values(y)
        except StageErrors:
            return False
        if self.rhs.guard_kind == 'sign':
            return bool(np.all(self.sign*g > 0))
        return bool(np.all(g > BoundaryMargin))


def check_initial(rhs, state0):
    """Raise the error integrate_adaptive would give for a bad start state."""

    _Guard(rhs, np.asarray(state0.as_array(), dtype=float))


def _error_norm(err, y, y_new, cfg):
    scale = cfg.abs_tol + cfg.rel_tol*np.maximum(np.abs(y), np.abs(y_new))
    return float(np.max(np.abs(err) / scale))


def _partial(rhs, t, y, k1, s):
    """State at t + s by a single Dormand-Prince step from (t, y)."""

    if s == 0:
        return y
    return dopri5_step(rhs, t, y, s, k1)[0]


def _locate_event(rhs, guard, t, y, k1, h):
    """Largest s in [0, h) with an admissible partial step, by bisection."""

    (lo, hi) = (0.0, h)
    while hi - lo > EventTimeTol:
        mid = 0.5*(lo + hi)
        try:
            ok = guard.ok(_partial(rhs, t, y, k1, mid))
        except StageErrors:
            ok = False
        if ok:
            lo = mid
        else:
            hi = mid
    return (lo, _partial(rhs, t, y, k1, lo))


def _as_array(state):
    if hasattr(state, 'as_array'):
        return state.as_array()
    return np.asarray(state, dtype=float)


def integrate_adaptive(rhs, t0, state0, t1, cfg=None):
    """Integrate 'rhs' from (t0, state0) to t1.

    rhs     a SystemRHS (or any callable (t, y) -> dy with a state_type)
    state0  a state record or array
    cfg     an IntegratorConfig (defaults if None)

    Returns a Trajectory whose meta['termination'] is 'reached_t1',
    'boundary_event' or 'step_underflow'.  Raises DomainError if the
    initial state is not admissible and BudgetError when max_steps step
    attempts do not reach the end.
    """

    if cfg is None:
        cfg = IntegratorConfig()
    if not t1 > t0:
        raise ArgumentError('need t1 > t0, got t0=%s, t1=%s' % (str(t0), str(t1)))

    y = _as_array(state0)
    k1 = rhs(t0, y)                 # raises DomainError outside the domain
    guard = _Guard(rhs, y)
    controller = StepController()
    tag = getattr(rhs, 'tag', 'callable')

    log.info('integrate_adaptive: %s from t=%r to t=%r, rel_tol=%g abs_tol=%g'
             % (tag, t0, t1, cfg.rel_tol, cfg.abs_tol))

    times = [t0]
    states = [y]
    sample_index = 1

    def emit(t_s, y_s):
        if t_s > times[-1]:
            times.append(t_s)
            states.append(y_s)

    def emit_samples(t, y, k1, t_end, y_end):
        # fixed interval samples inside (t, t_end], then t_end itself if due
        nonlocal sample_index
        if cfg.sample_dt == 0:
            emit(t_end, y_end)
            return
        while True:
            t_s = t0 + sample_index*cfg.sample_dt
            if t_s > t_end:
                break
            emit(t_s, y_end if t_s == t_end else _partial(rhs, t, y, k1, t_s - t))
            sample_index += 1

    t = t0
    h = cfg.h_init
    attempts = 0
    accepted = 0
    rejected = 0
    reason = Trajectory.ReachedT1

    while t < t1:
        if attempts >= cfg.max_steps:
            log.error('integrate_adaptive: %s exhausted %d steps at t=%r'
                      % (tag, cfg.max_steps, t))
            raise BudgetError('max_steps=%d exceeded at t=%r' % (cfg.max_steps, t))
        if h < cfg.h_min:
            reason = Trajectory.StepUnderflow
            log.warn('integrate_adaptive: step %g below h_min at t=%r' % (h, t))
            break
        attempts += 1

        h_try = min(h, cfg.h_max, t1 - t)
        last = (h_try == t1 - t)

        try:
            (y_new, err_vec, k_new) = dopri5_step(rhs, t, y, h_try, k1)
            err = _error_norm(err_vec, y, y_new, cfg)
        except StageErrors as exc:
            rejected += 1
            log.debug('integrate_adaptive: stage error at t=%r, h=%g: %s'
                      % (t, h_try, str(exc)))
            h = h_try * StepController.DomainShrink
            continue

        if not math.isfinite(err) or err > 1.0:
            rejected += 1
            if math.isfinite(err):
                h = controller.rejected(h_try, err)
            else:
                h = h_try * StepController.DomainShrink
            continue

        if not guard.ok(y_new):
            (s, y_event) = _locate_event(rhs, guard, t, y, k1, h_try)
            log.debug('integrate_adaptive: boundary event at t=%r' % (t + s))
            if s > 0:
                emit_samples(t, y, k1, t + s, y_event)
            emit(t + s, y_event)
            reason = Trajectory.BoundaryEvent
            break

        accepted += 1
        t_new = t1 if last else t + h_try
        emit_samples(t, y, k1, t_new, y_new)
        (t, y, k1) = (t_new, y_new, k_new)
        h = min(controller.accepted(h_try, err), cfg.h_max)

    if reason != Trajectory.BoundaryEvent:
        emit(t, y)

    log.info('integrate_adaptive: %s ended (%s) at t=%r, %d accepted, %d rejected'
             % (tag, reason, times[-1], accepted, rejected))

    meta = {'system': tag,
            'params': repr(getattr(rhs, 'params', None)),
            'integrator': cfg.to_dict(),
            'termination': reason,
            'accepted_steps': accepted,
            'rejected_steps': rejected}
    state_type = getattr(rhs, 'state_type', None)
    return Trajectory(np.array(times), np.array(states), state_type, meta)


######
# Zero crossings on a trajectory
######

def crossing_times(rhs, traj, component=0, level=0.0, tol=1e-13):
    """Times where state[component] crosses 'level' upwards.

    Each crossing between two consecutive samples is located by bisection
    on partial Dormand-Prince steps from the left sample, so 'traj' should
    be sampled at every accepted step (sample_dt == 0).
    """

    values = traj.states[:, component] - level
    result = []
    for i in range(len(traj) - 1):
        if not (values[i] < 0 <= values[i + 1]):
            continue
        (t, y) = (traj.times[i], traj.states[i])
        k1 = rhs(t, y)
        (lo, hi) = (0.0, traj.times[i + 1] - t)
        while hi - lo > tol:
            mid = 0.5*(lo + hi)
            if _partial(rhs, t, y, k1, mid)[component] - level < 0:
                lo = mid
            else:
                hi = mid
        result.append(t + 0.5*(lo + hi))
    return result


def measure_period(rhs, state0, n_periods, t_max, cfg=None, component=0):
    """Average time between successive upward zero crossings.

    Integrates from t=0 to t_max and uses the first n_periods+1 crossings.
    """

    traj = integrate_adaptive(rhs, 0.0, state0, t_max, cfg)
    crossings = crossing_times(rhs, traj, component)
    if len(crossings) < n_periods + 1:
        raise ArgumentError('only %d crossings before t=%r'
                            % (len(crossings), t_max))
    return (crossings[n_periods] - crossings[0]) / n_periods
