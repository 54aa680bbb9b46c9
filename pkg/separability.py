"""
Coordinate charts, separable potential families and their quadratic
first integrals.

(zx, y) = to_zx(x, y, lam)          (x, y) = from_zx(zx, y, lam)
(x, zy) = to_zy(x, y, lam)          (x, y) = from_zy(x, zy, lam)
(r, phi) = to_polar(x, y)           (x, y) = from_polar(r, phi)

pot = SeparablePotential('zx_family', W1, W2, lam)
(I1, I2) = quadratic_integrals('zx_family', phase_state, params, pot)
residual = hj_residual('zx_family', phase_state, params, pot, E)

The families, with V entering H(lambda) as alpha^2 V/2:

    zx_family      V = W1(zx)/(1 + lambda y^2) + W2(y)
    zy_family      V = W1(x) + W2(zy)/(1 + lambda x^2)
    polar_family   V = F(r) + G(phi)/r^2
    superseparable V = r^2/(1 + lambda r^2), a member of all three
"""

import math

from model import Profile, require_domain
from dynamics import Potential
from errors import (DomainError, AngleUndefinedError, FamilyMismatchError,
                    ArgumentError)
import logger
log = logger.Log('oscillab.log', logger.Log.CRITICAL)


ZxFamily = 'zx_family'
ZyFamily = 'zy_family'
PolarFamily = 'polar_family'
Superseparable = 'superseparable'

Families = (ZxFamily, ZyFamily, PolarFamily)
Tags = Families + (Superseparable,)


######
# Coordinate charts
######

def _chart_factor(u, lam, what):
    w = 1.0 + lam*u*u
    if w <= 0:
        raise DomainError('%s: 1 + lambda*%s^2 = %s is not positive'
                          % (what, what[-1], str(w)))
    return w


def to_zx(x, y, lam):
    """(x, y) -> (zx, y) with zx = x/sqrt(1 + lambda y^2)."""

    return (x / math.sqrt(_chart_factor(y, lam, 'to_zx: y')), y)


def from_zx(zx, y, lam):
    """Inverse of to_zx()."""

    _chart_factor(zx, lam, 'from_zx: z')
    return (zx * math.sqrt(_chart_factor(y, lam, 'from_zx: y')), y)


def to_zy(x, y, lam):
    """(x, y) -> (x, zy) with zy = y/sqrt(1 + lambda x^2)."""

    return (x, y / math.sqrt(_chart_factor(x, lam, 'to_zy: x')))


def from_zy(x, zy, lam):
    """Inverse of to_zy()."""

    _chart_factor(zy, lam, 'from_zy: z')
    return (x, zy * math.sqrt(_chart_factor(x, lam, 'from_zy: x')))


def to_polar(x, y):
    """(x, y) -> (r, phi), phi in (-pi, pi]."""

    if x == 0 and y == 0:
        raise AngleUndefinedError('polar angle undefined at the origin')
    return (math.hypot(x, y), math.atan2(y, x))


def from_polar(r, phi):
    return (r*math.cos(phi), r*math.sin(phi))


def polar_momenta(s):
    """(p_r, p_phi) of a PhaseState2D.

    p_r = (x px + y py)/r,  p_phi = x py - y px
    """

    (r, _) = to_polar(s.x, s.y)
    return ((s.x*s.px + s.y*s.py) / r, s.x*s.py - s.y*s.px)


######
# Separable potentials
######

def _profile(fn):
    return fn if isinstance(fn, Profile) else Profile(fn)


def _saturating(lam):
    """The profile u^2/(1 + lambda u^2)."""

    return Profile(lambda u: u*u / (1.0 + lam*u*u),
                   lambda u: 2*u / (1.0 + lam*u*u)**2,
                   name='u^2/(1+%s*u^2)' % lam)


class SeparablePotential(Potential):
    """A potential of one of the separable families.

    family  'zx_family', 'zy_family', 'polar_family' or 'superseparable'
    first   W1 (zx, zy families) or F(r) (polar family)
    second  W2 (zx, zy families) or G(phi) (polar family)
    lam     the deformation parameter the charts are built with

    Components may be Profile objects or plain callables.  The gradient
    uses the chain rule through the chart, with profile derivatives
    analytic where given and finite differences otherwise.
    """

    def __init__(self, family, first=None, second=None, lam=0.0):
        if family not in Tags:
            raise ArgumentError("unknown potential family '%s'" % family)
        if family != Superseparable and (first is None or second is None):
            raise ArgumentError('%s needs two component functions' % family)
        self.family = family
        self.lam = lam
        self.name = family
        if family == Superseparable:
            self.first = self.second = None
        else:
            self.first = _profile(first)
            self.second = _profile(second)

    @classmethod
    def superseparable(cls, lam):
        return cls(Superseparable, lam=lam)

    def components(self, family):
        """(first, second) Profiles of this potential written in 'family'."""

        if family not in Families:
            raise ArgumentError("unknown coordinate family '%s'" % family)
        if self.family == Superseparable:
            sat = _saturating(self.lam)
            if family in (ZxFamily, ZyFamily):
                return (sat, sat)
            return (sat, Profile.constant(0.0))
        if self.family != family:
            raise FamilyMismatchError('a %s potential used in the %s chart'
                                      % (self.family, family))
        return (self.first, self.second)

    def value(self, x, y):
        lam = self.lam
        if self.family == Superseparable:
            r2 = x*x + y*y
            return r2 / (1.0 + lam*r2)
        if self.family == ZxFamily:
            (z, _) = to_zx(x, y, lam)
            return self.first(z) / (1.0 + lam*y*y) + self.second(y)
        if self.family == ZyFamily:
            (_, z) = to_zy(x, y, lam)
            return self.first(x) + self.second(z) / (1.0 + lam*x*x)
        (r, phi) = to_polar(x, y)
        return self.first(r) + self.second(phi) / (r*r)

    def gradient(self, x, y):
        lam = self.lam
        if self.family == Superseparable:
            w = 1.0 + lam*(x*x + y*y)
            return (2*x / (w*w), 2*y / (w*w))
        if self.family == ZxFamily:
            a = _chart_factor(y, lam, 'gradient: y')
            (z, _) = to_zx(x, y, lam)
            dw1 = self.first.derivative(z)
            gx = dw1 / (a*math.sqrt(a))
            gy = (-dw1*z*lam*y / (a*a) - 2*lam*y*self.first(z) / (a*a)
                  + self.second.derivative(y))
            return (gx, gy)
        if self.family == ZyFamily:
            b = _chart_factor(x, lam, 'gradient: x')
            (_, z) = to_zy(x, y, lam)
            dw2 = self.second.derivative(z)
            gx = (self.first.derivative(x) - dw2*z*lam*x / (b*b)
                  - 2*lam*x*self.second(z) / (b*b))
            gy = dw2 / (b*math.sqrt(b))
            return (gx, gy)
        (r, phi) = to_polar(x, y)
        df = self.first.derivative(r)
        g = self.second(phi)
        dg = self.second.derivative(phi)
        r2 = r*r
        gx = df*x/r - 2*g*x/(r2*r2) - dg*y/(r2*r2)
        gy = df*y/r - 2*g*y/(r2*r2) + dg*x/(r2*r2)
        return (gx, gy)

    def __repr__(self):
        if self.family == Superseparable:
            return 'SeparablePotential(superseparable, lambda=%s)' % self.lam
        return ('SeparablePotential(%s, %s, %s, lambda=%s)'
                % (self.family, repr(self.first), repr(self.second), self.lam))


######
# The super-separable oscillator potential
######

def superseparable_V(x, y, p):
    """(alpha^2/2) r^2/(1 + lambda r^2)."""

    r2 = x*x + y*y
    w = 1.0 + p.lam*r2
    if w <= 0:
        raise DomainError('(%s, %s) outside 1 + lambda*r^2 > 0' % (str(x), str(y)))
    return 0.5*p.alpha*p.alpha * r2 / w


def superseparable_identity_residual(x, y, p):
    """Largest pairwise difference of the three chart forms of superseparable_V()."""

    superseparable_V(x, y, p)
    lam = p.lam
    half_a2 = 0.5*p.alpha*p.alpha
    (zx, _) = to_zx(x, y, lam)
    (_, zy) = to_zy(x, y, lam)
    (r, _) = to_polar(x, y)

    in_zx = half_a2 * (zx*zx/(1.0 + lam*zx*zx) + y*y) / (1.0 + lam*y*y)
    in_zy = half_a2 * (x*x + zy*zy/(1.0 + lam*zy*zy)) / (1.0 + lam*x*x)
    in_polar = half_a2 * r*r / (1.0 + lam*r*r)
    return max(abs(in_zx - in_zy), abs(in_zx - in_polar), abs(in_zy - in_polar))


def lagrange_identity_residual(s, lam):
    """|(1 + lambda r^2) p^2 - lambda J^2 - (p^2 + lambda (x.p)^2)| at a PhaseState2D."""

    r2 = s.x*s.x + s.y*s.y
    p2 = s.px*s.px + s.py*s.py
    j = s.x*s.py - s.y*s.px
    d = s.x*s.px + s.y*s.py
    return abs((1.0 + lam*r2)*p2 - lam*j*j - (p2 + lam*d*d))


######
# Quadratic integrals and the Hamilton-Jacobi residual
######

def _check_lambda(pot, p):
    if pot.lam != p.lam:
        raise ArgumentError('potential built for lambda=%s used with lambda=%s'
                            % (str(pot.lam), str(p.lam)))


def quadratic_integrals(family, s, p, pot):
    """The two quadratic first integrals (I1, I2) of H(lambda) with 'pot'.

    family  the chart the potential separates in
    s       a PhaseState2D
    p       a DeformParams
    pot     a SeparablePotential of that family (or superseparable)

    I1 + I2 == 2 H(lambda) for every family.
    """

    require_domain(s, p)
    _check_lambda(pot, p)
    (first, second) = pot.components(family)
    lam = p.lam
    a2 = p.alpha*p.alpha
    w = 1.0 + lam*(s.x*s.x + s.y*s.y)
    j = s.x*s.py - s.y*s.px

    if family == ZxFamily:
        (zx, _) = to_zx(s.x, s.y, lam)
        w1 = first(zx)
        i1 = w*s.px*s.px + a2*w1
        i2 = (w*s.py*s.py - lam*j*j
              + a2*(second(s.y) - lam*s.y*s.y/(1.0 + lam*s.y*s.y)*w1))
        return (i1, i2)

    if family == ZyFamily:
        (_, zy) = to_zy(s.x, s.y, lam)
        w2 = second(zy)
        i1 = (w*s.px*s.px - lam*j*j
              + a2*(first(s.x) - lam*s.x*s.x/(1.0 + lam*s.x*s.x)*w2))
        i2 = w*s.py*s.py + a2*w2
        return (i1, i2)

    (r, phi) = to_polar(s.x, s.y)
    (pr, pphi) = polar_momenta(s)
    g = second(phi)
    c = (1.0 - r*r) / (r*r)
    i1 = w*pr*pr + c*pphi*pphi + a2*(first(r) + c*g)
    i2 = pphi*pphi + a2*g
    return (i1, i2)


def hj_residual(family, s, p, pot, E):
    """|LHS - 2E| of the Hamilton-Jacobi equation in the 'family' chart.

    The gradient of S is replaced by the chart momenta of 's' and the
    separated form is divided by its chart multiplier, so the residual
    is 2|H(lambda) - E|.
    """

    if family not in Families:
        raise ArgumentError("unknown coordinate family '%s'" % family)
    require_domain(s, p)
    _check_lambda(pot, p)
    lam = p.lam
    a2 = p.alpha*p.alpha
    V = pot.value(s.x, s.y)

    if family == ZxFamily:
        a = _chart_factor(s.y, lam, 'hj_residual: y')
        (zx, _) = to_zx(s.x, s.y, lam)
        pz = s.px*math.sqrt(a)
        py = s.py + lam*s.x*s.y*s.px/a
        lhs = ((1.0 + lam*zx*zx)*pz*pz + a*a*py*py + a2*a*V) / a
    elif family == ZyFamily:
        b = _chart_factor(s.x, lam, 'hj_residual: x')
        (_, zy) = to_zy(s.x, s.y, lam)
        pz = s.py*math.sqrt(b)
        px = s.px + lam*s.x*s.y*s.py/b
        lhs = (b*b*px*px + (1.0 + lam*zy*zy)*pz*pz + a2*b*V) / b
    else:
        (r, _) = to_polar(s.x, s.y)
        (pr, pphi) = polar_momenta(s)
        lhs = (1.0 + lam*r*r)*pr*pr + pphi*pphi/(r*r) + a2*V

    return abs(lhs - 2.0*E)
