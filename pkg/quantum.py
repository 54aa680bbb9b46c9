"""
The one-dimensional quantum nonlinear oscillator.

The Hamiltonian is diagonalised in the coordinate q in which the
momentum is -i d/dq, where it takes the Schrodinger form

    H1 = -1/2 d^2/dq^2 + (alpha^2/2) x(q)^2/(1 + lambda x(q)^2)

params = QuantumParams.from_alpha(lam, alpha)
levels = ladder_spectrum(params, 5)
matrix = discretize_hamiltonian(params, GridSpec(2000))
numeric = eig_lowest(matrix, 5)
report = spectrum_report(params, GridSpec(2000), 5)
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from errors import DomainError, GridError, ArgumentError
import logger
log = logger.Log('oscillab.log', logger.Log.CRITICAL)


# bisection tolerance of eig_lowest()
EigenTol = 1e-10

# near-integer beta/lambda ratios are snapped before counting bound states
CountSnap = 1e-9

# default half-width of the q box when lambda == 0
DefaultQMax = 10.0

# decay lengths kept beyond the outermost turning point (lambda > 0)
DecayLengths = 14.0

Infinite = 'infinite'


######
# Parameters
######

def beta_from_alpha(alpha, lam):
    """The positive root of beta*(beta + lambda) = alpha^2."""

    if not alpha > 0:
        raise ArgumentError('alpha must be > 0, got %s' % str(alpha))
    return 0.5*(-lam + math.sqrt(lam*lam + 4*alpha*alpha))


@dataclass(frozen=True)
class QuantumParams:
    """(lambda, alpha, beta) with alpha^2 = beta*(beta + lambda)."""

    lam: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not math.isfinite(self.lam):
            raise ArgumentError('lambda must be finite')
        if not (self.alpha > 0 and self.beta > 0):
            raise ArgumentError('alpha and beta must be > 0, got %s, %s'
                                % (str(self.alpha), str(self.beta)))
        a2 = self.alpha*self.alpha
        if abs(self.beta*(self.beta + self.lam) - a2) > 1e-12*max(1.0, a2):
            raise ArgumentError('beta*(beta + lambda) != alpha^2 for %s' % str(self))

    @classmethod
    def from_alpha(cls, lam, alpha):
        return cls(lam, alpha, beta_from_alpha(alpha, lam))

    @classmethod
    def from_beta(cls, lam, beta):
        a2 = beta*(beta + lam)
        if not (beta > 0 and a2 > 0):
            raise ArgumentError('no positive alpha for beta=%s, lambda=%s'
                                % (str(beta), str(lam)))
        return cls(lam, math.sqrt(a2), beta)

    @property
    def threshold(self):
        """Continuum threshold alpha^2/(2 lambda), None unless lambda > 0."""

        if self.lam > 0:
            return self.alpha*self.alpha / (2*self.lam)
        return None


######
# The ladder
######

def ladder_spectrum(p, n_levels):
    """E_n = n beta - n^2 lambda/2 + beta/2 for n = 0 .. n_levels-1."""

    if n_levels < 1:
        raise ArgumentError('n_levels must be >= 1, got %s' % str(n_levels))
    n = np.arange(n_levels, dtype=float)
    return n*p.beta - 0.5*n*n*p.lam + 0.5*p.beta


def shape_invariance_remainder(beta1, lam):
    """R(beta1) in A(beta) A+(beta) = A+(beta1) A(beta1) + R(beta1)."""

    return beta1 + 0.5*lam


def shape_invariance_ladder(p, n_levels):
    """The ladder built by stepping beta -> beta - lambda and summing R."""

    if n_levels < 1:
        raise ArgumentError('n_levels must be >= 1, got %s' % str(n_levels))
    levels = [0.5*p.beta]
    for k in range(1, n_levels):
        levels.append(levels[-1] + shape_invariance_remainder(p.beta - k*p.lam, p.lam))
    return np.array(levels)


def bound_state_count(p):
    """Number of bound states, or 'infinite' when lambda <= 0.

    For lambda > 0 level n is bound when beta - n lambda > 0, which is
    also when E_n lies below the threshold alpha^2/(2 lambda).
    """

    if p.lam <= 0:
        return Infinite
    ratio = p.beta / p.lam
    nearest = round(ratio)
    if abs(ratio - nearest) < CountSnap:
        return int(nearest)
    return int(math.ceil(ratio))


######
# Coordinates and the ground state
######

def _check_x(x, lam):
    x = np.asarray(x, dtype=float)
    if lam < 0 and np.any(1.0 + lam*x*x < 0):
        raise DomainError('x outside |x| <= 1/sqrt(-lambda) (lambda=%s)' % str(lam))
    return x


def adapted_coordinate(x, lam):
    """q(x) with dq/dx = 1/sqrt(1 + lambda x^2), q(0) = 0."""

    x = _check_x(x, lam)
    if lam > 0:
        s = math.sqrt(lam)
        return np.arcsinh(s*x) / s
    if lam < 0:
        s = math.sqrt(-lam)
        return np.arcsin(np.clip(s*x, -1.0, 1.0)) / s
    return x*1.0


def q_limit(lam):
    """Half-width of the q range: pi/(2 sqrt(-lambda)) for lambda < 0, else inf."""

    if lam < 0:
        return 0.5*math.pi / math.sqrt(-lam)
    return math.inf


def x_of_q(q, lam):
    """Inverse of adapted_coordinate()."""

    q = np.asarray(q, dtype=float)
    if lam > 0:
        s = math.sqrt(lam)
        return np.sinh(s*q) / s
    if lam < 0:
        if np.any(np.abs(q) > q_limit(lam)):
            raise DomainError('q outside |q| <= pi/(2 sqrt(-lambda))')
        s = math.sqrt(-lam)
        return np.sin(s*q) / s
    return q*1.0


def potential_q(q, p):
    """(alpha^2/2) x(q)^2/(1 + lambda x(q)^2), written directly in q."""

    q = np.asarray(q, dtype=float)
    half_a2 = 0.5*p.alpha*p.alpha
    if p.lam > 0:
        return half_a2 * np.tanh(math.sqrt(p.lam)*q)**2 / p.lam
    if p.lam < 0:
        return half_a2 * np.tan(math.sqrt(-p.lam)*q)**2 / -p.lam
    return half_a2 * q*q


def superpotential_q(q, beta, lam):
    """W = beta x/sqrt(1 + lambda x^2) as a function of q."""

    q = np.asarray(q, dtype=float)
    if lam > 0:
        return beta * np.tanh(math.sqrt(lam)*q) / math.sqrt(lam)
    if lam < 0:
        return beta * np.tan(math.sqrt(-lam)*q) / math.sqrt(-lam)
    return beta * q


def groundstate_psi0(x, p):
    """Unnormalised ground state (1 + lambda x^2)^(-beta/(2 lambda)).

    exp(-beta x^2/2) when lambda == 0.
    """

    x = _check_x(x, p.lam)
    if p.lam == 0:
        return np.exp(-0.5*p.beta*x*x)
    return (1.0 + p.lam*x*x) ** (-0.5*p.beta/p.lam)


######
# Grids and the discrete Hamiltonian
######

@dataclass(frozen=True)
class GridSpec:
    """A uniform grid of interior points in q with Dirichlet ends.

    n_points  number of interior points, >= 3
    q_max     half-width of the box for lambda >= 0 (None: chosen from the
              levels requested); ignored for lambda < 0, where the box
              is the whole q range
    """

    n_points: int
    q_max: float = None

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise GridError('n_points must be an integer >= 3, got %s'
                            % str(self.n_points))
        if self.q_max is not None and not (math.isfinite(self.q_max) and self.q_max > 0):
            raise GridError('q_max must be > 0, got %s' % str(self.q_max))


def default_q_max(p, n_levels):
    """A box half-width that holds the lowest 'n_levels' bound states."""

    if p.lam < 0:
        return q_limit(p.lam)
    count = bound_state_count(p)
    if count != Infinite:
        n_levels = max(1, min(n_levels, count))
    top = ladder_spectrum(p, n_levels)[-1]
    if p.lam == 0:
        q_turn = math.sqrt(2*top) / p.alpha
        return max(DefaultQMax, 1.5*q_turn + 4.0)
    s = math.sqrt(p.lam)
    q_turn = math.atanh(min(s*math.sqrt(2*top)/p.alpha, 1.0 - 1e-15)) / s
    kappa = math.sqrt(2*(p.threshold - top))
    return max(DefaultQMax, q_turn + DecayLengths/kappa)


class Grid:
    """Interior points q_i = -L + (i+1) h, i = 0 .. N-1, h = 2L/(N+1)."""

    def __init__(self, half_width, n_points):
        self.half_width = half_width
        self.n_points = n_points
        self.h = 2.0*half_width / (n_points + 1)
        self.q = -half_width + self.h*np.arange(1, n_points + 1)

    def __repr__(self):
        return 'Grid(L=%s, N=%d, h=%s)' % (self.half_width, self.n_points, self.h)


def make_grid(p, g, n_levels=1):
    """The Grid for QuantumParams 'p' and GridSpec 'g'."""

    if p.lam < 0:
        return Grid(q_limit(p.lam), g.n_points)
    q_max = g.q_max if g.q_max is not None else default_q_max(p, n_levels)
    return Grid(q_max, g.n_points)


@dataclass(frozen=True)
class TridiagonalMatrix:
    """A symmetric tridiagonal matrix stored as its two diagonals."""

    diagonal: np.ndarray
    offdiagonal: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diagonal, dtype=float)
        e = np.asarray(self.offdiagonal, dtype=float)
        if d.ndim != 1 or e.ndim != 1 or len(e) != len(d) - 1:
            raise GridError('diagonal length %d with off-diagonal length %d'
                            % (len(d), len(e)))
        object.__setattr__(self, 'diagonal', d)
        object.__setattr__(self, 'offdiagonal', e)

    def __len__(self):
        return len(self.diagonal)

    def dot(self, u):
        """Matrix-vector product."""

        u = np.asarray(u, dtype=float)
        result = self.diagonal*u
        result[:-1] += self.offdiagonal*u[1:]
        result[1:] += self.offdiagonal*u[:-1]
        return result

    def to_dense(self):
        return (np.diag(self.diagonal) + np.diag(self.offdiagonal, 1)
                + np.diag(self.offdiagonal, -1))


def discretize_hamiltonian(p, g, n_levels=1, grid=None):
    """Three-point finite difference H1 on the grid built from 'g'.

    The kinetic stencil is -(u[i+1] - 2u[i] + u[i-1])/(2 h^2), the
    potential sits on the diagonal.  'n_levels' is the number of levels
    the box must hold; a warning is logged when the edge potential is
    below twice the highest of them.
    """

    if grid is None:
        grid = make_grid(p, g, n_levels)
    h2 = grid.h*grid.h
    diagonal = 1.0/h2 + potential_q(grid.q, p)
    offdiagonal = np.full(grid.n_points - 1, -0.5/h2)

    if p.lam >= 0:
        count = bound_state_count(p)
        top_n = n_levels if count == Infinite else max(1, min(n_levels, count))
        top = ladder_spectrum(p, top_n)[-1]
        edge = float(potential_q(grid.half_width, p))
        if edge < 2*top:
            log.warn('discretize_hamiltonian: edge potential %s below 2 x top level %s, %s'
                     % (repr(edge), repr(top), repr(grid)))

    log.debug('discretize_hamiltonian: %s for %s' % (repr(grid), str(p)))
    return TridiagonalMatrix(diagonal, offdiagonal)


def eig_lowest(matrix, k):
    """The k smallest eigenvalues of a TridiagonalMatrix, ascending.

    Sturm-sequence bisection (LAPACK stebz) to absolute tolerance EigenTol.
    """

    n = len(matrix)
    if int(k) != k or not 1 <= k <= n:
        raise ArgumentError('k must be in 1..%d, got %s' % (n, str(k)))
    values = linalg.eigvalsh_tridiagonal(matrix.diagonal, matrix.offdiagonal,
                                         select='i', select_range=(0, int(k) - 1),
                                         lapack_driver='stebz', tol=EigenTol)
    return np.sort(values)


######
# Factorisation operators on the grid
######

def derivative_q(u, h):
    """du/dq by the 4th-order central stencil, u taken as 0 outside the grid."""

    padded = np.concatenate(([0.0, 0.0], np.asarray(u, dtype=float), [0.0, 0.0]))
    return (-padded[4:] + 8*padded[3:-1] - 8*padded[1:-3] + padded[:-4]) / (12*h)


def apply_A(u, q, h, beta, lam):
    """A(beta) u = (du/dq + W u)/sqrt(2)."""

    return (derivative_q(u, h) + superpotential_q(q, beta, lam)*u) / math.sqrt(2.0)


def apply_A_dagger(u, q, h, beta, lam):
    """A+(beta) u = (-du/dq + W u)/sqrt(2)."""

    return (-derivative_q(u, h) + superpotential_q(q, beta, lam)*u) / math.sqrt(2.0)


def _relative_norm(residual, u):
    norm = np.linalg.norm(u)
    if norm == 0:
        return 0.0
    return float(np.linalg.norm(residual) / norm)


def shape_invariance_residual(p, g, trials):
    """Largest ||A A+(beta) u - (A+ A(beta1) + R(beta1)) u|| / ||u|| over trials.

    p       QuantumParams
    g       GridSpec
    trials  functions of x, each vanishing at the ends of the box
    """

    grid = make_grid(p, g)
    x = x_of_q(grid.q, p.lam)
    beta1 = p.beta - p.lam
    remainder = shape_invariance_remainder(beta1, p.lam)
    worst = 0.0
    for trial in trials:
        u = np.asarray(trial(x), dtype=float) * np.ones_like(x)
        left = apply_A(apply_A_dagger(u, grid.q, grid.h, p.beta, p.lam),
                       grid.q, grid.h, p.beta, p.lam)
        right = (apply_A_dagger(apply_A(u, grid.q, grid.h, beta1, p.lam),
                                grid.q, grid.h, beta1, p.lam) + remainder*u)
        worst = max(worst, _relative_norm(left - right, u))
    return worst


def annihilation_residual(p, g):
    """||A(beta) psi0|| / ||psi0|| on the grid."""

    grid = make_grid(p, g)
    psi0 = groundstate_psi0(x_of_q(grid.q, p.lam), p)
    return _relative_norm(apply_A(psi0, grid.q, grid.h, p.beta, p.lam), psi0)


def groundstate_residual(p, g):
    """||H1 psi0 - (beta/2) psi0|| / ||psi0|| with the discrete H1."""

    grid = make_grid(p, g)
    matrix = discretize_hamiltonian(p, g, grid=grid)
    psi0 = groundstate_psi0(x_of_q(grid.q, p.lam), p)
    return _relative_norm(matrix.dot(psi0) - 0.5*p.beta*psi0, psi0)


######
# Ladder against diagonalisation
######

@dataclass
class SpectrumReport:
    """Ladder levels against the numerically diagonalised ones."""

    params: QuantumParams
    grid: dict
    ladder: list
    numeric: list
    differences: list = field(default_factory=list)
    bound_states: object = Infinite
    threshold: float = None

    def __post_init__(self):
        self.numeric = sorted(self.numeric)
        if not self.differences:
            self.differences = [abs(a - b) for (a, b) in zip(self.ladder, self.numeric)]

    @property
    def max_difference(self):
        return max(self.differences) if self.differences else 0.0

    def to_dict(self):
        return {'lambda': self.params.lam,
                'alpha': self.params.alpha,
                'beta': self.params.beta,
                'grid': self.grid,
                'ladder': list(self.ladder),
                'numeric': list(self.numeric),
                'differences': list(self.differences),
                'max_difference': self.max_difference,
                'bound_states': self.bound_states,
                'threshold': self.threshold}


def spectrum_report(p, g, n_levels):
    """Compare the lowest 'n_levels' ladder levels with diagonalisation.

    For lambda > 0 only the bound levels are compared.
    """

    count = bound_state_count(p)
    if count != Infinite:
        n_levels = max(1, min(n_levels, count))
    grid = make_grid(p, g, n_levels)
    matrix = discretize_hamiltonian(p, g, n_levels, grid=grid)
    ladder = ladder_spectrum(p, n_levels)
    numeric = eig_lowest(matrix, n_levels)
    report = SpectrumReport(p, {'n_points': grid.n_points, 'q_max': grid.half_width,
                                'h': grid.h},
                            [float(v) for v in ladder], [float(v) for v in numeric],
                            bound_states=count, threshold=p.threshold)
    log.info('spectrum_report: lambda=%s beta=%s, %d levels, max difference %s'
             % (repr(p.lam), repr(p.beta), n_levels, repr(report.max_difference)))
    return report
