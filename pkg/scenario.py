"""
Scenario configuration files, and running them.

scenario = load_scenario('ml2d.json')
(traj, reports) = run_scenario(scenario)
write_simulation(scenario, traj, reports)

spectrum = load_spectrum('spectrum.json')
report = run_spectrum(spectrum)

Configs are JSON documents; the schema is described in doc/config.rst.
Unknown keys anywhere are an error.  Paths in 'output' are relative to
the directory holding the config file.
"""

import os
import io
import csv
import json
from dataclasses import dataclass, field

import utils
import model
import dynamics
import invariants
import separability
import quantum
import isochrony
from model import State2D, DeformParams, NonstdParams
from integrators import IntegratorConfig, integrate_adaptive, check_initial
from errors import (ConfigError, DomainError, ArgumentError, AmplitudeError,
                    FamilyMismatchError, GridError, SingularLevelSetError,
                    SingularCoefficientError)
import logger
log = logger.Log('oscillab.log', logger.Log.CRITICAL)


SchemaVersion = 1

ScenarioKeys = {'schema_version', 'system', 'params', 'initial', 't0', 't1',
                'integrator', 'invariants', 'output'}
SpectrumKeys = {'schema_version', 'params', 'grid', 'n_levels', 'output'}

# required and optional parameter names per system tag
SystemParams = {
    'harmonic2d': ({'n1', 'n2', 'omega0'}, set()),
    'ml1d': ({'lambda', 'alpha'}, set()),
    'ml2d_hamiltonian': ({'lambda', 'alpha'}, {'potential'}),
    'nonstd1d_free': ({'k'}, set()),
    'nonstd1d_omega': ({'k', 'omega'}, set()),
    'nonstd2d': ({'k1', 'k2'}, {'omega0', 'n1', 'n2'}),
    'isochrony_piecewise': ({'omega1', 'omega2'}, set()),
}

Potentials = ('oscillator', 'harmonic')

DefaultT0 = 0.0
DefaultNLevels = 5

# errors in the values of a well formed config
ValidationErrors = (ConfigError, DomainError, ArgumentError, AmplitudeError,
                    FamilyMismatchError, GridError, SingularLevelSetError,
                    SingularCoefficientError)


######
# Reading and checking JSON
######

def _check_keys(data, allowed, required, where):
    if not isinstance(data, dict):
        raise ConfigError('%s must be an object, got %s' % (where, type(data).__name__))
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ConfigError('%s: unknown key(s) %s' % (where, ', '.join(unknown)))
    missing = sorted(set(required) - set(data))
    if missing:
        raise ConfigError('%s: missing key(s) %s' % (where, ', '.join(missing)))


def _number(data, key, where, default=None):
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError("%s: '%s' must be a number, got %s" % (where, key, repr(value)))
    return float(value)


def _integer(data, key, where, default=None):
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError("%s: '%s' must be an integer, got %s" % (where, key, repr(value)))
    return value


def read_config(filename):
    """Parse a JSON config file and check its schema_version."""

    try:
        with open(filename) as fd:
            data = json.load(fd)
    except OSError as exc:
        raise ConfigError("can't read '%s': %s" % (filename, exc.strerror))
    except json.JSONDecodeError as exc:
        raise ConfigError("'%s' is not valid JSON: %s" % (filename, str(exc)))

    if not isinstance(data, dict):
        raise ConfigError("'%s' must hold a JSON object" % filename)
    version = data.get('schema_version', None)
    if version != SchemaVersion:
        raise ConfigError("'%s': schema_version must be %d, got %s"
                          % (filename, SchemaVersion, repr(version)))
    return data


def _output_path(base_dir, output, key, where):
    if key not in output:
        raise ConfigError("%s: missing key '%s'" % (where, key))
    path = output[key]
    if not isinstance(path, str) or not path:
        raise ConfigError("%s: '%s' must be a file name" % (where, key))
    return os.path.join(base_dir, path)


######
# Invariant catalogues
######

def _separable_catalogue(p, V):
    """Quadratic integrals of the separable families for a superseparable V."""

    result = {}
    for family in separability.Families:
        prefix = family.split('_')[0]
        for (i, suffix) in enumerate(('I1', 'I2')):
            def evaluate(s, family=family, i=i):
                return separability.quadratic_integrals(family, s, p, V)[i]
            result['%s_%s' % (prefix, suffix)] = evaluate
    return result


def invariant_catalogue(system, params, V=None):
    """Name -> evaluator(state record) of the invariants defined for 'system'."""

    if system == 'harmonic2d':
        (n1, n2, w0) = (params['n1'], params['n2'], params['omega0'])
        return {'E_x': lambda s: dynamics.harmonic_energies(s, n1, n2, w0)[0],
                'E_y': lambda s: dynamics.harmonic_energies(s, n1, n2, w0)[1],
                'J': lambda s: invariants.eval_harmonic_J(s, n1, n2, w0)}

    if system == 'ml1d':
        return {'E': lambda s: dynamics.ml1d_energy(s, params)}

    if system == 'ml2d_hamiltonian':
        result = {'H': lambda s: dynamics.hamiltonian_2d(s, params, V)}
        if isinstance(V, separability.SeparablePotential):
            result.update({'I1': lambda s: invariants.eval_I123(s, params)[0],
                           'I2': lambda s: invariants.eval_I123(s, params)[1],
                           'I3': lambda s: invariants.eval_I123(s, params)[2],
                           'K12': lambda s: invariants.eval_K12(s, params)})
            result.update(_separable_catalogue(params, V))
        return result

    if system in ('nonstd1d_free', 'nonstd1d_omega'):
        (a_fn, u_fn) = dynamics.nonstd_channel_profiles(params.k, params.omega)
        return {'E_L': lambda s: dynamics.energy_nonstd(s, a_fn, u_fn)}

    if system == 'nonstd2d':
        result = {'E1': lambda s: invariants.eval_nonstd_channel_energies(s, params)[0],
                  'E2': lambda s: invariants.eval_nonstd_channel_energies(s, params)[1]}
        if params.omega0 == 0:
            result['I3'] = lambda s: invariants.eval_nonstd_integrals(s, params.k1, params.k2)[2]
            result['I4'] = lambda s: invariants.eval_nonstd_integrals(s, params.k1, params.k2)[3]
        else:
            result['K'] = lambda s: invariants.eval_nonstd_K(s, params)
        return result

    if system == 'isochrony_piecewise':
        return {'E': lambda s: 0.5*s.v*s.v + params(s.x)}

    raise ConfigError("unknown system '%s'" % system)


######
# Scenarios
######

@dataclass
class Scenario:
    """One simulation: a system, its start state, a time span and outputs."""

    name: str
    system: str
    params: object
    rhs: dynamics.SystemRHS
    initial: object
    t0: float
    t1: float
    integrator: IntegratorConfig
    invariants: dict = field(default_factory=dict)
    trajectory_path: str = None
    report_path: str = None


def _build_system(system, raw, where):
    """(params object, SystemRHS, potential or None) for a system tag."""

    if not isinstance(system, str):
        raise ConfigError("%s: 'system' must be a string, got %s" % (where, repr(system)))
    if system not in SystemParams:
        raise ConfigError("%s: unknown system '%s', expected one of %s"
                          % (where, system, ', '.join(sorted(SystemParams))))
    (required, optional) = SystemParams[system]
    _check_keys(raw, required | optional, required, where)

    if system == 'harmonic2d':
        (n1, n2, w0) = model.coprime_frequencies(_integer(raw, 'n1', where),
                                                 _integer(raw, 'n2', where),
                                                 _number(raw, 'omega0', where))
        return ({'n1': n1, 'n2': n2, 'omega0': w0},
                dynamics.harmonic2d_system(n1, n2, w0), None)

    if system == 'ml1d':
        p = DeformParams(_number(raw, 'lambda', where), _number(raw, 'alpha', where))
        return (p, dynamics.ml1d_system(p), None)

    if system == 'ml2d_hamiltonian':
        p = DeformParams(_number(raw, 'lambda', where), _number(raw, 'alpha', where))
        name = raw.get('potential', 'oscillator')
        if not isinstance(name, str) or name not in Potentials:
            raise ConfigError("%s: potential must be one of %s, got %s"
                              % (where, ', '.join(Potentials), repr(name)))
        if name == 'oscillator':
            V = separability.SeparablePotential.superseparable(p.lam)
        else:
            V = dynamics.HarmonicPotential()
        return (p, dynamics.ml2d_system(p, V), V)

    if system == 'nonstd1d_free':
        k = _number(raw, 'k', where)
        return (NonstdParams(k=k), dynamics.nonstd1d_free_system(k), None)

    if system == 'nonstd1d_omega':
        (k, omega) = (_number(raw, 'k', where), _number(raw, 'omega', where))
        return (NonstdParams(k=k, omega=omega),
                dynamics.nonstd1d_omega_system(k, omega), None)

    if system == 'nonstd2d':
        p = NonstdParams(k1=_number(raw, 'k1', where), k2=_number(raw, 'k2', where),
                         omega0=_number(raw, 'omega0', where, 0.0),
                         n1=_integer(raw, 'n1', where, 1),
                         n2=_integer(raw, 'n2', where, 1))
        return (p, dynamics.nonstd2d_system(p), None)

    pot = isochrony.PiecewisePotential.quadratic(_number(raw, 'omega1', where),
                                                 _number(raw, 'omega2', where))
    return (pot, dynamics.piecewise_system(pot), None)


def _build_initial(rhs, params, raw, where):
    """The start state record, in the domain of the system."""

    state_type = rhs.state_type
    if rhs.tag == 'ml2d_hamiltonian' and isinstance(raw, dict) and 'vx' in raw:
        _check_keys(raw, State2D.Fields, State2D.Fields, where)
        velocity = State2D(*(_number(raw, f, where) for f in State2D.Fields))
        state = dynamics.legendre_2d(velocity, params.lam)
    else:
        _check_keys(raw, state_type.Fields, state_type.Fields, where)
        state = state_type(*(_number(raw, f, where) for f in state_type.Fields))

    if isinstance(params, DeformParams):
        model.require_domain(state, params)
    check_initial(rhs, state)
    return state


def load_scenario(filename):
    """Read and validate a simulate config.

    Raises ConfigError for schema problems and the model's own errors
    (DomainError, ArgumentError, ...) for invalid values.
    """

    data = read_config(filename)
    where = os.path.basename(filename)
    _check_keys(data, ScenarioKeys,
                {'schema_version', 'system', 'params', 'initial', 't1', 'output'}, where)

    system = data['system']
    (params, rhs, V) = _build_system(system, data['params'], where + ': params')
    initial = _build_initial(rhs, params, data['initial'], where + ': initial')

    t0 = _number(data, 't0', where, DefaultT0)
    t1 = _number(data, 't1', where)
    if not t1 > t0:
        raise ConfigError('%s: need t1 > t0, got t0=%s, t1=%s' % (where, t0, t1))

    raw_cfg = data.get('integrator', {})
    _check_keys(raw_cfg, IntegratorConfig.__dataclass_fields__, (), where + ': integrator')
    cfg_values = {}
    for key in raw_cfg:
        if key == 'max_steps':
            cfg_values[key] = _integer(raw_cfg, key, where + ': integrator')
        else:
            cfg_values[key] = _number(raw_cfg, key, where + ': integrator')
    cfg = IntegratorConfig(**cfg_values)

    catalogue = invariant_catalogue(system, params, V)
    names = data.get('invariants', sorted(catalogue))
    if not isinstance(names, list):
        raise ConfigError("%s: 'invariants' must be a list" % where)
    bad = [n for n in names if not isinstance(n, str)]
    if bad:
        raise ConfigError("%s: 'invariants' entries must be names, got %s"
                          % (where, ', '.join(map(repr, bad))))
    undefined = [n for n in names if n not in catalogue]
    if undefined:
        raise ConfigError('%s: invariant(s) %s not defined for %s (known: %s)'
                          % (where, ', '.join(map(str, undefined)), system,
                             ', '.join(sorted(catalogue))))

    output = data['output']
    _check_keys(output, {'trajectory', 'report'}, {'trajectory', 'report'},
                where + ': output')
    base_dir = os.path.dirname(os.path.abspath(filename))

    return Scenario(name=os.path.splitext(where)[0], system=system, params=params,
                    rhs=rhs, initial=initial, t0=t0, t1=t1, integrator=cfg,
                    invariants={n: catalogue[n] for n in names},
                    trajectory_path=_output_path(base_dir, output, 'trajectory', where),
                    report_path=_output_path(base_dir, output, 'report', where))


def run_scenario(scenario):
    """Integrate the scenario; returns (Trajectory, list of InvariantReport)."""

    traj = integrate_adaptive(scenario.rhs, scenario.t0, scenario.initial,
                              scenario.t1, scenario.integrator)
    reports = [invariants.drift_report(traj, fn, name)
               for (name, fn) in scenario.invariants.items()]
    return (traj, reports)


def trajectory_csv(traj):
    """CSV text: header t,<fields>, values as shortest round-trip decimals."""

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(('t',) + tuple(traj.state_type.Fields))
    for (t, row) in zip(traj.times, traj.states):
        writer.writerow([utils.format_float(t)] + [utils.format_float(v) for v in row])
    return buffer.getvalue()


def simulation_report(scenario, traj, reports):
    return {'scenario': scenario.name,
            'system': scenario.system,
            'params': _params_dict(scenario.params),
            'integrator': scenario.integrator.to_dict(),
            't0': scenario.t0,
            't1': scenario.t1,
            'termination': traj.termination,
            'final_time': float(traj.times[-1]),
            'samples': len(traj),
            'accepted_steps': traj.meta.get('accepted_steps'),
            'rejected_steps': traj.meta.get('rejected_steps'),
            'invariants': [r.to_dict() for r in reports]}


def _params_dict(params):
    if isinstance(params, DeformParams):
        return {'lambda': params.lam, 'alpha': params.alpha}
    if isinstance(params, NonstdParams):
        return {'k': params.k, 'omega': params.omega, 'k1': params.k1,
                'k2': params.k2, 'omega0': params.omega0,
                'n1': params.n1, 'n2': params.n2}
    if isinstance(params, dict):
        return dict(params)
    return repr(params)


def write_simulation(scenario, traj, reports):
    """Write the trajectory CSV and the JSON report, each atomically."""

    utils.atomic_write(scenario.trajectory_path, trajectory_csv(traj))
    utils.atomic_write(scenario.report_path,
                       utils.to_json(simulation_report(scenario, traj, reports)))
    log.info("write_simulation: '%s' -> %s, %s"
             % (scenario.name, scenario.trajectory_path, scenario.report_path))


######
# Spectrum configs
######

@dataclass
class SpectrumJob:
    name: str
    params: quantum.QuantumParams
    grid: quantum.GridSpec
    n_levels: int
    report_path: str


def load_spectrum(filename):
    """Read and validate a spectrum config.

    'params' holds 'lambda' and exactly one of 'alpha' or 'beta'.
    """

    data = read_config(filename)
    where = os.path.basename(filename)
    _check_keys(data, SpectrumKeys, {'schema_version', 'params', 'grid', 'output'}, where)

    raw = data['params']
    _check_keys(raw, {'lambda', 'alpha', 'beta'}, {'lambda'}, where + ': params')
    if ('alpha' in raw) == ('beta' in raw):
        raise ConfigError("%s: params need exactly one of 'alpha' or 'beta'" % where)
    lam = _number(raw, 'lambda', where)
    if 'alpha' in raw:
        params = quantum.QuantumParams.from_alpha(lam, _number(raw, 'alpha', where))
    else:
        params = quantum.QuantumParams.from_beta(lam, _number(raw, 'beta', where))

    raw_grid = data['grid']
    _check_keys(raw_grid, {'n_points', 'q_max'}, {'n_points'}, where + ': grid')
    q_max = None
    if 'q_max' in raw_grid:
        q_max = _number(raw_grid, 'q_max', where + ': grid')
    grid = quantum.GridSpec(_integer(raw_grid, 'n_points', where + ': grid'), q_max)

    n_levels = _integer(data, 'n_levels', where, DefaultNLevels)
    if n_levels < 1:
        raise ConfigError("%s: 'n_levels' must be >= 1" % where)

    output = data['output']
    _check_keys(output, {'report'}, {'report'}, where + ': output')
    base_dir = os.path.dirname(os.path.abspath(filename))
    return SpectrumJob(os.path.splitext(where)[0], params, grid, n_levels,
                       _output_path(base_dir, output, 'report', where))


def spectrum_document(report):
    """The SpectrumReport with 'abs_diff' naming the per-level differences."""

    doc = report.to_dict()
    doc['abs_diff'] = doc.pop('differences')
    return doc


def run_spectrum(job):
    """Diagonalise, compare with the ladder and write the report."""

    report = quantum.spectrum_report(job.params, job.grid, job.n_levels)
    utils.atomic_write(job.report_path, utils.to_json(spectrum_document(report)))
    return report

