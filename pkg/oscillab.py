#!/usr/bin/env python3

"""
A laboratory for deformed and nonstandard nonlinear oscillators.

Usage: oscillab.py [-d <level>] [-h] <command> <args>

Commands:
    simulate <config> [<config> ...] [-j <N>]
                        integrate each scenario, write its trajectory CSV
                        and invariant report
    spectrum <config>   compare the quantum ladder with diagonalisation
    verify <suite> [-s <seed>] [-j <N>]
                        run a verification suite, one of identities,
                        brackets, exact_solutions, isochrony, conservation,
                        spectrum or all

Where -d <level>  sets the logging level (default is 50, CRITICAL)
      -h          prints this help and stops
      -j <N>      runs N jobs in parallel (default 1)
      -s <seed>   seeds the random samples (default 20041)

Exit status is 0 on success, 1 if a verification check failed, 2 for an
invalid config or command line and 3 if a computation failed or a result
file could not be written.
"""

import sys
import getopt
import traceback
from concurrent import futures

import utils
import scenario
import verify
from errors import OscillabError
import logger
log = logger.Log('oscillab.log', logger.Log.CRITICAL)


# program version
ProgramMajor = 0
ProgramMinor = 3
ProgramVersion = '%d.%d' % (ProgramMajor, ProgramMinor)

# exit codes
ExitOK = 0
ExitVerifyFailed = 1
ExitInvalid = 2
ExitFailed = 3

Commands = ('simulate', 'spectrum', 'verify')


def usage(msg=None):
    """Print the module __doc__ string, plus optional message."""

    if msg:
        print(('*'*80 + '\n%s\n' + '*'*80) % msg)
    print(__doc__)


def excepthook(type, value, tb):
    """Handler for uncaught exceptions."""

    msg = '\n' + '=' * 80
    msg += '\nUncaught exception:\n'
    msg += ''.join(traceback.format_exception(type, value, tb))
    msg += '=' * 80 + '\n'
    log.critical(msg)
    print(msg)


def diagnostic(where, exc):
    """One line on stderr naming the failing file and error."""

    msg = '%s: %s: %s' % (where, type(exc).__name__, str(exc))
    log.error(msg)
    print('oscillab: %s' % msg, file=sys.stderr)


def _map(fn, items, jobs):
    """fn over items, in order, with up to 'jobs' worker processes."""

    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


######
# simulate
######

def _simulate_one(job):
    """Run one validated scenario; returns (filename, exit code, message)."""

    (filename, level) = job
    log.set_level(level)
    try:
        scn = scenario.load_scenario(filename)
        (traj, reports) = scenario.run_scenario(scn)
        scenario.write_simulation(scn, traj, reports)
    except OscillabError as exc:
        return (filename, ExitFailed, '%s: %s' % (type(exc).__name__, str(exc)))
    return (filename, ExitOK, '')


def cmd_simulate(filenames, jobs=1):
    """Validate every config, then run them all.

    No scenario is run, and no file written, unless all configs are valid.
    """

    invalid = False
    for filename in filenames:
        try:
            scenario.load_scenario(filename)
        except scenario.ValidationErrors as exc:
            diagnostic(filename, exc)
            invalid = True
    if invalid:
        return ExitInvalid

    status = ExitOK
    for (filename, code, message) in _map(_simulate_one,
                                          [(f, log.level) for f in filenames], jobs):
        if code != ExitOK:
            log.error('%s: %s' % (filename, message))
            print('oscillab: %s: %s' % (filename, message), file=sys.stderr)
        status = max(status, code)
    return status


######
# spectrum
######

def cmd_spectrum(filename):
    try:
        job = scenario.load_spectrum(filename)
    except scenario.ValidationErrors as exc:
        diagnostic(filename, exc)
        return ExitInvalid

    try:
        scenario.run_spectrum(job)
    except OscillabError as exc:
        diagnostic(filename, exc)
        return ExitFailed
    return ExitOK


######
# verify
######

def _verify_one(job):
    (name, seed, level) = job
    log.set_level(level)
    return verify.run_suite(name, seed)


def cmd_verify(tag, seed=None, jobs=1, out=None):
    """Run the suites for 'tag' and print the pass/fail table."""

    if out is None:
        out = sys.stdout
    names = verify.suite_names(tag)
    checks = []
    for result in _map(_verify_one, [(n, seed, log.level) for n in names], jobs):
        checks.extend(result)
    out.write(verify.format_table(checks))
    if all(c.passed for c in checks):
        return ExitOK
    return ExitVerifyFailed


######
# Command line
######

def main(argv):
    """Parse 'argv' (without the program name) and run; returns the exit status."""

    try:
        (opts, args) = getopt.gnu_getopt(argv, 'd:hj:s:',
                                         ['debug=', 'help', 'jobs=', 'seed='])
    except getopt.GetoptError as err:
        usage(err)
        return ExitInvalid

    jobs = 1
    seed = utils.DefaultSeed
    for (opt, param) in opts:
        if opt in ['-d', '--debug']:
            try:
                log.set_level(int(param))
            except ValueError:
                usage("-d must be followed by a logging level, got '%s'" % param)
                return ExitInvalid
        elif opt in ['-h', '--help']:
            usage()
            return ExitOK
        elif opt in ['-j', '--jobs']:
            try:
                jobs = int(param)
            except ValueError:
                jobs = 0
            if jobs < 1:
                usage("-j must be followed by a positive integer, got '%s'" % param)
                return ExitInvalid
        elif opt in ['-s', '--seed']:
            try:
                seed = int(param)
            except ValueError:
                usage("-s must be followed by an integer, got '%s'" % param)
                return ExitInvalid

    if not args or args[0] not in Commands:
        usage('expected one of: %s' % ', '.join(Commands))
        return ExitInvalid
    (command, args) = (args[0], args[1:])

    log.info('oscillab %s: %s %s' % (ProgramVersion, command, ' '.join(args)))

    if command == 'simulate':
        if not args:
            usage('simulate needs at least one config file')
            return ExitInvalid
        return cmd_simulate(args, jobs)

    if command == 'spectrum':
        if len(args) != 1:
            usage('spectrum needs exactly one config file')
            return ExitInvalid
        return cmd_spectrum(args[0])

    if len(args) != 1:
        usage('verify needs exactly one suite name')
        return ExitInvalid
    try:
        return cmd_verify(args[0], seed, jobs)
    except KeyError:
        usage("unknown suite '%s'" % args[0])
        return ExitInvalid


if __name__ == '__main__':
    # plug our handler into the python system
    sys.excepthook = excepthook
    sys.exit(main(sys.argv[1:]))
