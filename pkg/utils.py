"""
Small utility functions shared by the laboratory modules.
"""

import os
import json
import tempfile
import traceback

import numpy as np

from errors import OutputError

import logger
log = logger.Log('oscillab.log', logger.Log.CRITICAL)


# seed used by every verification sample unless overridden
DefaultSeed = 20041

# cube root of machine epsilon, base step for central differences
CbrtEps = np.cbrt(np.finfo(float).eps)


def str_trace(msg=None):
    """Get a traceback string.

    This is useful if we need at any point in code to find out how
    we got to that point.
    """

    result = []

    if msg:
        result.append(msg + '\n')

    result.extend(traceback.format_stack())

    return ''.join(result)


def fd_step(x):
    """Central difference step for the point 'x'."""

    return CbrtEps * max(1.0, abs(x))


def central_diff4(fn, x, h=None):
    """Fourth-order central difference derivative of 'fn' at 'x'.

    fn  a function of one real variable
    x   the point
    h   the step (default: cbrt(eps)*max(1, |x|))
    """

    if h is None:
        h = fd_step(x)

    return (-fn(x + 2*h) + 8*fn(x + h) - 8*fn(x - h) + fn(x - 2*h)) / (12*h)


def format_float(value):
    """Shortest decimal string that reads back as the same double."""

    return repr(float(value))


def make_rng(seed=None):
    """A numpy Generator seeded with 'seed' (DefaultSeed if None)."""

    if seed is None:
        seed = DefaultSeed
    return np.random.default_rng(seed)


def jsonable(value):
    """Convert numpy scalars/arrays and complex numbers for json.dumps()."""

    if isinstance(value, dict):
        return {str(k): jsonable(v) for (k, v) in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in value]
    if isinstance(value, (complex, np.complexfloating)):
        return {'re': float(value.real), 'im': float(value.imag)}
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


def to_json(data):
    """Serialise 'data' the way every report file is written."""

    return json.dumps(jsonable(data), sort_keys=True, indent=4) + '\n'


def atomic_write(filename, text):
    """Write 'text' to 'filename' through a temporary file and a rename.

    Readers never see a partially written file.
    """

    directory = os.path.dirname(os.path.abspath(filename))
    try:
        (fd, tmp_path) = tempfile.mkstemp(dir=directory, prefix='.oscillab_')
    except OSError as exc:
        raise OutputError("can't write '%s': %s" % (filename, exc.strerror)) from exc
    try:
        with os.fdopen(fd, 'w', newline='') as tmp:
            tmp.write(text)
        os.replace(tmp_path, filename)
    except BaseException as exc:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        if isinstance(exc, OSError):
            raise OutputError("can't write '%s': %s" % (filename, exc.strerror)) from exc
        raise

    log.debug("atomic_write: wrote %d chars to '%s'" % (len(text), filename))
