"""
Exceptions raised by the oscillator laboratory.

Everything derives from OscillabError so the command line front end can
tell our own failures apart from programming errors.
"""


class OscillabError(Exception):
    """Base class for all laboratory errors."""


class DomainError(OscillabError):
    """A configuration lies outside the region 1 + lambda*r^2 > 0, or
    outside the chart a coordinate map is defined on."""


class AmplitudeError(OscillabError):
    """An amplitude incompatible with the deformation parameter."""


class PoleError(OscillabError):
    """A closed-form solution reaches a pole on the requested interval."""


class SingularCoefficientError(OscillabError):
    """The coefficient of the acceleration vanishes."""


class SingularLevelSetError(OscillabError):
    """Evaluation on the zero level set of a nonstandard Lagrangian."""


class BudgetError(OscillabError):
    """An integration ran out of its step budget."""


class EnergyRangeError(OscillabError):
    """No turning points exist for the requested energy."""


class AngleUndefinedError(DomainError):
    """The polar angle is undefined at the origin."""


class FamilyMismatchError(OscillabError):
    """A separable potential used with the wrong coordinate family."""


class GridError(OscillabError):
    """An invalid discretisation grid."""


class ArgumentError(OscillabError):
    """An argument outside its documented range."""


class ConfigError(OscillabError):
    """A malformed or invalid configuration document."""


class OutputError(OscillabError):
    """A result file could not be written."""
