"""Errors raised by the numerical apps.

Invariant breaches of value types (a negative rate, a control outside
[0, 1], a malformed scenario) raise Django's `ValidationError` instead;
everything here is a failure of a computation or of its input shape.

**Exceptions**
    HivctlError: base class, carries the CLI exit code.
    NonCommensurateDelay: tau (or tf) is not an integer number of steps.
    NonFiniteState: a state component became NaN or infinite.
    GridTooShort: the horizon does not cover one delay.
    DegenerateDenominator: an equilibrium formula divides by zero.
    InfeasibleEquilibrium: a criterion was asked about a missing point.
    MissingControls: an objective was asked of an uncontrolled trajectory.
    ParseError: a scenario file is not a JSON object.
"""

VALIDATION_EXIT_CODE = 2
NUMERIC_EXIT_CODE = 3
IO_EXIT_CODE = 4


class HivctlError(Exception):
    exit_code = NUMERIC_EXIT_CODE


class NonCommensurateDelay(HivctlError):
    exit_code = VALIDATION_EXIT_CODE


class NonFiniteState(HivctlError):
    pass


class GridTooShort(HivctlError):
    exit_code = VALIDATION_EXIT_CODE


class DegenerateDenominator(HivctlError):
    pass


class InfeasibleEquilibrium(HivctlError):
    exit_code = VALIDATION_EXIT_CODE


class MissingControls(HivctlError):
    exit_code = VALIDATION_EXIT_CODE


class ParseError(HivctlError):
    exit_code = VALIDATION_EXIT_CODE
