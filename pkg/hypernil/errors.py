"""
Exception hierarchy for hypernil.

Two branches map onto the command-line exit codes: InputError (exit 2) for
problems with what the user handed in, ComputationError (exit 3) for a
computation that could not be carried out or whose result failed a check.
"""

from typing import Optional, Sequence


class HypernilError(Exception):
    """Base class for every error raised by the toolkit"""

    exit_code = 3


class InputError(HypernilError):
    exit_code = 2


class ComputationError(HypernilError):
    exit_code = 3


# Input-level errors

class ParseError(InputError):
    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ProblemValidationError(InputError):
    """Raised when a problem file parses but fails one or more axioms"""

    def __init__(self, failures: Sequence[str]):
        self.failures = list(failures)
        super().__init__("validation failed: " + "; ".join(self.failures))


class MissingStructure(InputError):
    pass


class ConfigError(InputError):
    pass


class InvalidField(InputError):
    """Minimal polynomial is not monic, has degree 0, or is reducible over Q"""


# Computation-level errors

class FieldMismatch(ComputationError):
    pass


class DivisionByZero(ComputationError, ZeroDivisionError):
    pass


class NotInvertible(ComputationError):
    pass


class AmbientMismatch(ComputationError):
    pass


class NotNilpotent(ComputationError):
    pass


class JacobiViolation(ComputationError):
    pass


class NotAlmostComplex(ComputationError):
    pass


class NotIntegrable(ComputationError):
    pass


class NotQuaternionic(ComputationError):
    pass


class NotHypercomplex(NotQuaternionic, NotIntegrable):
    """A quaternionic triple whose members are not all integrable"""


class NotOnSphere(ComputationError):
    pass


class NotAbelian(ComputationError):
    pass


class NotAnIdeal(ComputationError):
    pass


class NotInvariant(ComputationError):
    pass


class NotRational(ComputationError):
    pass


class QuotientNotEven(ComputationError):
    pass


class NotExceptional(ComputationError):
    pass


class SaturationDidNotConverge(ComputationError):
    pass


class InvariantViolation(ComputationError):
    """An internal cross-check failed; this signals a bug, not bad input"""


class CenterNotInvariant(InvariantViolation):
    pass
