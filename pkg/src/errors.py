"""Exception hierarchy shared by every module and mapped onto CLI exit codes."""


class StrictFccError(Exception):
    exit_code = 1


# --- Input errors (exit 2) ---

class InputError(StrictFccError):
    exit_code = 2


class ParseError(InputError):
    pass


class NotPrime(InputError):
    pass


class Reducible(InputError):
    pass


class FieldMismatch(InputError):
    pass


class LengthMismatch(InputError):
    pass


class RankZero(InputError):
    pass


class NotASubcode(InputError):
    pass


class InvalidOverlap(InputError):
    pass


class DegenerateClosed(InputError):
    pass


class OverlapBoundViolated(InputError):
    pass


class ConditionsViolated(InputError):
    pass


class HypothesisViolated(InputError):
    pass


class InfeasibleReport(InputError):
    pass


class StructuredPathUnavailable(InputError):
    pass


class DivisionByZero(InputError, ZeroDivisionError):
    pass


class ZeroElement(InputError, ValueError):
    pass


# --- Budget errors (exit 3) ---

class BudgetExceeded(StrictFccError):
    exit_code = 3


class SearchBudgetExceeded(BudgetExceeded):
    pass


class NoPrimitiveFound(BudgetExceeded):
    pass


# --- Verification errors (exit 1) ---

class VerificationFailed(StrictFccError):
    exit_code = 1


class PostconditionFailed(VerificationFailed):
    """A construction produced an output violating its certificate; this is a bug, not an outcome."""


class Ambiguous(StrictFccError):
    """Nearest-codeword decoding hit a tie between different answers."""


class BeyondRadius(Ambiguous):
    """No codeword lies within the guaranteed decoding radius."""
