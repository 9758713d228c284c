"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map it without a lookup
table: 1 for invalid input, 2 for a mathematical refusal, 3 for an exhausted
iteration budget.
"""


class ZLRRError(Exception):
    exit_code = 1


class InvalidInput(ZLRRError, ValueError):
    exit_code = 1


class MathRefusal(ZLRRError):
    exit_code = 2


# poly_core
class NotDivisible(MathRefusal):
    pass


class ZeroDivisor(InvalidInput, ZeroDivisionError):
    pass


class BothZero(InvalidInput):
    pass


class EndpointRoot(MathRefusal):
    pass


# recurrence
class EmptyRecurrence(InvalidInput):
    pass


class NegativeCoefficient(InvalidInput):
    pass


class TrailingZero(InvalidInput):
    pass


class DegenerateRecurrence(InvalidInput):
    def __init__(self, support_gcd, coeffs=()):
        self.support_gcd = support_gcd
        self.coeffs = tuple(coeffs)
        super().__init__(f"degenerate: gcd of support = {support_gcd}")


class WrongInitLength(InvalidInput):
    pass


class AllZeroInit(InvalidInput):
    pass


# roots
class NotCharacteristic(MathRefusal):
    pass


class PrecisionUnreachable(MathRefusal):
    pass


class IndexOutOfRange(InvalidInput, IndexError):
    pass


class NotSquarefree(MathRefusal):
    pass


class HypothesisViolated(MathRefusal):
    pass


class ImaginaryResidue(MathRefusal):
    pass


# zeroing
class AllZeroBeta(InvalidInput):
    pass


class GammaNotPositiveAtRoot(MathRefusal):
    pass


class NTooLarge(MathRefusal):
    pass


class WontTerminate(MathRefusal):
    """Raised by callers that need a terminating run but got Q0(r) >= 0."""

    def __init__(self, sign):
        self.sign = sign
        super().__init__("Q0(r) >= 0: algorithm will not terminate")


class BudgetExhausted(ZLRRError):
    exit_code = 3

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
