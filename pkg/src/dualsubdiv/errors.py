"""Exception hierarchy.

Every error raised by the package derives from :class:`SubdivisionError`.
Pipeline stages attach their name to ``err.stage`` before re-raising so the
CLI can report where a construction failed.
"""


class SubdivisionError(Exception):
    stage = None


# -- algebra ---------------------------------------------------------------

class EvalAtZero(SubdivisionError, ZeroDivisionError):
    pass


class DivisionByZeroPoly(SubdivisionError, ZeroDivisionError):
    pass


class NotDivisible(SubdivisionError):
    def __init__(self, remainder, message=None):
        self.remainder = remainder
        super().__init__(message or f"division leaves nonzero remainder {remainder}")


class NotSolvable(SubdivisionError):
    def __init__(self, gcd, message=None):
        self.gcd = gcd
        super().__init__(message or f"gcd {gcd} of the generators does not divide the target")


class Inconsistent(SubdivisionError):
    """A finite linear system has no solution."""


# -- input assumptions -----------------------------------------------------

class AssumptionViolated(SubdivisionError):
    """One of the three input assumptions fails.

    ``number`` is 1, 2 or 3. ``payload`` carries a diagnostic: the largest
    valid exponent for assumption 1, the common factor for assumption 2 and
    the offending ``{index: value}`` map for assumption 3.
    """

    def __init__(self, number, payload, message):
        self.number = number
        self.payload = payload
        super().__init__(message)


class ArityTwoImpossible(SubdivisionError):
    def __init__(self):
        super().__init__(
            "arity m=2 rejected: the reduced equation (a0(z^2) + z a1(z^2)) phi(z) = 1 + z phi(z^2) "
            "forces the first and last nonzero mask entries to equal 1, so the scheme "
            "cannot converge"
        )


# -- internal consistency --------------------------------------------------

class ClosedFormMismatch(SubdivisionError):
    pass


class ThetaNotDivisible(SubdivisionError):
    pass


class InvariantViolation(SubdivisionError):
    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        super().__init__(f"invariant '{invariant}' violated" + (f": {detail}" if detail else ""))


class SymmetryPreconditionViolated(SubdivisionError):
    pass


class BudgetExhausted(SubdivisionError):
    def __init__(self, best, message):
        self.best = best
        super().__init__(message)


class NotFactorable(SubdivisionError):
    pass
