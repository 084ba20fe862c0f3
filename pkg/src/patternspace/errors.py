"""Exception hierarchy.

Validation problems (bad input, wrong dimension, unbounded where bounded is
required) derive from :class:`ValidationError`.  Mathematical outcomes that
are "no" answers with a witness (no supremum, no Cauchy witness, no
subsequence) derive from :class:`MathematicalFailure`.
"""


class PatternSpaceError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(PatternSpaceError, ValueError):
    pass


class DivisionByZero(ValidationError, ZeroDivisionError):
    pass


class DimensionMismatch(ValidationError):
    pass


class ContextMismatch(ValidationError):
    """Operands live in different quadratic fields or different spaces."""


class UnboundedOperand(ValidationError):
    """A generator-backed pattern was used where a finite one is required."""


class UnboundedRegion(ValidationError):
    pass


class NonAtomisticSpace(ValidationError):
    pass


class MathematicalFailure(PatternSpaceError):
    """A decision procedure answered "no" and carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness if witness is not None else {}


class IncompatibleFamily(MathematicalFailure):
    def __init__(self, message, pair=None, witness=None):
        super().__init__(message, witness)
        self.pair = pair


class NoSupremum(MathematicalFailure):
    pass


class NotCauchyAtStep(MathematicalFailure):
    def __init__(self, step, witness=None):
        super().__init__(f"no shift witness at step {step}", witness)
        self.step = step


class NoSubsequence(MathematicalFailure):
    def __init__(self, level, witness=None):
        super().__init__(f"no matching pair survives at level {level}", witness)
        self.level = level


class NoMatch(MathematicalFailure):
    pass
