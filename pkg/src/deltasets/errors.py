"""Exception types raised across the package.

Everything derives from :class:`DeltaSetError` (itself a ``ValueError``) so
callers can catch a single type at the boundary.
"""


class DeltaSetError(ValueError):
    pass


# -- finite sets ------------------------------------------------------------

class EmptySet(DeltaSetError):
    pass


class NotIncreasing(DeltaSetError):
    def __init__(self, index, prev=None, value=None):
        self.index = index
        super().__init__(
            f"elements not strictly increasing at index {index}"
            + (f" ({prev} followed by {value})" if prev is not None else "")
        )


class NonPositiveElement(DeltaSetError):
    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"element {value} at index {index} is not a positive integer")


class Overflow(DeltaSetError):
    pass


class SingletonSet(DeltaSetError):
    pass


class BackendUnavailable(DeltaSetError):
    pass


# -- sequence generation ----------------------------------------------------

class ParseError(DeltaSetError):
    def __init__(self, position, expected, text=""):
        self.position = position
        self.expected = tuple(expected)
        msg = f"parse error at position {position}: expected {' or '.join(self.expected)}"
        if text:
            msg += f"\n  {text}\n  {' ' * position}^"
        super().__init__(msg)


class UnknownBuiltin(DeltaSetError):
    pass


class ArityError(DeltaSetError):
    pass


class MonotonicityViolation(DeltaSetError):
    def __init__(self, index, value, prev):
        self.index = index
        self.value = value
        super().__init__(
            f"term {index} has raw value {value}, not a positive integer greater than {prev}"
            " (pass repair=True to enforce monotonicity)"
        )


class NoClosedForm(DeltaSetError):
    pass


# -- witnesses --------------------------------------------------------------

class HOutOfRange(DeltaSetError):
    pass


class NoEligibleShift(DeltaSetError):
    pass


class HypothesisNotSatisfied(DeltaSetError):
    pass


# -- diagnostics ------------------------------------------------------------

class KindParamMissing(DeltaSetError):
    pass


class DomainError(DeltaSetError):
    pass


# -- experiments ------------------------------------------------------------

class UnknownExperiment(DeltaSetError):
    pass


class ParamOutOfRange(DeltaSetError):
    pass
