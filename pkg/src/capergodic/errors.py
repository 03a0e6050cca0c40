"""Exception hierarchy shared by every module."""


class CapacityError(ValueError):
    """Base class for all input and hypothesis errors raised by the package."""


class MissingEvent(CapacityError):
    def __init__(self, event, label=None):
        self.event = event
        super().__init__(f"table has no value for event {label or event}")


class NotNormalized(CapacityError):
    pass


class NotMonotone(CapacityError):
    def __init__(self, smaller, larger, message):
        self.smaller = smaller
        self.larger = larger
        super().__init__(message)


class SpaceMismatch(CapacityError):
    pass


class SpaceTooLarge(CapacityError):
    pass


class NotConcave(CapacityError):
    pass


class NotConvex(CapacityError):
    pass


class NotInvariant(CapacityError):
    pass


class BadCylinder(CapacityError):
    pass


class BadInterval(CapacityError):
    pass


class BadSplit(CapacityError):
    pass


class LengthMismatch(CapacityError):
    pass


class HypothesisNotMet(CapacityError):
    """An audit instance does not satisfy the theorem's hypothesis."""
