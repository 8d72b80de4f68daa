"""Exception types shared across the package."""


class PosetError(Exception):
    """Base class for all errors raised by pdl."""


class CycleDetected(PosetError):
    pass


class IndexOutOfRange(PosetError):
    pass


class ParseError(PosetError):
    pass


class EmptyLevel(PosetError):
    pass


class InternalInconsistency(PosetError):
    """Two independently computed quantities disagree; indicates a solver bug."""


class SearchBudgetExceeded(PosetError):
    """A search ran out of nodes before proving existence or nonexistence."""


class PreconditionViolated(PosetError):
    pass


class KindMismatch(PosetError):
    pass


class NotAntichain(PosetError):
    pass


class TooLarge(PosetError):
    pass


class WitnessNotFound(PosetError):
    pass


class NotRectangular(PosetError):
    pass


class NotWeakOrder(PosetError):
    pass


class NotARealizer(PosetError):
    pass


class UnknownRef(PosetError):
    pass


class BudgetExceeded(PosetError):
    pass
