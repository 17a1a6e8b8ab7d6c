"""Exception hierarchy shared by every module."""


class SigmaInvError(ValueError):
    """Base class for all errors raised by the library."""


class DomainError(SigmaInvError):
    """An argument lies outside the domain of a formula."""


class InvalidLatticeError(SigmaInvError):
    pass


class UnsupportedRankError(SigmaInvError):
    pass


class EnumerationBudgetError(SigmaInvError):
    """Raised when a lattice enumeration would visit too many vectors."""


class ShapeError(SigmaInvError):
    pass


class DegenerateError(SigmaInvError):
    pass


class InvalidActionError(SigmaInvError):
    pass


class InvalidDescriptorError(SigmaInvError):
    pass


class ClassNotInConeError(SigmaInvError):
    pass


class UnknownManifoldError(SigmaInvError, KeyError):
    pass
