"""
Exceptions and warning categories shared by the numerical modules.
"""


class CasimirError(Exception):
    pass


class DomainError(CasimirError, ValueError):
    """An argument lies outside the domain where the formula is defined."""


class DivergentStressError(DomainError):
    """The requested stress is infinite without a finite transverse cutoff."""


class DiluteGapWarning(UserWarning):
    """The gap medium is not more dilute than the walls somewhere on the imaginary axis."""


class CutoffWarning(UserWarning):
    pass


class MatsubaraWindowWarning(UserWarning):
    """An interface diagnostic was restricted to a finite set of Matsubara frequencies."""


class FieldContinuityWarning(UserWarning):
    pass
