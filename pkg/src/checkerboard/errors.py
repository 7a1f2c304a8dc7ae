"""Exception hierarchy.

Validation problems derive from ``ValueError`` so argument parsing code can
treat them uniformly; numerical dead ends derive from ``DynamicsError``.
"""


class DynamicsError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(DynamicsError, ValueError):
    pass


class PoleError(DynamicsError, ZeroDivisionError):
    """The map was evaluated at its pole z = 0."""


class SymmetryUndefined(ValidationError):
    pass


class UnsupportedFamily(ValidationError):
    """The (n, d) family has no principal Mandelbrot sets."""


class AlphabetMismatch(ValidationError):
    pass


class ViewportTooSmall(ValidationError):
    pass


class NoConvergence(DynamicsError):
    pass


class ResolutionTooCoarse(DynamicsError):
    pass


class Unresolvable(DynamicsError):
    """A grid lookup landed on a Julia-boundary pixel; raise the resolution."""


class NotInSector(DynamicsError):
    pass


class SectorAmbiguity(DynamicsError):
    pass


class IndexMapMismatch(DynamicsError):
    pass


class InvariantViolation(DynamicsError):
    pass
