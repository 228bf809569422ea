"""Exception types shared across the library."""


class DahaError(Exception):
    """Base class for all library errors."""


class DivisionByZero(DahaError):
    pass


class DenominatorVanishes(DahaError):
    """A generic-parameter expression has a pole at the requested specialization."""


class InvalidType(DahaError):
    pass


class NotIntermediate(DahaError):
    """A proposed lattice does not sit between the root and weight lattices."""


class IndexNotInLattice(DahaError):
    pass


class BallOverflow(DahaError):
    """An operator maps a basis monomial outside the truncation ball."""


class SpectralWall(DahaError):
    """An intertwiner denominator vanishes on the given spectral data."""

    def __init__(self, message, step=None, weight=None):
        super().__init__(message)
        self.step = step
        self.weight = weight


class NotReachable(DahaError):
    """An E-polynomial cannot be built: some chain step is undefined here."""

    def __init__(self, message, weight=None, step=None):
        super().__init__(message)
        self.weight = weight
        self.step = step


class DegenerateSpectrum(DahaError):
    """Two comparable weights share a spectral vector (a specialization leak)."""


class PoleInProduct(DahaError):
    """A denominator factor of the evaluation product vanishes."""


class SpecializationPole(DahaError):
    pass


class NotStabilized(DahaError):
    """The truncated quotient dimension has not stabilized at this radius."""

    def __init__(self, message, dim_small=None, dim_big=None, suggested_radius=None):
        super().__init__(message)
        self.dim_small = dim_small
        self.dim_big = dim_big
        self.suggested_radius = suggested_radius


class EigenvalueOutsideRing(DahaError):
    """Harvested eigenvalues do not account for the full module dimension."""


class TauMinusNotDefined(DahaError):
    """The radical is not stable under the tau_minus action."""


class ParameterOutOfRange(DahaError):
    pass


class UsageError(DahaError):
    pass
