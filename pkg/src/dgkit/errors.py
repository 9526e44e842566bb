"""Exception types shared across the package."""


class DomainError(Exception):
    """Base class for all errors raised on mathematically invalid input."""


class ShapeMismatch(DomainError):
    """Matrix or table shapes are inconsistent."""


class NotAComplex(DomainError):
    """The differential does not square to zero."""


class NotAChainMap(DomainError):
    """The degreewise maps do not commute with the differentials."""


class NonCommutingSquare(DomainError):
    """A lifting problem was posed on a square that does not commute."""


class NotAcyclic(DomainError):
    """A contracting homotopy was requested for a complex with cohomology."""


class NegativeSupport(DomainError):
    """A chain-level construction received input below chain degree zero."""


class InvalidPoint(DomainError):
    """A Grassmannian or flag point fails its validity conditions."""


class UnknownSuite(DomainError):
    """The requested property suite is not registered."""


class SchemaError(DomainError):
    """JSON input does not match the expected schema.

    Carries the path of the offending element, e.g. "d.0[1][2]".
    """

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
