"""Exception hierarchy.

Every error raised by the library derives from :class:`RoughError`.  Errors
raised while loading a document carry a ``location`` naming the offending
field (``"map.5"``, ``"weights"``) or a ``line:column`` position.
"""


class RoughError(Exception):
    def __init__(self, message: str, location: str | None = None):
        self.message = message
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class SpaceError(RoughError, ValueError):
    """Invalid approximation space or random variable input."""


class EmptyUniverse(SpaceError):
    pass


class DuplicateElement(SpaceError):
    pass


class EmptyImage(SpaceError):
    pass


class MissingImage(SpaceError):
    pass


class UnknownLabel(SpaceError):
    pass


class BadMeasure(SpaceError):
    pass


class MissingValue(SpaceError):
    pass


class UniverseMismatch(RoughError, ValueError):
    pass


class ZeroConditioningMass(RoughError, ZeroDivisionError):
    pass


class DomainTooLarge(RoughError, ValueError):
    pass


class UnknownLaw(RoughError, LookupError):
    pass


class DocumentError(RoughError):
    """Base for problems with a space document."""


class DocumentSyntaxError(DocumentError):
    pass


class SchemaError(DocumentError):
    pass
