"""Exception hierarchy. Every error carries a stable name used by the CLI."""


class OrbicohError(Exception):
    """Base class; ``name`` is what the CLI prints on exit code 1."""

    @property
    def name(self) -> str:
        return type(self).__name__


# groups
class MalformedTable(OrbicohError):
    pass


class NoIdentity(OrbicohError):
    pass


class NoInverse(OrbicohError):
    pass


class NotAssociative(OrbicohError):
    pass


class NotAPermutation(OrbicohError):
    pass


class GroupTooLarge(OrbicohError):
    pass


class UnknownName(OrbicohError):
    pass


class UnknownSubgroupId(OrbicohError):
    pass


class FamilyInvalid(OrbicohError):
    pass


class NotNormal(OrbicohError):
    pass


# linear algebra
class NoSolution(OrbicohError):
    pass


class DimensionMismatch(OrbicohError):
    pass


# modules
class CategoryMismatch(OrbicohError):
    pass


class InducedMapFailure(OrbicohError):
    pass


class NotDownwardClosed(OrbicohError):
    pass


class NotSubfamily(OrbicohError):
    pass


class NotSuperfamily(OrbicohError):
    pass


class FunctorialityError(OrbicohError):
    pass


# homological algebra
class LiftFailed(OrbicohError):
    pass


class DegreeBoundExceeded(OrbicohError):
    pass


# relative cohomology
class NotEquivariant(OrbicohError):
    pass


class NotSurjective(OrbicohError):
    pass


class WindowTooShort(OrbicohError):
    pass


class SpecParseError(OrbicohError):
    pass
