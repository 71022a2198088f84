"""Exception hierarchy shared by all knotcob modules."""


class KnotcobError(Exception):
    """Base class for all domain errors raised by this package."""


# -- Gauss code parsing / validation --------------------------------------

class MalformedToken(KnotcobError):
    pass


class OccurrenceCount(KnotcobError):
    pass


class FlagConflict(KnotcobError):
    pass


class SignConflict(KnotcobError):
    pass


class BadSignDomain(KnotcobError):
    pass


class InapplicableMove(KnotcobError):
    pass


# -- Fatgraph / surface ----------------------------------------------------

class OddEuler(KnotcobError):
    pass


class Disconnected(KnotcobError):
    pass


class PathNotOnGraph(KnotcobError):
    pass


class DoesNotLift(KnotcobError):
    pass


class ResourceLimit(KnotcobError):
    pass


# -- Graded matrices -------------------------------------------------------

class NotSkew(KnotcobError):
    pass


class NotNormal(KnotcobError):
    pass


class WrongRing(KnotcobError):
    pass


class NotANormal(KnotcobError):
    pass


class SizeCap(KnotcobError):
    pass
