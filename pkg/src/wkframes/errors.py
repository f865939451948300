"""Exception hierarchy.

Every error raised by the package derives from :class:`FrameError`, which is
itself a ``ValueError`` so callers that only care about bad input can catch
the builtin.
"""


class FrameError(ValueError):
    """Base class for all package errors."""


# numeric core
class NonFinite(FrameError):
    pass


class NotHermitian(FrameError):
    pass


class DimensionMismatch(FrameError):
    pass


class DimensionTooLarge(FrameError):
    pass


class ZeroPencil(FrameError):
    """The right-hand matrix of a pencil is numerically zero."""


class UnboundedPencil(FrameError):
    """The left matrix is positive on the kernel of the right one."""


class NoConvergence(FrameError):
    pass


# frames and weaving
class EmptyFamily(FrameError):
    pass


class ZeroSubspace(FrameError):
    pass


class ZeroK(FrameError):
    pass


class LengthMismatch(FrameError):
    pass


class BudgetZero(FrameError):
    pass


# certifiers: a failed hypothesis is distinct from a failed certificate
class HypothesisFails(FrameError):
    pass


class NotKFrame(HypothesisFails):
    pass


class NotKFrameOnRange(HypothesisFails):
    pass


class NotKWoven(HypothesisFails):
    pass


class NotKWovenOnRange(HypothesisFails):
    pass


class NotInjective(HypothesisFails):
    pass


class ZeroT(HypothesisFails):
    pass


class BadAlpha(HypothesisFails):
    pass


class NoFiniteC(HypothesisFails):
    pass


class CTooLarge(HypothesisFails):
    pass


# problem files
class ParseError(FrameError):
    pass


class ValidationError(FrameError):
    pass
