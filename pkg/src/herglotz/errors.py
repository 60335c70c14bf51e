"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class HerglotzError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInput(HerglotzError):
    pass


class ZeroPolynomial(HerglotzError):
    pass


class ZeroFunction(HerglotzError):
    pass


class EndpointIsRoot(HerglotzError):
    pass


class EndpointOnSupport(HerglotzError):
    pass


class NonRealRoots(HerglotzError):
    pass


class Undecided(HerglotzError):
    """A sign or order could not be certified within the refinement cap."""


class InterlacingViolated(HerglotzError):
    pass


class NotNInterlacing(HerglotzError):
    pass


class NotSharpReal(HerglotzError):
    pass


class SingularOnContour(HerglotzError):
    pass


class RootNearAxis(HerglotzError):
    pass


class NotHermitian(HerglotzError):
    pass


class RankDeficient(HerglotzError):
    pass


class IndexOutOfRange(HerglotzError):
    pass


class ConstantKernelViolated(HerglotzError):
    pass


class KernelAdjointMismatch(HerglotzError):
    pass


class NonSimplePole(HerglotzError):
    def __init__(self, message: str, entry: tuple[int, int] | None = None):
        super().__init__(message)
        self.entry = entry


class HermitianViolation(HerglotzError):
    pass


class NotVerifiedHerglotz(HerglotzError):
    pass


class PoleOnGrid(HerglotzError):
    pass


class SingularEPlus(HerglotzError):
    pass


class SingularE(HerglotzError):
    pass


class SubspaceTooSmall(HerglotzError):
    pass


class IrrationalCoefficients(HerglotzError):
    """A product over algebraic points does not have rational coefficients."""
