"""Exception types shared across the library."""


class Error(Exception):
    """Base class for all errors raised by this package."""


# --- invalid algebraic structure (CLI exit code 3) ---

class NotAssociative(Error):
    """A multiplication table fails associativity; args carry a witness triple."""


class ZeroNotAbsorbing(Error):
    """The declared zero element is not absorbing."""


class NotInverseSemigroup(Error):
    """Some element has no, or more than one, generalized inverse."""


STRUCTURE_ERRORS = (NotAssociative, ZeroNotAbsorbing, NotInverseSemigroup)


# --- precondition / usage errors (CLI exit code 4) ---

class SizeLimit(Error):
    """Input exceeds the supported desk-scale size."""


class AlreadyHasZero(Error):
    pass


class NoZeroElement(Error):
    pass


class NotIdempotent(Error):
    pass


class ClassMismatch(Error):
    pass


class NotHermitian(Error):
    pass


class DimensionMismatch(Error):
    pass


class SemigroupMismatch(Error):
    pass


class IncompleteIrrepSet(Error):
    pass


class WrongBasis(Error):
    pass


class WrongSemigroup(Error):
    pass


class IndexOutOfRange(Error):
    pass


class NotPositiveDefinite(Error):
    pass


class NotARepresentation(Error):
    pass


PRECONDITION_ERRORS = (
    SizeLimit,
    AlreadyHasZero,
    NoZeroElement,
    NotIdempotent,
    ClassMismatch,
    NotHermitian,
    DimensionMismatch,
    SemigroupMismatch,
    IncompleteIrrepSet,
    WrongBasis,
    WrongSemigroup,
    IndexOutOfRange,
    NotPositiveDefinite,
    NotARepresentation,
)


# --- internal-consistency failures: these signal a bug, not a data condition ---

class InternalInconsistency(Error):
    pass


class ReconstructionFailure(Error):
    pass


class NonConvergent(Error):
    pass
