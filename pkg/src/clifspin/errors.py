"""Exception hierarchy shared by every module."""


class CliffordError(ValueError):
    """Base class for all errors raised by clifspin."""


class SignatureMismatch(CliffordError):
    pass


class CapExceeded(CliffordError):
    pass


class GradeOutOfRange(CliffordError):
    pass


class Singular(CliffordError):
    """The element has no two-sided inverse."""


class NotAVector(CliffordError):
    pass


class ParseError(CliffordError):
    pass


class DegenerateSignature(CliffordError):
    """Operation requires a nondegenerate (r = 0) signature."""


class NotInCliffordGroup(CliffordError):
    pass


class IsotropicVector(CliffordError):
    pass


class NotOrthogonal(CliffordError):
    pass


class FactorizationFailed(CliffordError):
    """No admissible non-isotropic pivot was found.

    This is a limitation of the reflection algorithm on indefinite forms,
    not a statement that the input is invalid.
    """


class NumericalFailure(CliffordError):
    pass


class VerificationFailed(CliffordError):
    pass


class MissingGrading(CliffordError):
    pass
