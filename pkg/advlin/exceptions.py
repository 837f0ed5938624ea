class AdvlinException(Exception):
    """Superclass for this library's exceptions"""
    pass


class MalformedInputException(AdvlinException):
    """Input data (JSON, text, arguments) couldn't be decoded."""
    pass


class ShapeException(AdvlinException):
    """Matrix shape or ground-set size doesn't fit the operation."""
    pass


class InvalidPermutationException(AdvlinException):
    """Image sequence isn't a bijection of {1,...,N}."""
    pass


class DegreeException(AdvlinException):
    """Polynomial degree too small (constant or zero polynomial)."""
    pass


class NotMonicException(AdvlinException):
    """Polynomial isn't monic."""
    pass


class DegenerateException(AdvlinException):
    """Discriminant within tolerance of zero, classification withheld."""
    pass


class DefectiveMatrixException(AdvlinException):
    """Matrix isn't diagonalizable (geometric < algebraic multiplicity)."""

    def __init__(self, msg, eigenvalue=None):
        super().__init__(msg)
        self.eigenvalue = eigenvalue


class NotNormalException(AdvlinException):
    """Matrix isn't normal within tolerance."""
    pass


class NotHermitianException(AdvlinException):
    """Matrix isn't self-adjoint (or real symmetric) within tolerance."""
    pass


class FunctionDomainException(AdvlinException):
    """Function isn't defined at one of the eigenvalues."""
    pass


class ClusterSeparationException(AdvlinException):
    """Eigenvalue clusters are too close to be told apart."""
    pass


class LeadingMinorException(AdvlinException):
    """A leading principal minor vanishes."""

    def __init__(self, msg, index=None):
        super().__init__(msg)
        self.index = index


class BudgetExceededException(AdvlinException):
    """Requested size is above the configured budget."""
    pass


class InvalidParameterException(AdvlinException):
    """Parameter outside of its admissible range."""
    pass


class WilliamsonConditionException(AdvlinException):
    """Williamson quadruple fails one of its defining identities."""
    pass


class SingularGramException(AdvlinException):
    """Gram matrix isn't invertible at this N."""
    pass


class CrossingPartitionException(AdvlinException):
    """Partition has crossing blocks where a noncrossing one is required."""
    pass


class SingularMatrixException(AdvlinException):
    """Matrix isn't invertible."""
    pass
