"""Exception hierarchy.

Validation errors map to CLI exit code 2, solver errors to exit code 4.
"""


class StationaryError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(StationaryError, ValueError):
    pass


class NotSquare(ValidationError):
    def __init__(self, shape):
        self.shape = tuple(shape)
        super().__init__(f"matrix is not square: shape {self.shape}")


class NegativeEntry(ValidationError):
    def __init__(self, i, j, value):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"negative entry p({i},{j}) = {value!r}")


class NonFiniteEntry(ValidationError):
    def __init__(self, i, j, value):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"non-finite entry p({i},{j}) = {value!r}")


class RowSumViolation(ValidationError):
    def __init__(self, i, total):
        self.i, self.total = i, total
        super().__init__(f"row {i} sums to {total!r}, not 1")


class VectorSumViolation(ValidationError):
    def __init__(self, total):
        self.total = total
        super().__init__(f"vector entries sum to {total!r}, not 1")


class DimensionMismatch(StationaryError, ValueError):
    def __init__(self, left, right):
        self.left, self.right = left, right
        super().__init__(f"dimension mismatch: {left} vs {right}")


class IndexOutOfRange(StationaryError, IndexError):
    def __init__(self, index, n):
        self.index, self.n = index, n
        super().__init__(f"state index {index} outside 0..{n - 1}")


class SolverError(StationaryError):
    pass


class NotUniqueStationary(SolverError):
    def __init__(self, kernel_dimension):
        self.kernel_dimension = kernel_dimension
        super().__init__(
            f"kernel of (P - I)^T has dimension {kernel_dimension}, expected 1"
        )


class NonPositiveEntry(SolverError):
    def __init__(self, i, value=None):
        self.i, self.value = i, value
        super().__init__(f"entry {i} of the distribution is not strictly positive ({value!r})")


class MaxIterationsExceeded(SolverError):
    def __init__(self, k, residual):
        self.k, self.residual = k, residual
        super().__init__(f"no convergence after k={k} (residual {residual:.3e})")


class InvalidSpec(StationaryError, ValueError):
    pass
