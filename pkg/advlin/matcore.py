#! /usr/bin/env python
"""This module provides the dense matrix carrier, permutations and determinants"""

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy

from advlin import exceptions
from advlin.utils.decorators import square_matrix


class Backend(enum.Enum):
    FLOAT = 'float'
    INTEGER = 'exact-integer'
    RATIONAL = 'exact-rational'

    @property
    def exact(self):
        return self is not Backend.FLOAT


def infer_backend(values):
    """Smallest backend able to hold every value exactly

       :param iterable values: Scalars (int, Fraction, float, complex)
       :return Backend: INTEGER, RATIONAL or FLOAT
    """
    backend = Backend.INTEGER
    for v in values:
        if isinstance(v, (int, numpy.integer)):
            continue
        if isinstance(v, Fraction):
            backend = Backend.RATIONAL
            continue
        return Backend.FLOAT
    return backend


def combine_backends(*backends):
    if Backend.FLOAT in backends:
        return Backend.FLOAT
    if Backend.RATIONAL in backends:
        return Backend.RATIONAL
    return Backend.INTEGER


def _exact_entry(value, backend):
    if backend is Backend.INTEGER:
        if isinstance(value, Fraction):
            if value.denominator != 1:
                msg = f"Entry {value} doesn't fit the integer backend."
                raise exceptions.MalformedInputException(msg)
            return value.numerator
        return int(value)
    return Fraction(value)


@dataclass(frozen=True, eq=False)
class Mat:
    """Dense complex matrix, row-major, with a float or an exact backend.

       Exact backends hold Python ints or Fractions in a numpy object array,
       so arithmetic never overflows. Float data is complex128.
    """
    data: numpy.ndarray
    backend: Backend = Backend.FLOAT

    def __post_init__(self):
        if self.backend.exact:
            raw = numpy.array(self.data, dtype=object)
            if raw.ndim == 2:
                raw = numpy.array([[_exact_entry(v, self.backend) for v in row]
                                   for row in raw], dtype=object)
        else:
            raw = numpy.array(self.data, dtype=complex)
        if raw.ndim != 2 or raw.shape[0] == 0 or raw.shape[1] == 0:
            msg = f"Matrix data must be a non-empty 2-D array, got shape {raw.shape}."
            raise exceptions.ShapeException(msg)
        if not self.backend.exact and not numpy.all(numpy.isfinite(raw)):
            raise exceptions.MalformedInputException("Matrix has non-finite entries.")
        raw.flags.writeable = False
        object.__setattr__(self, 'data', raw)

    @classmethod
    def from_rows(cls, rows, backend=None):
        """Build a matrix from nested rows, inferring the backend if not given

           :param list rows: Sequence of equal-length rows
           :param Backend backend: Force a backend Default(None)
        """
        rows = [list(r) for r in rows]
        if backend is None:
            backend = infer_backend(v for r in rows for v in r)
        return cls(numpy.array(rows, dtype=object if backend.exact else complex),
                   backend)

    @classmethod
    def identity(cls, n, backend=Backend.INTEGER):
        return cls.diag([1] * n, backend)

    @classmethod
    def zeros(cls, rows, cols, backend=Backend.INTEGER):
        return cls.from_rows([[0] * cols for _ in range(rows)], backend)

    @classmethod
    def diag(cls, values, backend=None):
        values = list(values)
        n = len(values)
        rows = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_rows(rows, backend)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def is_square(self):
        return self.rows == self.cols

    @property
    def exact(self):
        return self.backend.exact

    def entry(self, i, j):
        """Entry at 1-based position (i, j)"""
        return self.data[i - 1, j - 1]

    def tolist(self):
        return [list(r) for r in self.data]

    def to_float(self):
        if not self.exact:
            return self
        return Mat(numpy.array([[complex(v) for v in r] for r in self.data]),
                   Backend.FLOAT)

    def to_exact(self):
        """Exact copy of a real float matrix (floats are dyadic rationals)"""
        if self.exact:
            return self
        if numpy.any(self.data.imag != 0):
            raise exceptions.MalformedInputException(
                "Only real matrices have an exact representation.")
        rows = [[Fraction(float(v.real)) for v in r] for r in self.data]
        return Mat.from_rows(rows, infer_backend(
            v.numerator if v.denominator == 1 else v for r in rows for v in r))

    def _coerce(self, other):
        backend = combine_backends(self.backend, other.backend)
        if backend.exact:
            return self.data, other.data, backend
        return self.to_float().data, other.to_float().data, backend

    def __matmul__(self, other):
        if self.cols != other.rows:
            msg = f"Can't multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}."
            raise exceptions.ShapeException(msg)
        a, b, backend = self._coerce(other)
        return Mat(a @ b, backend)

    def __add__(self, other):
        if self.shape != other.shape:
            raise exceptions.ShapeException(f"Shapes {self.shape} and {other.shape} differ.")
        a, b, backend = self._coerce(other)
        return Mat(a + b, backend)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Mat(-self.data, self.backend)

    def scale(self, c):
        """Multiply every entry by the scalar c"""
        backend = combine_backends(self.backend, infer_backend([c]))
        if backend.exact:
            return Mat(self.data * c, backend)
        return Mat(self.to_float().data * complex(c), backend)

    def __pow__(self, k):
        if not self.is_square or k < 0:
            raise exceptions.ShapeException("Only square matrices have non-negative powers.")
        result = Mat.identity(self.rows, self.backend if self.exact else Backend.FLOAT)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def adjoint(self):
        """Conjugate transpose A*"""
        if self.exact:
            return Mat(self.data.T, self.backend)
        return Mat(self.data.conj().T, self.backend)

    def transpose(self):
        return Mat(self.data.T, self.backend)

    def trace(self):
        return sum(self.data[i, i] for i in range(min(self.shape)))

    def tr(self):
        """Normalized trace Tr(A)/N"""
        if self.exact:
            return Fraction(self.trace(), self.rows)
        return self.trace() / self.rows

    def kron(self, other):
        a, b, backend = self._coerce(other)
        return Mat(numpy.kron(a, b), backend)

    def submatrix(self, i, j):
        """Copy with 1-based row i and column j removed"""
        keep_r = [r for r in range(self.rows) if r != i - 1]
        keep_c = [c for c in range(self.cols) if c != j - 1]
        return Mat(self.data[numpy.ix_(keep_r, keep_c)], self.backend)

    def norm(self):
        """Frobenius norm, as a float"""
        return float(numpy.linalg.norm(self.to_float().data))

    def allclose(self, other, tol=1e-10):
        return self.shape == other.shape and (self - other).norm() <= tol

    def is_real(self):
        return self.exact or not numpy.any(self.data.imag != 0)

    def __eq__(self, other):
        if not isinstance(other, Mat) or self.shape != other.shape:
            return False
        a, b, _ = self._coerce(other)
        return bool(numpy.all(a == b))

    __hash__ = None

    def __repr__(self):
        return f"Mat({self.tolist()!r}, backend={self.backend.value})"


@dataclass(frozen=True)
class Perm:
    """Permutation of {1,...,N}, stored as its image sequence"""
    images: tuple

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            msg = f"{images} isn't a permutation of 1..{len(images)}."
            raise exceptions.InvalidPermutationException(msg)
        object.__setattr__(self, 'images', images)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n, i, j):
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def cycle(cls, n, *points):
        """The cycle (p1 p2 ... pr) in S_n"""
        images = list(range(1, n + 1))
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b
        return cls(tuple(images))

    @property
    def n(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def inverse(self):
        images = [0] * self.n
        for i, s in enumerate(self.images, start=1):
            images[s - 1] = i
        return Perm(tuple(images))

    def fixed_points(self):
        return [i for i in range(1, self.n + 1) if self(i) == i]

    def inversions(self):
        return sum(1 for a, b in itertools.combinations(self.images, 2) if a > b)


def _bareiss_det(rows, divide):
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], previous)
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def _row_echelon(rows):
    """Fraction row echelon form, returns (echelon rows, pivot columns)"""
    m = [[Fraction(v) for v in r] for r in rows]
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, n_rows):
            if m[i][c] != 0:
                factor = m[i][c] / m[r][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


class MatCore(object):

    def __init__(self, workbench, logger):
        """Constructor for MatCore object

            :param workbench.Workbench workbench: An already constructed Workbench object
            :param logging.Logger logger: A pre-configured Python Logger object
        """
        self.workbench = workbench
        self.logger = logger

    @square_matrix('m')
    def det(self, m):
        """Determinant of a square matrix.

           Exact backends use Bareiss fraction-free elimination, the float
           backend uses LU with partial pivoting.

           :param Mat m: Square matrix
           :return: int, Fraction or complex depending on the backend
        """
        if m.backend is Backend.INTEGER:
            return int(_bareiss_det(m.data, lambda a, b: a // b))
        if m.backend is Backend.RATIONAL:
            return Fraction(_bareiss_det(m.data, lambda a, b: a / b))
        return complex(numpy.linalg.det(m.data))

    @square_matrix('m')
    def det_permutation_sum(self, m):
        """Determinant as the signed sum over all permutations (oracle path)

           :param Mat m: Square matrix of size at most the 'permutation_det' budget
        """
        limit = self.workbench.budgets['permutation_det']
        if m.rows > limit:
            msg = f"Permutation sum limited to N <= {limit}, got N={m.rows}."
            raise exceptions.BudgetExceededException(msg)
        total = 0
        for images in itertools.permutations(range(1, m.rows + 1)):
            sigma = Perm(images)
            term = self.perm_signature(sigma)
            for i in range(1, m.rows + 1):
                term = term * m.entry(i, sigma(i))
            total = total + term
        return total if m.exact else complex(total)

    def perm_signature(self, p):
        """Signature (-1)^{#inversions} of a permutation"""
        return -1 if p.inversions() % 2 else 1

    def perm_matrix(self, p):
        """0-1 matrix having 1 on row i and column p(i)

           :param Perm p: A permutation
           :return Mat: Exact integer permutation matrix
        """
        rows = [[1 if j == p(i) else 0 for j in range(1, p.n + 1)]
                for i in range(1, p.n + 1)]
        return Mat.from_rows(rows, Backend.INTEGER)

    def compose(self, sigma, tau):
        """Product sigma*tau, acting as sigma first and then tau.

           This is the convention under which perm_matrix is multiplicative:
           perm_matrix(sigma*tau) = perm_matrix(sigma) @ perm_matrix(tau).
        """
        if sigma.n != tau.n:
            raise exceptions.ShapeException(f"Can't compose S_{sigma.n} with S_{tau.n}.")
        return Perm(tuple(tau(sigma(i)) for i in range(1, sigma.n + 1)))

    def vandermonde(self, xs):
        """Vandermonde matrix, row r holding the powers x_j^(N-r).

           With the highest powers on top, det = prod_{i<j}(x_i - x_j).
        """
        xs = list(xs)
        n = len(xs)
        return Mat.from_rows([[x ** (n - 1 - r) for x in xs] for r in range(n)])

    def vandermonde_det(self, xs):
        xs = list(xs)
        result = 1
        for i, j in itertools.combinations(range(len(xs)), 2):
            result = result * (xs[i] - xs[j])
        return result

    def hadamard_bound(self, m):
        """Product of the row norms, an upper bound for |det m|"""
        data = m.to_float().data
        return float(numpy.prod(numpy.linalg.norm(data, axis=1)))

    def rank(self, m, tol=None):
        """Rank: exact elimination on exact backends, SVD threshold on floats

           :param Mat m: Any matrix
           :param float tol: Relative threshold on singular values, as a
                             fraction of the largest one
        """
        if m.exact:
            return len(_row_echelon(m.data)[1])
        tol = self.workbench.tol if tol is None else tol
        singulars = numpy.linalg.svd(m.data, compute_uv=False)
        if singulars[0] == 0:
            return 0
        return int(numpy.sum(singulars > tol * singulars[0]))

    def nullspace(self, m):
        """Exact basis of ker(m), as a list of column vectors of Fractions"""
        echelon, pivots = _row_echelon(m.data)
        free = [c for c in range(m.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * m.cols
            v[f] = Fraction(1)
            for row in reversed(range(len(pivots))):
                c = pivots[row]
                s = sum(echelon[row][j] * v[j] for j in range(c + 1, m.cols))
                v[c] = -s / echelon[row][c]
            basis.append(v)
        return basis

    @square_matrix('m')
    def inverse(self, m):
        """Inverse matrix, exact rational on exact backends"""
        if not m.exact:
            try:
                return Mat(numpy.linalg.inv(m.data))
            except numpy.linalg.LinAlgError as ex:
                raise exceptions.SingularMatrixException("Matrix is singular.") from ex
        n = m.rows
        aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(m.data)]
        for c in range(n):
            pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
            if pivot is None:
                raise exceptions.SingularMatrixException("Matrix is singular.")
            aug[c], aug[pivot] = aug[pivot], aug[c]
            lead = aug[c][c]
            aug[c] = [v / lead for v in aug[c]]
            for i in range(n):
                if i != c and aug[i][c] != 0:
                    factor = aug[i][c]
                    aug[i] = [a - factor * b for a, b in zip(aug[i], aug[c])]
        inv = [row[n:] for row in aug]
        backend = Backend.INTEGER if all(v.denominator == 1 for r in inv for v in r) \
            else Backend.RATIONAL
        return Mat.from_rows(inv, backend)
