#! /usr/bin/env python
"""This module acts as an interface for triangular factorizations"""

from dataclasses import dataclass
from fractions import Fraction

import numpy
import scipy.linalg

from advlin import exceptions
from advlin.matcore import Backend, Mat, Perm
from advlin.utils.decorators import square_matrix


@dataclass(frozen=True)
class PLUDecomp:
    """perm_matrix(perm) A perm_matrix(column_perm)^t = L U

       column_perm is the identity unless full pivoting was requested.
    """
    perm: Perm
    lower: Mat
    upper: Mat
    column_perm: Perm = None


@dataclass(frozen=True)
class QRDecomp:
    q: Mat
    r: Mat


@dataclass(frozen=True)
class SchurDecomp:
    q: Mat
    t: Mat


def _as_fraction_rows(m):
    return [[Fraction(v) for v in row] for row in m.data]


def _exact_mat(rows):
    values = [v for r in rows for v in r]
    backend = Backend.INTEGER if all(v.denominator == 1 for v in values) else Backend.RATIONAL
    return Mat.from_rows(rows, backend)


class Factor(object):

    def __init__(self, workbench, logger):
        """Constructor for Factor object

            :param workbench.Workbench workbench: An already constructed Workbench object
            :param logging.Logger logger: A pre-configured Python Logger object
        """
        self.workbench = workbench
        self.logger = logger

    @square_matrix('m')
    def plu(self, m, full_pivot=False):
        """PLU factorization with partial pivoting by largest magnitude.

           :param Mat m: Square matrix, exact or float
           :param bool full_pivot: Also permute columns, picking the largest
                                   remaining entry as pivot Default(False)
           :return PLUDecomp: Row permutation, unit lower L and upper U
        """
        n = m.rows
        if not m.exact and not full_pivot:
            p, lower, upper = scipy.linalg.lu(m.data)
            images = tuple(int(numpy.argmax(numpy.abs(p[:, i]))) + 1 for i in range(n))
            return PLUDecomp(perm=Perm(images), lower=Mat(lower), upper=Mat(upper),
                             column_perm=Perm.identity(n))
        work = _as_fraction_rows(m) if m.exact else [list(row) for row in m.data]
        rows = list(range(n))
        cols = list(range(n))
        lower = [[0] * n for _ in range(n)]
        for k in range(n):
            if full_pivot:
                i, j = max(((i, j) for i in range(k, n) for j in range(k, n)),
                           key=lambda ij: abs(work[ij[0]][ij[1]]))
            else:
                i, j = max(range(k, n), key=lambda i: abs(work[i][k])), k
            if i != k:
                work[k], work[i] = work[i], work[k]
                lower[k], lower[i] = lower[i], lower[k]
                rows[k], rows[i] = rows[i], rows[k]
            if j != k:
                for row in work:
                    row[k], row[j] = row[j], row[k]
                cols[k], cols[j] = cols[j], cols[k]
            pivot = work[k][k]
            lower[k][k] = 1
            if pivot == 0:
                self.logger.debug(f"Zero pivot at step {k + 1}")
                continue
            for i in range(k + 1, n):
                factor = work[i][k] / pivot
                lower[i][k] = factor
                work[i] = [a - factor * b for a, b in zip(work[i], work[k])]
        upper = [[work[i][j] if j >= i else 0 for j in range(n)] for i in range(n)]
        if m.exact:
            lower_mat = _exact_mat([[Fraction(v) for v in r] for r in lower])
            upper_mat = _exact_mat([[Fraction(v) for v in r] for r in upper])
        else:
            lower_mat, upper_mat = Mat.from_rows(lower, Backend.FLOAT), Mat.from_rows(upper, Backend.FLOAT)
        return PLUDecomp(perm=Perm(tuple(r + 1 for r in rows)), lower=lower_mat,
                         upper=upper_mat, column_perm=Perm(tuple(c + 1 for c in cols)))

    def det_from_plu(self, decomp):
        """det A = sign(perm) sign(column_perm) prod diag(U)"""
        matrix = self.workbench.matrix
        result = matrix.perm_signature(decomp.perm)
        if decomp.column_perm is not None:
            result *= matrix.perm_signature(decomp.column_perm)
        for i in range(decomp.upper.rows):
            result = result * decomp.upper.data[i, i]
        return result

    def _pivot_free(self, m, tol=None):
        n = m.rows
        exact = m.exact
        work = _as_fraction_rows(m) if exact else [list(row) for row in m.to_float().data]
        gate = 0 if exact else (self.workbench.tol if tol is None else tol) * max(1.0, m.norm())
        lower = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for k in range(n):
            if abs(work[k][k]) <= gate:
                msg = f"Leading principal minor {k + 1} vanishes, no pivot-free factorization."
                raise exceptions.LeadingMinorException(msg, index=k + 1)
            for i in range(k + 1, n):
                factor = work[i][k] / work[k][k]
                lower[i][k] = factor
                work[i] = [a - factor * b for a, b in zip(work[i], work[k])]
        upper = [[work[i][j] if j >= i else 0 for j in range(n)] for i in range(n)]
        return lower, upper

    def _wrap(self, rows, exact):
        if exact:
            return _exact_mat([[Fraction(v) for v in r] for r in rows])
        return Mat.from_rows(rows, Backend.FLOAT)

    @square_matrix('m')
    def lu(self, m, tol=None):
        """A = L U without pivoting, L unit lower triangular

           :raises LeadingMinorException: when a leading principal minor is 0
        """
        lower, upper = self._pivot_free(m, tol)
        return self._wrap(lower, m.exact), self._wrap(upper, m.exact)

    @square_matrix('m')
    def ldu(self, m, tol=None):
        """A = L D U with L unit lower, D diagonal and U unit upper

           :return tuple: (L, D, U)
        """
        lower, upper = self._pivot_free(m, tol)
        n = m.rows
        diagonal = [[upper[i][i] if i == j else 0 for j in range(n)] for i in range(n)]
        unit_upper = [[upper[i][j] / upper[i][i] if j >= i else 0 for j in range(n)]
                      for i in range(n)]
        return (self._wrap(lower, m.exact), self._wrap(diagonal, m.exact),
                self._wrap(unit_upper, m.exact))

    def qr(self, m):
        """Householder QR with the diagonal of R made real and nonnegative.

           :param Mat m: Matrix with rows >= cols
           :return QRDecomp: Q with orthonormal columns, R upper triangular
        """
        if m.rows < m.cols:
            raise exceptions.ShapeException(f"QR needs rows >= cols, got {m.rows}x{m.cols}.")
        q, r = scipy.linalg.qr(m.to_float().data, mode='economic')
        for j in range(r.shape[0]):
            d = r[j, j]
            if abs(d) == 0:
                continue
            phase = d / abs(d)
            q[:, j] = q[:, j] * phase
            r[j, :] = r[j, :] / phase
        return QRDecomp(q=Mat(q), r=Mat(numpy.triu(r)))

    def lq(self, m):
        """A = L Q from the QR factorization of A*"""
        decomp = self.qr(m.to_float().adjoint())
        return decomp.r.adjoint(), decomp.q.adjoint()

    def ql(self, m):
        """A = Q L from the QR factorization of A with reversed columns"""
        flip = numpy.eye(m.cols)[::-1]
        decomp = self.qr(Mat(m.to_float().data @ flip))
        return Mat(decomp.q.data @ flip), Mat(flip @ decomp.r.data @ flip)

    def rq(self, m):
        """A = R Q from the QL factorization of A*"""
        q, lower = self.ql(m.to_float().adjoint())
        return lower.adjoint(), q.adjoint()

    @square_matrix('m')
    def schur(self, m):
        """Complex Schur form A = Q T Q*, the eigenvalues on the diagonal of T"""
        t, q = scipy.linalg.schur(m.to_float().data, output='complex')
        return SchurDecomp(q=Mat(q), t=Mat(numpy.triu(t)))
