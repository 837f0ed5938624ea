#! /usr/bin/env python
"""This module acts as an interface for eigendecompositions and spectral calculus"""

import cmath
import math
from dataclasses import dataclass

import numpy
import scipy.linalg
from networkx.utils import UnionFind

from advlin import exceptions
from advlin.matcore import Mat
from advlin.partitions import ColoredWord
from advlin.utils.decorators import square_matrix


KINDS = ('auto', 'general', 'hermitian', 'normal')
POSITIVITY_CLASSES = ('not_selfadjoint', 'indefinite', 'positive', 'strictly_positive')


@dataclass(frozen=True)
class EigenDecomp:
    """Eigenvalues with the passage matrix whose columns are eigenvectors"""
    values: tuple
    passage: Mat
    kind: str

    def diagonal(self):
        return Mat.diag(self.values)

    def reconstruct(self):
        """P D P^-1, with P^-1 = P* on the hermitian and normal paths"""
        p = self.passage.data
        inverse = p.conj().T if self.kind != 'general' else numpy.linalg.inv(p)
        return Mat(p @ numpy.diag(self.values) @ inverse)


@dataclass(frozen=True)
class AtomicLaw:
    """Probability measure with finitely many atoms, as (location, weight) pairs"""
    atoms: tuple

    @classmethod
    def uniform(cls, values, merge_tol=1e-8):
        """Law (1/N) sum of delta_v over the values, merging close locations"""
        values = list(values)
        return cls.weighted([(v, 1.0 / len(values)) for v in values], merge_tol)

    @classmethod
    def weighted(cls, pairs, merge_tol=1e-8):
        """Law from (location, weight) pairs.

           Locations are single-linkage clustered: two atoms land in the same
           cluster when a chain of atoms, each within merge_tol of the next,
           joins them. A cluster becomes one atom at its weighted centre.
        """
        pairs = sorted(pairs, key=lambda a: (complex(a[0]).real, complex(a[0]).imag))
        clusters = UnionFind(range(len(pairs)))
        for i, (x, _) in enumerate(pairs):
            for j in range(i + 1, len(pairs)):
                y = pairs[j][0]
                if complex(y).real - complex(x).real > merge_tol:
                    break
                if abs(x - y) <= merge_tol:
                    clusters.union(i, j)
        merged = []
        for members in sorted((sorted(c) for c in clusters.to_sets()), key=min):
            total = sum(pairs[i][1] for i in members)
            if len(members) == 1:
                centre = pairs[members[0]][0]
            else:
                centre = sum(pairs[i][0] * pairs[i][1] for i in members) / total if total else pairs[members[0]][0]
            merged.append((centre, total))
        atoms = tuple((_simplify(loc), float(w)) for loc, w in merged if w > 1e-14)
        return cls(atoms)

    @property
    def locations(self):
        return [a[0] for a in self.atoms]

    @property
    def weights(self):
        return [a[1] for a in self.atoms]

    def mass(self):
        return math.fsum(self.weights)

    def weight_at(self, location, tol=1e-8):
        return math.fsum(w for x, w in self.atoms if abs(x - location) <= tol)

    def moment(self, k):
        return sum(w * x ** k for x, w in self.atoms)

    def colored_moment(self, word):
        """Integral of x^a conj(x)^b, a and b counting the word's two colors"""
        word = ColoredWord.coerce(word)
        return sum(w * x ** word.n_white * numpy.conj(x) ** word.n_black
                   for x, w in self.atoms)


def _simplify(z):
    z = complex(z)
    return z.real if z.imag == 0 else z


@dataclass(frozen=True)
class PolarDecomp:
    isometry: Mat
    modulus: Mat


@dataclass(frozen=True)
class SVDDecomp:
    left: Mat
    singulars: tuple
    right: Mat

    def reconstruct(self):
        k = len(self.singulars)
        u = self.left.data[:, :k]
        v = self.right.data[:, :k]
        return Mat(u @ numpy.diag(self.singulars) @ v.conj().T)


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def size(self):
        return self.n_plus + self.n_minus + self.n_zero

    def canonical_matrix(self):
        """Diagonal sign matrix of the form +x1^2 ... -x^2 ... 0"""
        return Mat.diag([1] * self.n_plus + [-1] * self.n_minus + [0] * self.n_zero)


class Spectra(object):

    def __init__(self, workbench, logger):
        """Constructor for Spectra object

            :param workbench.Workbench workbench: An already constructed Workbench object
            :param logging.Logger logger: A pre-configured Python Logger object
        """
        self.workbench = workbench
        self.logger = logger

    def _tol(self, m, tol):
        tol = self.workbench.tol if tol is None else tol
        return tol * max(1.0, m.norm())

    def is_hermitian(self, m, tol=None):
        if not m.is_square:
            return False
        return (m - m.adjoint()).norm() <= self._tol(m, tol)

    def is_normal(self, m, tol=None):
        if not m.is_square:
            return False
        a = m.to_float()
        residual = (a @ a.adjoint() - a.adjoint() @ a).norm()
        return residual <= self._tol(m, tol)

    def is_unitary(self, m, tol=None):
        if not m.is_square:
            return False
        a = m.to_float()
        tol = self.workbench.tol if tol is None else tol
        return (a.adjoint() @ a - Mat.identity(m.rows)).norm() <= tol * m.rows

    @square_matrix('m')
    def eigen(self, m, kind='auto', tol=None):
        """Diagonalize a square matrix.

           :param Mat m: Square matrix
           :param str kind: One of auto, general, hermitian, normal
                            Default(auto)
           :param float tol: Tolerance for the hermitian/normal preconditions
           :return EigenDecomp: Values and passage matrix
        """
        if kind not in KINDS:
            raise exceptions.InvalidParameterException(f"Unknown eigen kind {kind}, expected one of {KINDS}.")
        if kind == 'auto':
            if self.is_hermitian(m, tol):
                kind = 'hermitian'
            elif self.is_normal(m, tol):
                kind = 'normal'
            else:
                kind = 'general'
            self.logger.debug(f"Eigen path for {m.rows}x{m.cols} input: {kind}")
        data = m.to_float().data
        if kind == 'hermitian':
            if not self.is_hermitian(m, tol):
                raise exceptions.NotHermitianException(f"Matrix isn't hermitian within tolerance: {m}")
            values, vectors = scipy.linalg.eigh((data + data.conj().T) / 2)
            return EigenDecomp(values=tuple(float(v) for v in values),
                               passage=Mat(vectors), kind=kind)
        if kind == 'normal':
            if not self.is_normal(m, tol):
                raise exceptions.NotNormalException(f"Matrix isn't normal within tolerance: {m}")
            t, z = scipy.linalg.schur(data, output='complex')
            return EigenDecomp(values=tuple(complex(v) for v in numpy.diag(t)),
                               passage=Mat(z), kind=kind)
        values, vectors = scipy.linalg.eig(data)
        self._check_defect(m, values)
        return EigenDecomp(values=tuple(complex(v) for v in values),
                           passage=Mat(vectors), kind=kind)

    def _check_defect(self, m, values):
        clusters = self.workbench.poly.cluster_roots(
            list(values), self.workbench.cluster_tol * max(1.0, m.norm()))
        for value, multiplicity in clusters:
            if multiplicity == 1:
                continue
            shifted = m.to_float() - Mat.identity(m.rows).scale(value)
            geometric = m.rows - self.workbench.matrix.rank(shifted, self.workbench.cluster_tol)
            if geometric < multiplicity:
                msg = (f"Matrix is defective at eigenvalue {value}: geometric "
                       f"multiplicity {geometric} < algebraic {multiplicity}.")
                raise exceptions.DefectiveMatrixException(msg, eigenvalue=value)

    def matrix_law(self, m, tol=None):
        """Spectral measure (1/N) sum of delta_lambda of a normal matrix

           :param Mat m: Normal matrix
           :return AtomicLaw: Uniform atoms on the eigenvalues
        """
        if not self.is_normal(m, tol):
            msg = "The law of a non-normal matrix isn't a measure; use colored_moment."
            raise exceptions.NotNormalException(msg)
        kind = 'hermitian' if self.is_hermitian(m, tol) else 'normal'
        values = self.eigen(m, kind=kind, tol=tol).values
        return AtomicLaw.uniform(values, self.workbench.merge_tol)

    @square_matrix('m')
    def colored_moment(self, m, word):
        """Normalized trace tr(A^e1 ... A^es) with white letters A and black A*"""
        word = ColoredWord.coerce(word)
        a = m.to_float()
        product = Mat.identity(m.rows, a.backend)
        for white in word.colors():
            product = product @ (a if white else a.adjoint())
        return complex(product.tr())

    def funcalc(self, m, f, tol=None):
        """Apply a scalar function to a normal matrix through its eigenvalues.

           :param Mat m: Normal matrix
           :param callable f: Scalar function defined on the spectrum
           :return Mat: U diag(f(lambda_i)) U*
        """
        if not self.is_normal(m, tol):
            raise exceptions.NotNormalException(f"Functional calculus needs a normal matrix: {m}")
        kind = 'hermitian' if self.is_hermitian(m, tol) else 'normal'
        decomp = self.eigen(m, kind=kind, tol=tol)
        mapped = []
        for value in decomp.values:
            try:
                image = complex(f(value))
            except (ArithmeticError, ValueError) as ex:
                msg = f"Function undefined at eigenvalue {value}."
                raise exceptions.FunctionDomainException(msg) from ex
            if not cmath.isfinite(image):
                raise exceptions.FunctionDomainException(f"Function is not finite at eigenvalue {value}.")
            mapped.append(image)
        u = decomp.passage.data
        return Mat(u @ numpy.diag(mapped) @ u.conj().T)

    def modulus(self, m):
        """|A| = sqrt(A*A), the positive square root"""
        a = m.to_float()
        values, vectors = scipy.linalg.eigh((a.adjoint() @ a).data)
        roots = numpy.sqrt(numpy.clip(values, 0.0, None))
        return Mat(vectors @ numpy.diag(roots) @ vectors.conj().T)

    @square_matrix('m')
    def polar(self, m, tol=None):
        """Polar decomposition A = U|A|, U a partial isometry.

           U is unitary when A is invertible; otherwise it vanishes on ker |A|.
        """
        decomp = self.svd(m)
        w, v = decomp.left.data, decomp.right.data
        singulars = numpy.array(decomp.singulars)
        cutoff = self._tol(m, tol) * max(1.0, singulars[0])
        keep = singulars > cutoff
        isometry = w[:, keep] @ v[:, keep].conj().T
        if not keep.all():
            self.logger.debug(f"Polar decomposition of a rank {keep.sum()} matrix")
        modulus = v @ numpy.diag(singulars) @ v.conj().T
        return PolarDecomp(isometry=Mat(isometry), modulus=Mat(modulus))

    def svd(self, m):
        """Singular value decomposition A = left diag(singulars) right*"""
        u, s, vh = numpy.linalg.svd(m.to_float().data)
        return SVDDecomp(left=Mat(u), singulars=tuple(float(x) for x in s),
                         right=Mat(vh.conj().T))

    @square_matrix('m')
    def expm(self, m):
        """Matrix exponential by scaling and squaring a truncated Taylor series.

           The matrix is scaled by 2^-s until its norm is at most 1/2; the
           series stops once a term falls under 1e-18 of the partial sum.
        """
        a = m.to_float().data
        norm = numpy.linalg.norm(a, 1)
        squarings = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
        b = a / 2 ** squarings
        total = numpy.eye(m.rows, dtype=complex)
        term = numpy.eye(m.rows, dtype=complex)
        for k in range(1, 60):
            term = term @ b / k
            total = total + term
            if numpy.linalg.norm(term) <= 1e-18 * numpy.linalg.norm(total):
                break
        for _ in range(squarings):
            total = total @ total
        return Mat(total)

    @square_matrix('m')
    def positivity_class(self, m, tol=None):
        """Classify as not_selfadjoint, indefinite, positive or strictly_positive"""
        if not self.is_hermitian(m, tol):
            return 'not_selfadjoint'
        data = m.to_float().data
        values = scipy.linalg.eigvalsh((data + data.conj().T) / 2)
        gate = self._tol(m, tol)
        if values.min() > gate:
            return 'strictly_positive'
        if values.min() >= -gate:
            return 'positive'
        return 'indefinite'

    @square_matrix('m')
    def inertia(self, m, tol=None):
        """Signature (n+, n-, n0) of a real symmetric matrix"""
        if not m.is_real() or (m - m.transpose()).norm() > self._tol(m, tol):
            raise exceptions.NotHermitianException(f"Inertia needs a real symmetric matrix: {m}")
        values = scipy.linalg.eigvalsh(m.to_float().data.real)
        gate = self._tol(m, tol)
        return Inertia(n_plus=int(numpy.sum(values > gate)),
                       n_minus=int(numpy.sum(values < -gate)),
                       n_zero=int(numpy.sum(numpy.abs(values) <= gate)))
