#! /usr/bin/env python
"""This module acts as an interface for companion matrices and Jordan forms"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy
import scipy.linalg

from advlin import exceptions
from advlin.matcore import Backend, Mat
from advlin.utils.decorators import square_matrix


@dataclass(frozen=True)
class JordanForm:
    """Jordan structure A = P J P^-1

       blocks holds (eigenvalue, size) pairs in the order the passage columns
       are laid out.
    """
    blocks: tuple
    passage: Mat

    @property
    def size(self):
        return sum(s for _, s in self.blocks)

    def sizes_at(self, eigenvalue, tol=1e-8):
        return sorted((s for v, s in self.blocks if abs(v - eigenvalue) <= tol), reverse=True)

    def multiset(self):
        return sorted(self.blocks, key=lambda b: (complex(b[0]).real, complex(b[0]).imag, b[1]))


def _lcm_of_denominators(m):
    result = 1
    for v in m.data.flat:
        d = v.denominator if isinstance(v, Fraction) else 1
        result = result * d // math.gcd(result, d)
    return result


class Jordan(object):

    def __init__(self, workbench, logger):
        """Constructor for Jordan object

            :param workbench.Workbench workbench: An already constructed Workbench object
            :param logging.Logger logger: A pre-configured Python Logger object
        """
        self.workbench = workbench
        self.logger = logger

    def companion(self, p):
        """Companion matrix: 1s under the diagonal, last column -p_0 ... -p_{N-1}

           :param Poly p: Monic polynomial of degree >= 1
           :return Mat: N x N companion matrix
        """
        if p.degree < 1:
            raise exceptions.DegreeException(f"Companion needs degree >= 1, got {p}.")
        if p.leading != 1:
            raise exceptions.NotMonicException(f"Companion needs a monic polynomial, got {p}.")
        n = p.degree
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            if i > 0:
                rows[i][i - 1] = 1
            rows[i][n - 1] = -p.coeffs[i]
        return Mat.from_rows(rows)

    def jordan_block(self, eigenvalue, size):
        rows = [[eigenvalue if i == j else (1 if j == i + 1 else 0) for j in range(size)]
                for i in range(size)]
        return Mat.from_rows(rows)

    def block_diagonal(self, blocks):
        """Assemble square blocks along the diagonal"""
        blocks = list(blocks)
        n = sum(b.rows for b in blocks)
        exact = all(b.exact for b in blocks)
        rows = [[0] * n for _ in range(n)]
        offset = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    rows[offset + i][offset + j] = b.data[i, j]
            offset += b.rows
        return Mat.from_rows(rows, None if exact else Backend.FLOAT)

    def jordan_matrix(self, jf):
        return self.block_diagonal(self.jordan_block(v, s) for v, s in jf.blocks)

    def reconstruct(self, jf):
        """P J P^-1"""
        inverse = self.workbench.matrix.inverse(jf.passage)
        return jf.passage @ self.jordan_matrix(jf) @ inverse

    @square_matrix('m')
    def jordan_form(self, m, cluster_tol=None):
        """Jordan structure from the rank sequence rank((A - lambda)^j).

           Exact matrices whose eigenvalues are all rational get exact ranks
           and an exact passage matrix. Everything else clusters numerical
           eigenvalues by single linkage and uses SVD ranks.

           :param Mat m: Square matrix
           :param float cluster_tol: Relative clustering tolerance, scaled by
                                     max(1, |A|) Default(workbench.cluster_tol)
           :return JordanForm: Blocks and passage matrix
        """
        cluster_tol = self.workbench.cluster_tol if cluster_tol is None else cluster_tol
        if m.exact:
            eigenvalues = self._rational_eigenvalues(m)
            if eigenvalues is not None:
                return self._assemble(m, eigenvalues, exact=True, rank_tol=None)
            self.logger.info("Eigenvalues aren't all rational, using the numerical Jordan path")
        eigenvalues = self._clustered_eigenvalues(m, cluster_tol)
        return self._assemble(m.to_float(), eigenvalues, exact=False,
                              rank_tol=max(cluster_tol, 1e-8))

    def _rational_eigenvalues(self, m):
        """Exact (eigenvalue, multiplicity) pairs, or None if some are irrational"""
        d = _lcm_of_denominators(m)
        numeric = numpy.linalg.eigvals(m.to_float().data)
        guesses = list(numeric)
        for value, _ in self.workbench.poly.cluster_roots(guesses, 0.5 / d):
            guesses.append(value)
        char = self.workbench.poly.char_poly(m)
        found = {}
        for g in guesses:
            if abs(g.imag) > 0.5 / d:
                continue
            candidate = Fraction(int(round(float(g.real) * d)), d)
            if candidate in found or char(candidate) != 0:
                continue
            multiplicity, derived = 0, char
            while derived(candidate) == 0:
                multiplicity += 1
                derived = derived.derivative()
            found[candidate] = multiplicity
        if sum(found.values()) != m.rows:
            return None
        return [(v.numerator if v.denominator == 1 else v, k) for v, k in sorted(found.items())]

    def _clustered_eigenvalues(self, m, cluster_tol):
        scale = cluster_tol * max(1.0, m.norm())
        values = list(numpy.linalg.eigvals(m.to_float().data))
        clusters = []
        for v in values:
            touching = [c for c in clusters if any(abs(v - w) <= scale for w in c)]
            merged = [v]
            for c in touching:
                merged.extend(c)
                clusters.remove(c)
            clusters.append(merged)
        for i, a in enumerate(clusters):
            for b in clusters[i + 1:]:
                gap = min(abs(x - y) for x in a for y in b)
                if gap <= 10 * scale:
                    msg = (f"Eigenvalue clusters near {numpy.mean(a):.6g} and "
                           f"{numpy.mean(b):.6g} are {gap:.3g} apart, under 10x the "
                           f"clustering tolerance {scale:.3g}.")
                    raise exceptions.ClusterSeparationException(msg)
        result = [(complex(numpy.mean(c)), len(c)) for c in clusters]
        self.logger.debug(f"Eigenvalue clusters: {result}")
        return sorted(result, key=lambda c: (c[0].real, c[0].imag))

    def _assemble(self, m, eigenvalues, exact, rank_tol):
        matrix = self.workbench.matrix
        n = m.rows
        identity = Mat.identity(n, m.backend if exact else Backend.FLOAT)
        blocks, columns = [], []
        for value, multiplicity in eigenvalues:
            shifted = m - identity.scale(value)
            powers = [identity]
            for _ in range(multiplicity):
                powers.append(powers[-1] @ shifted)
            ranks = [matrix.rank(p, rank_tol) for p in powers]
            if n - ranks[-1] != multiplicity:
                msg = (f"Rank sequence {ranks} at eigenvalue {value} doesn't match "
                       f"its multiplicity {multiplicity}.")
                raise exceptions.ClusterSeparationException(msg)
            at_least = [ranks[j - 1] - ranks[j] for j in range(1, multiplicity + 1)]
            counts = {j: at_least[j - 1] - (at_least[j] if j < multiplicity else 0)
                      for j in range(1, multiplicity + 1)}
            kernels = [self._kernel(p, exact, rank_tol) for p in powers]
            tops = []
            for length in range(multiplicity, 0, -1):
                if not counts[length]:
                    continue
                span = list(kernels[length - 1])
                for top, top_length in tops:
                    span.append(self._apply_power(shifted, top, top_length - length))
                for candidate in kernels[length]:
                    if len([t for t in tops if t[1] == length]) == counts[length]:
                        break
                    if self._rank(span + [candidate], exact, rank_tol) > self._rank(span, exact, rank_tol):
                        span.append(candidate)
                        tops.append((candidate, length))
            for top, length in tops:
                chain = [self._apply_power(shifted, top, k) for k in range(length - 1, -1, -1)]
                columns.extend(chain)
                blocks.append((value, length))
        if len(columns) != n:
            msg = f"Found {len(columns)} Jordan chain vectors for a {n}x{n} matrix."
            raise exceptions.ClusterSeparationException(msg)
        self.logger.debug(f"Jordan blocks: {blocks}")
        rows = [[col[i] for col in columns] for i in range(n)]
        passage = Mat.from_rows(rows, None if exact else Backend.FLOAT)
        return JordanForm(blocks=tuple(blocks), passage=passage)

    def _kernel(self, mat, exact, rank_tol):
        if exact:
            return self.workbench.matrix.nullspace(mat)
        basis = scipy.linalg.null_space(mat.data, rcond=rank_tol)
        return [basis[:, i] for i in range(basis.shape[1])]

    def _apply_power(self, shifted, vector, k):
        v = numpy.array(vector, dtype=shifted.data.dtype)
        for _ in range(k):
            v = shifted.data @ v
        return list(v)

    def _rank(self, vectors, exact, rank_tol):
        if not vectors:
            return 0
        mat = Mat.from_rows(vectors, None if exact else Backend.FLOAT)
        return self.workbench.matrix.rank(mat, rank_tol)

    def jordan_expm(self, jf):
        """Exponential through the Jordan form, block by block.

           A size s block gives e^lambda times the upper triangular Toeplitz
           matrix with first row 1, 1, 1/2!, ..., 1/(s-1)!.
        """
        pieces = []
        for value, size in jf.blocks:
            scale = complex(numpy.exp(complex(value)))
            rows = [[scale / math.factorial(j - i) if j >= i else 0 for j in range(size)]
                    for i in range(size)]
            pieces.append(Mat.from_rows(rows, Backend.FLOAT))
        p = jf.passage.to_float()
        return p @ self.block_diagonal(pieces) @ self.workbench.matrix.inverse(p)

    @square_matrix('m')
    def cayley_hamilton_residual(self, m):
        """Frobenius norm of P_A(A), P_A the characteristic polynomial

           :return float: 0.0 exactly on exact backends
        """
        char = self.workbench.poly.char_poly(m)
        identity = Mat.identity(m.rows, m.backend)
        result = Mat.zeros(m.rows, m.rows, m.backend)
        for c in reversed(char.coeffs):
            result = result @ m + identity.scale(c)
        return result.norm()
