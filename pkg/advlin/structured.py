#! /usr/bin/env python
"""This module acts as an interface for Fourier, circulant and Hadamard matrices"""

import collections
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy

from advlin import exceptions
from advlin.matcore import Backend, Mat
from advlin.utils.decorators import positive_parameter, square_matrix, within_budget


HADAMARD_KINDS = ('walsh', 'paley1', 'paley2', 'williamson')
SCAN_CHUNK = 1 << 16


@dataclass(frozen=True)
class CirculantSymbol:
    """First row xi of the circulant matrix M_ij = xi_(j-i mod N)"""
    xi: tuple

    def __post_init__(self):
        if len(self.xi) < 1:
            raise exceptions.ShapeException("A circulant symbol needs at least one entry.")
        object.__setattr__(self, 'xi', tuple(self.xi))

    @property
    def n(self):
        return len(self.xi)


@dataclass(frozen=True)
class SignMatrix:
    """Square matrix with entries in {+1, -1}"""
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.entries)
        if any(len(r) != len(rows) for r in rows):
            raise exceptions.ShapeException("Sign matrices are square.")
        if any(v not in (1, -1) for r in rows for v in r):
            raise exceptions.MalformedInputException("Sign matrix entries must be +1 or -1.")
        object.__setattr__(self, 'entries', rows)

    @classmethod
    def from_mat(cls, m):
        return cls(tuple(tuple(complex(v).real for v in row) for row in m.data))

    @classmethod
    def from_text(cls, text):
        """Parse rows of '+' and '-' characters, one row per line"""
        lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
        try:
            return cls(tuple(tuple({'+': 1, '-': -1}[c] for c in line) for line in lines))
        except KeyError as ex:
            raise exceptions.MalformedInputException(f"Unexpected sign character {ex}.") from ex

    @property
    def n(self):
        return len(self.entries)

    def to_mat(self):
        return Mat.from_rows(self.entries, Backend.INTEGER)

    def to_text(self):
        return "\n".join("".join('+' if v > 0 else '-' for v in row) for row in self.entries)


@dataclass(frozen=True)
class BistochasticReport:
    row_sums: tuple
    col_sums: tuple
    is_bistochastic: bool
    common_sum: object
    unitary_consistent: object = None


def _set_condition_holds(signs):
    """Rows of signs whose circulant matrix is Hadamard.

       With S the set of -1 positions, circulant(gamma) is Hadamard exactly
       when |S cap (S + k)| = |S| - N/4 for every shift k != 0.
    """
    n = signs.shape[1]
    s = (signs < 0).astype(numpy.int64)
    size = s.sum(axis=1)
    ok = numpy.ones(signs.shape[0], dtype=bool)
    for k in range(1, n // 2 + 1):
        overlap = (s * numpy.roll(s, -k, axis=1)).sum(axis=1)
        ok &= 4 * overlap == 4 * size - n
    return signs[ok]


def _scan_chunk(n, start, stop):
    codes = numpy.arange(start, stop, dtype=numpy.int64)
    bits = (codes[:, None] >> numpy.arange(n, dtype=numpy.int64)) & 1
    signs = 1 - 2 * bits
    return [tuple(int(v) for v in row) for row in _set_condition_holds(signs)]


class Structured(object):

    def __init__(self, workbench, logger):
        """Constructor for Structured object

            :param workbench.Workbench workbench: An already constructed Workbench object
            :param logging.Logger logger: A pre-configured Python Logger object
        """
        self.workbench = workbench
        self.logger = logger

    @positive_parameter('n')
    def fourier_matrix(self, n):
        """F_N = (w^ij), w = exp(2 pi i / N), indices 0..N-1"""
        exponents = numpy.outer(numpy.arange(n), numpy.arange(n)) % n
        return Mat(numpy.exp(2j * numpy.pi * exponents / n))

    def group_fourier(self, factors):
        """F_N1 x ... x F_Ns, the Fourier matrix of Z_N1 x ... x Z_Ns"""
        factors = list(factors)
        if not factors:
            raise exceptions.InvalidParameterException("group_fourier needs at least one factor.")
        result = self.fourier_matrix(factors[0])
        for n in factors[1:]:
            result = result.kron(self.fourier_matrix(n))
        return result

    def circulant(self, sym):
        n = sym.n
        rows = [[sym.xi[(j - i) % n] for j in range(n)] for i in range(n)]
        return Mat.from_rows(rows)

    def circulant_diagonalize(self, sym):
        """Fourier diagonalization M = (1/N) F diag(q) F*.

           :param CirculantSymbol sym: First row of M
           :return tuple: (q as a tuple, reconstruction residual)
        """
        n = sym.n
        xi = numpy.array([complex(v) for v in sym.xi])
        q = numpy.fft.ifft(xi) * n
        f = self.fourier_matrix(n).data
        rebuilt = f @ numpy.diag(q) @ f.conj().T / n
        residual = float(numpy.linalg.norm(rebuilt - self.circulant(sym).to_float().data))
        return tuple(complex(v) for v in q), residual

    def flat_matrix(self, n):
        """P_N = all-ones / N"""
        return Mat.from_rows([[Fraction(1, n)] * n for _ in range(n)], Backend.RATIONAL)

    def k_matrix(self, n):
        """K_N = (2 all-ones - N) / N, orthogonal and bistochastic"""
        rows = [[Fraction(2 - n if i == j else 2, n) for j in range(n)] for i in range(n)]
        return Mat.from_rows(rows, Backend.RATIONAL)

    @square_matrix('m')
    def is_hadamard(self, m, kind='real', tol=None):
        """Hadamard test, exact for real sign matrices.

           :param Mat m: Square matrix
           :param str kind: 'real' (entries +-1, H H^t = N exactly) or
                            'complex' (|entries| = 1, H H* = N within tol)
        """
        n = m.rows
        if kind == 'real':
            values = [complex(v) for v in m.data.flat]
            if any(v not in (1, -1) for v in values):
                return False
            h = Mat.from_rows([[int(complex(v).real) for v in row] for row in m.data],
                              Backend.INTEGER)
            return h @ h.transpose() == Mat.identity(n).scale(n)
        if kind != 'complex':
            raise exceptions.InvalidParameterException(f"Unknown Hadamard kind {kind}.")
        tol = self.workbench.tol if tol is None else tol
        data = m.to_float().data
        if numpy.max(numpy.abs(numpy.abs(data) - 1)) > tol:
            return False
        return numpy.linalg.norm(data @ data.conj().T - n * numpy.eye(n)) <= tol * n

    def walsh(self, k):
        """W_2^(x k), size 2^k"""
        if k < 1:
            raise exceptions.InvalidParameterException(f"Walsh order must be >= 1, got {k}.")
        w2 = Mat.from_rows([[1, 1], [1, -1]])
        result = w2
        for _ in range(k - 1):
            result = result.kron(w2)
        return SignMatrix.from_mat(result)

    def _require_prime(self, q, residue):
        poly = self.workbench.poly
        if not poly.is_prime(q) or q % 4 != residue:
            msg = f"q={q} must be a prime congruent to {residue} mod 4."
            raise exceptions.InvalidParameterException(msg)

    def paley_q_matrix(self, q):
        """Q_ab = chi(b - a), chi the quadratic character mod the odd prime q"""
        if q < 3 or not self.workbench.poly.is_prime(q):
            raise exceptions.InvalidParameterException(f"q={q} must be an odd prime.")
        chi = self.workbench.poly.legendre_symbol
        return Mat.from_rows([[chi(b - a, q) for b in range(q)] for a in range(q)],
                             Backend.INTEGER)

    def paley1(self, q):
        """Skew Hadamard matrix of size q + 1, for a prime q = 3 mod 4"""
        self._require_prime(q, 3)
        qm = self.paley_q_matrix(q).data
        n = q + 1
        rows = [[1] * n]
        for a in range(q):
            rows.append([-1] + [int(qm[a, b]) + (1 if a == b else 0) for b in range(q)])
        return SignMatrix(tuple(tuple(r) for r in rows))

    def paley2(self, q):
        """Symmetric Hadamard matrix of size 2q + 2, for a prime q = 1 mod 4"""
        self._require_prime(q, 1)
        qm = self.paley_q_matrix(q)
        core = [[0] + [1] * q] + [[1] + [int(v) for v in qm.data[a]] for a in range(q)]
        f = Mat.from_rows([[1, 1], [1, -1]])
        g = Mat.from_rows([[1, -1], [-1, -1]])
        result = Mat.from_rows(core).kron(f) + Mat.identity(q + 1).kron(g)
        return SignMatrix.from_mat(result)

    def williamson(self, a, b, c, d):
        """Williamson Hadamard matrix of size 4K.

           :param CirculantSymbol a: First rows of symmetric circulant +-1
                                     matrices A, B, C, D with
                                     A^2 + B^2 + C^2 + D^2 = 4K
           :return SignMatrix: [[A,B,C,D],[-B,A,-D,C],[-C,D,A,-B],[-D,-C,B,A]]
        """
        symbols = {'A': a, 'B': b, 'C': c, 'D': d}
        sizes = {s.n for s in symbols.values()}
        if len(sizes) != 1:
            raise exceptions.WilliamsonConditionException(f"Williamson blocks differ in size: {sizes}.")
        k = sizes.pop()
        blocks = {}
        for name, sym in symbols.items():
            if any(v not in (1, -1) for v in sym.xi):
                raise exceptions.WilliamsonConditionException(f"{name} has entries other than +-1.")
            if any(sym.xi[i] != sym.xi[(-i) % k] for i in range(k)):
                raise exceptions.WilliamsonConditionException(f"{name} isn't symmetric: {name}^t != {name}.")
            blocks[name] = self.circulant(sym)
        total = sum((m @ m for m in blocks.values()), Mat.zeros(k, k))
        if total != Mat.identity(k).scale(4 * k):
            msg = f"A^2 + B^2 + C^2 + D^2 != {4 * k}*1 (got {total.tolist()})."
            raise exceptions.WilliamsonConditionException(msg)
        A, B, C, D = (blocks[n] for n in 'ABCD')
        layout = [[A, B, C, D], [-B, A, -D, C], [-C, D, A, -B], [-D, -C, B, A]]
        rows = []
        for block_row in layout:
            for i in range(k):
                rows.append([int(blk.data[i, j]) for blk in block_row for j in range(k)])
        return SignMatrix(tuple(tuple(r) for r in rows))

    def hadamard_construct(self, kind, *args):
        """Dispatch to walsh(k), paley1(q), paley2(q) or williamson(A, B, C, D)"""
        if kind not in HADAMARD_KINDS:
            raise exceptions.InvalidParameterException(f"Unknown construction {kind}, expected one of {HADAMARD_KINDS}.")
        result = getattr(self, kind)(*args)
        self.logger.debug(f"Built {kind}{args} Hadamard matrix of size {result.n}")
        return result

    def f4q_family(self, q, tol=None):
        """The one-parameter deformation of W_4 by a unit-modulus q"""
        tol = self.workbench.tol if tol is None else tol
        q = complex(q)
        if abs(abs(q) - 1) > tol:
            raise exceptions.InvalidParameterException(f"|q| must be 1, got |{q}| = {abs(q)}.")
        return Mat.from_rows([[1, 1, 1, 1], [1, -1, 1, -1], [1, q, -1, -q], [1, -q, -1, q]],
                             Backend.FLOAT)

    def dephase(self, m):
        """Scale rows and columns by unit-modulus factors so row 1 and column 1 are all 1"""
        data = m.to_float().data
        cols = data[0, :]
        scaled = data / cols[numpy.newaxis, :]
        rows = scaled[:, 0]
        return Mat(scaled / rows[:, numpy.newaxis])

    def hadamard_equivalent(self, a, b):
        """Whether two real sign matrices differ by row/column permutations and sign flips.

           Every row of a is tried as the one mapped onto the all-ones row of
           the column-normalized b; columns are then matched one at a time,
           pruning as soon as the multisets of sign-normalized row prefixes
           differ.
        """
        limit = self.workbench.budgets['hadamard_equivalence']
        if a.n != b.n:
            return False
        if a.n > limit:
            raise exceptions.BudgetExceededException(f"Equivalence search limited to N <= {limit}, got {a.n}.")
        n = a.n
        target = numpy.array(b.entries) * numpy.array(b.entries[0])[numpy.newaxis, :]
        source = numpy.array(a.entries)

        def prefixes(mat, cols):
            signs = mat[:, cols[0]][:, numpy.newaxis] if cols else 1
            return collections.Counter(tuple(r) for r in (mat[:, cols] * signs).tolist())

        goal = [prefixes(target, list(range(c))) for c in range(n + 1)]

        def extend(mat, chosen):
            if len(chosen) == n:
                return True
            for col in range(n):
                if col in chosen:
                    continue
                trial = chosen + [col]
                if prefixes(mat, trial) == goal[len(trial)] and extend(mat, trial):
                    return True
            return False

        for r in range(n):
            normalized = source * source[r][numpy.newaxis, :]
            if extend(normalized, []):
                return True
        return False

    @within_budget('n', 'circulant_search')
    def circulant_hadamard_search(self, n, exhaustive=False):
        """All sign vectors gamma whose circulant matrix is Hadamard.

           The default scan only visits vectors with (sum gamma)^2 = N, which
           every circulant Hadamard matrix satisfies since its row sums are
           all equal. exhaustive=True walks all 2^N vectors, split over
           workbench.workers processes.

           :param int n: Size N
           :return list: Solutions as tuples of +-1, sorted
        """
        if n < 1:
            raise exceptions.InvalidParameterException(f"N must be positive, got {n}.")
        if n > 2 and n % 4:
            self.logger.info(f"No Hadamard matrix of size {n}: 4 doesn't divide it")
            return []
        if exhaustive:
            found = self._scan_all(n)
        else:
            found = []
            for size in range(n + 1):
                if (n - 2 * size) ** 2 != n:
                    continue
                for positions in itertools.combinations(range(n), size):
                    signs = [1] * n
                    for p in positions:
                        signs[p] = -1
                    found.append(tuple(signs))
            if found:
                found = [tuple(int(v) for v in row)
                         for row in _set_condition_holds(numpy.array(found))]
        self.logger.info(f"Circulant Hadamard search at N={n}: {len(found)} solutions")
        return sorted(found)

    def _scan_all(self, n):
        total = 1 << n
        chunks = [(start, min(start + SCAN_CHUNK, total)) for start in range(0, total, SCAN_CHUNK)]
        if self.workbench.workers > 1 and len(chunks) > 1:
            with ProcessPoolExecutor(max_workers=self.workbench.workers) as pool:
                results = pool.map(_scan_chunk, [n] * len(chunks),
                                   [c[0] for c in chunks], [c[1] for c in chunks])
                return [v for part in results for v in part]
        return [v for start, stop in chunks for v in _scan_chunk(n, start, stop)]

    @square_matrix('m')
    def bistochastic_check(self, m, tol=None):
        """Row and column sums, and whether they all agree.

           For unitary input, a common row sum of modulus 1 must force equal
           column sums; unitary_consistent records that check.
        """
        tol = self.workbench.tol if tol is None else tol
        if m.exact:
            rows = tuple(sum(r) for r in m.data)
            cols = tuple(sum(c) for c in m.data.T)
            same = len(set(rows + cols)) == 1
        else:
            rows = tuple(complex(v) for v in m.data.sum(axis=1))
            cols = tuple(complex(v) for v in m.data.sum(axis=0))
            same = max(abs(v - rows[0]) for v in rows + cols) <= tol
        consistent = None
        if self.workbench.spectra.is_unitary(m, tol):
            row_stochastic = max(abs(complex(v) - complex(rows[0])) for v in rows) <= tol
            consistent = (not row_stochastic or abs(abs(complex(rows[0])) - 1) > tol or same)
        return BistochasticReport(row_sums=rows, col_sums=cols, is_bistochastic=same,
                                  common_sum=rows[0] if same else None,
                                  unitary_consistent=consistent)

    def hadamard_determinant_ratio(self, h):
        """(det H)^2 / N^N, exactly 1 for Hadamard matrices"""
        det = abs(self.workbench.matrix.det(h.to_mat()))
        return Fraction(det * det, h.n ** h.n)
