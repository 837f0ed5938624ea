#! /usr/bin/env python
"""This module acts as an interface for set-partition combinatorics and Weingarten calculus"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy
from networkx.utils import UnionFind

from advlin import exceptions
from advlin.matcore import Backend, Mat
from advlin.polyroots import Poly
from advlin.utils.decorators import same_ground_set


WHITE = 'o'
BLACK = '*'
CATEGORY_TAGS = ('P', 'P_even', 'P2', 'MatchingP2', 'NC', 'NC2', 'MatchingNC2', 'P_s')
PAIRING_TAGS = ('P2', 'MatchingP2', 'NC2', 'MatchingNC2')

# Category of partitions behind each easy group's Weingarten calculus
GROUP_CATEGORIES = {
    'S': 'P', 'O': 'P2', 'H': 'P_even', 'U': 'MatchingP2',
    'S+': 'NC', 'O+': 'NC2', 'U+': 'MatchingNC2',
}


@dataclass(frozen=True)
class ColoredWord:
    """Word over white (o, the matrix) and black (*, its adjoint) letters"""
    letters: str

    def __post_init__(self):
        table = {'o': WHITE, '∘': WHITE, '*': BLACK, '•': BLACK}
        try:
            letters = "".join(table[c] for c in self.letters)
        except KeyError as ex:
            raise exceptions.MalformedInputException(f"Unknown color {ex} in word {self.letters!r}.") from ex
        object.__setattr__(self, 'letters', letters)

    @classmethod
    def white(cls, k):
        return cls(WHITE * k)

    @classmethod
    def coerce(cls, value):
        """Accept a ColoredWord, a string of colors or a plain length"""
        if isinstance(value, cls):
            return value
        if isinstance(value, int):
            return cls.white(value)
        return cls(value)

    def colors(self):
        """True for white letters"""
        return [c == WHITE for c in self.letters]

    @property
    def n_white(self):
        return self.letters.count(WHITE)

    @property
    def n_black(self):
        return self.letters.count(BLACK)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters


@dataclass(frozen=True)
class SetPartition:
    """Partition of k points as a restricted-growth string.

       Block labels are renumbered by first appearance, starting at 1. When
       upper is set, the first upper points form the top row and the rest the
       bottom row, both read left to right.
    """
    rgs: tuple
    upper: int = None

    def __post_init__(self):
        relabel = {}
        canonical = []
        for label in self.rgs:
            if label not in relabel:
                relabel[label] = len(relabel) + 1
            canonical.append(relabel[label])
        object.__setattr__(self, 'rgs', tuple(canonical))
        if self.upper is not None and not 0 <= self.upper <= len(canonical):
            raise exceptions.ShapeException(f"upper={self.upper} doesn't fit {len(canonical)} points.")

    @classmethod
    def from_blocks(cls, blocks, k=None, upper=None):
        """Build from 1-based blocks, e.g. [[1, 3], [2]]"""
        blocks = [sorted(b) for b in blocks]
        k = sum(len(b) for b in blocks) if k is None else k
        labels = [0] * k
        for label, block in enumerate(blocks, start=1):
            for point in block:
                labels[point - 1] = label
        if 0 in labels:
            raise exceptions.MalformedInputException(f"Blocks {blocks} don't cover 1..{k}.")
        return cls(tuple(labels), upper)

    @classmethod
    def from_string(cls, text, upper=None):
        """Parse a restricted-growth string such as '1121' ('.' separators allowed)"""
        parts = text.split('.') if '.' in text else list(text)
        try:
            return cls(tuple(int(p) for p in parts if p), upper)
        except ValueError as ex:
            raise exceptions.MalformedInputException(f"Bad partition string {text!r}.") from ex

    @property
    def k(self):
        return len(self.rgs)

    @property
    def lower(self):
        return self.k - (self.upper or 0)

    @property
    def n_blocks(self):
        return max(self.rgs, default=0)

    def blocks(self):
        result = [[] for _ in range(self.n_blocks)]
        for point, label in enumerate(self.rgs, start=1):
            result[label - 1].append(point)
        return [tuple(b) for b in result]

    def sort_key(self):
        return (-self.n_blocks, self.rgs)

    def __str__(self):
        sep = '.' if self.n_blocks > 9 else ''
        return sep.join(str(v) for v in self.rgs)


@dataclass(frozen=True)
class Category:
    """Category of partitions; P_s carries its level s, None meaning infinity"""
    tag: str
    s: int = None

    def __post_init__(self):
        if self.tag not in CATEGORY_TAGS:
            raise exceptions.InvalidParameterException(f"Unknown category {self.tag}, expected one of {CATEGORY_TAGS}.")
        if self.tag == 'P_s' and self.s is not None and self.s < 1:
            raise exceptions.InvalidParameterException(f"P_s needs s >= 1, got {self.s}.")

    @classmethod
    def parse(cls, text):
        """'P', 'NC2', 'P_s:3', 'P_s:inf' or a group name such as 'O' or 'U+'"""
        text = GROUP_CATEGORIES.get(text, text)
        if text.startswith('P_s'):
            level = text.partition(':')[2]
            try:
                return cls('P_s', None if level in ('', 'inf') else int(level))
            except ValueError as ex:
                raise exceptions.MalformedInputException(f"Bad P_s level in {text!r}.") from ex
        return cls(text)

    @property
    def pairings_only(self):
        return self.tag in PAIRING_TAGS

    def __str__(self):
        if self.tag == 'P_s':
            return f"P_s:{'inf' if self.s is None else self.s}"
        return self.tag


def _is_noncrossing_sequence(labels):
    for a, b, c, d in itertools.combinations(range(len(labels)), 4):
        if labels[a] == labels[c] and labels[b] == labels[d] and labels[a] != labels[b]:
            return False
    return True


def _set_partitions(k):
    if k == 0:
        yield ()
        return

    def grow(prefix, top):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for label in range(1, top + 2):
            prefix.append(label)
            yield from grow(prefix, max(top, label))
            prefix.pop()

    yield from grow([1], 1)


def _pairings(points):
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for i, partner in enumerate(rest):
        for tail in _pairings(rest[:i] + rest[i + 1:]):
            yield [(first, partner)] + tail


def _falling(n, r):
    result = 1
    for i in range(r):
        result *= n - i
    return result


class Partitions(object):

    def __init__(self, workbench, logger):
        """Constructor for Partitions object

            :param workbench.Workbench workbench: An already constructed Workbench object
            :param logging.Logger logger: A pre-configured Python Logger object
        """
        self.workbench = workbench
        self.logger = logger

    def _category(self, cat):
        return cat if isinstance(cat, Category) else Category.parse(cat)

    def is_noncrossing(self, p):
        """Noncrossing test; two-row partitions are read around the circle"""
        if p.upper is None:
            return _is_noncrossing_sequence(p.rgs)
        top = p.rgs[:p.upper]
        bottom = p.rgs[p.upper:]
        return _is_noncrossing_sequence(top + tuple(reversed(bottom)))

    def belongs(self, p, cat, word=None):
        """Membership of a one-row partition of a (colored) word in a category"""
        cat = self._category(cat)
        word = ColoredWord.coerce(p.k if word is None else word)
        sizes = [len(b) for b in p.blocks()]
        colors = word.colors()
        if cat.tag == 'P':
            return True
        if cat.tag == 'P_even':
            return all(s % 2 == 0 for s in sizes)
        if cat.tag == 'P_s':
            for block in p.blocks():
                balance = sum(1 if colors[i - 1] else -1 for i in block)
                if (balance != 0) if cat.s is None else (balance % cat.s != 0):
                    return False
            return True
        if cat.tag in ('NC', 'NC2', 'MatchingNC2') and not self.is_noncrossing(p):
            return False
        if cat.tag == 'NC':
            return True
        if any(s != 2 for s in sizes):
            return False
        if cat.tag.startswith('Matching'):
            return all(colors[a - 1] != colors[b - 1] for a, b in p.blocks())
        return True

    def enumerate(self, k, cat='P'):
        """All partitions of a k-point (colored) ground set in a category.

           :param k: int or ColoredWord; plain integers mean all-white words
           :param cat: Category or its name Default(P)
           :return list: SetPartition objects, finest first then by RGS
        """
        cat = self._category(cat)
        word = ColoredWord.coerce(k)
        size = len(word)
        budget = 'pairings' if cat.pairings_only else 'partitions'
        limit = self.workbench.budgets[budget]
        if size > limit:
            msg = f"Enumerating {cat} on {size} points is over the '{budget}' budget of {limit}."
            raise exceptions.BudgetExceededException(msg)
        if cat.pairings_only:
            candidates = []
            if size % 2 == 0:
                for pairing in _pairings(list(range(1, size + 1))):
                    candidates.append(SetPartition.from_blocks(pairing, size))
        else:
            candidates = (SetPartition(rgs) for rgs in _set_partitions(size))
        result = [p for p in candidates if self.belongs(p, cat, word)]
        result.sort(key=SetPartition.sort_key)
        self.logger.debug(f"|{cat}({word})| = {len(result)}")
        return result

    def _nonempty(self, k, cat):
        parts = self.enumerate(k, cat)
        if not parts:
            raise exceptions.ShapeException(f"{self._category(cat)} has no partitions of {k}.")
        return parts

    @same_ground_set('a', 'b')
    def join(self, a, b):
        """Smallest partition coarser than both, by superposing the blocks"""
        forest = UnionFind(range(1, a.k + 1))
        for p in (a, b):
            for block in p.blocks():
                forest.union(*block)
        return SetPartition(tuple(forest[i] for i in range(1, a.k + 1)), a.upper)

    @same_ground_set('a', 'b')
    def leq(self, a, b):
        """Refinement order: every block of a sits inside a block of b"""
        return all(len({b.rgs[i - 1] for i in block}) == 1 for block in a.blocks())

    def _interval(self, a, b):
        """All tau with a <= tau <= b, built by merging a's blocks inside b's"""
        a_blocks = a.blocks()
        groups = {}
        for index, block in enumerate(a_blocks):
            groups.setdefault(b.rgs[block[0] - 1], []).append(index)
        per_group = []
        for members in groups.values():
            options = []
            for rgs in _set_partitions(len(members)):
                options.append([(members[i], label) for i, label in enumerate(rgs)])
            per_group.append(options)
        result = []
        for choice in itertools.product(*per_group):
            labels = [0] * a.k
            for g, assignment in enumerate(choice):
                for index, label in assignment:
                    for point in a_blocks[index]:
                        labels[point - 1] = (g, label)
            result.append(SetPartition(tuple(labels)))
        return result

    @same_ground_set('a', 'b')
    def mobius(self, a, b):
        """Mobius function of the partition lattice, by its defining recurrence"""
        if not self.leq(a, b):
            return 0
        interval = sorted(self._interval(a, b), key=SetPartition.sort_key)
        values = {}
        for tau in interval:
            if tau.rgs == a.rgs:
                values[tau] = 1
            else:
                values[tau] = -sum(v for s, v in values.items() if self.leq(s, tau))
        return next(v for tau, v in values.items() if tau.rgs == b.rgs)

    def order_matrix(self, k, cat='P'):
        """A(pi, nu) = 1 if pi <= nu, over D(k) in canonical order"""
        parts = self._nonempty(k, cat)
        rows = [[int(self.leq(p, q)) for q in parts] for p in parts]
        return Mat.from_rows(rows, Backend.INTEGER)

    def mobius_matrix(self, k, cat='P'):
        """M(pi, nu) = mu(pi, nu), filled row by row from the recurrence"""
        parts = self._nonempty(k, cat)
        n = len(parts)
        below = [[self.leq(parts[i], parts[j]) for j in range(n)] for i in range(n)]
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 1
            for j in range(i + 1, n):
                if below[i][j]:
                    rows[i][j] = -sum(rows[i][t] for t in range(i, j) if below[t][j])
        return Mat.from_rows(rows, Backend.INTEGER)

    def gram(self, k, n, cat='P'):
        """G(pi, nu) = N^|pi v nu| over D(k)"""
        if n < 1:
            raise exceptions.InvalidParameterException(f"N must be >= 1, got {n}.")
        parts = self._nonempty(k, cat)
        rows = [[n ** self.join(p, q).n_blocks for q in parts] for p in parts]
        return Mat.from_rows(rows, Backend.INTEGER)

    def gram_factorization(self, k, n):
        """(A, L) with G = A L over P(k), L(pi, nu) = N(N-1)...(N-|pi|+1) [nu <= pi]"""
        parts = self.enumerate(k, 'P')
        a = self.order_matrix(k, 'P')
        rows = [[_falling(n, p.n_blocks) if self.leq(q, p) else 0 for q in parts] for p in parts]
        return a, Mat.from_rows(rows, Backend.INTEGER)

    def gram_det_formula(self, k, n):
        """prod over P(k) of N!/(N-|pi|)!"""
        return math.prod(_falling(n, p.n_blocks) for p in self.enumerate(k, 'P'))

    def weingarten(self, k, n, cat='P'):
        """W = G^-1, exact rational.

           :raises SingularGramException: for N < k or a singular Gram matrix
        """
        size = len(ColoredWord.coerce(k))
        if n < size:
            msg = f"Weingarten matrix refused for N={n} < k={size}; the Gram vectors may be dependent."
            raise exceptions.SingularGramException(msg)
        g = self.gram(k, n, cat)
        try:
            return self.workbench.matrix.inverse(g)
        except exceptions.SingularMatrixException as ex:
            raise exceptions.SingularGramException(f"Gram matrix of {cat} at k={k}, N={n} is singular.") from ex

    def weingarten_integral(self, i, j, n, cat='P', word=None):
        """Haar integral of u_(i1 j1) ... u_(ik jk), exactly.

           sum over pi, nu in D(k) of delta_pi(i) delta_nu(j) W(pi, nu)
        """
        if len(i) != len(j):
            raise exceptions.ShapeException(f"Index tuples {i} and {j} differ in length.")
        k = word if word is not None else len(i)
        parts = self.enumerate(k, cat)
        if not parts:
            return Fraction(0)
        w = self.weingarten(k, n, cat)
        fits_i = [self._delta(p, i) for p in parts]
        fits_j = [self._delta(p, j) for p in parts]
        total = Fraction(0)
        for a, row in enumerate(w.data):
            if fits_i[a]:
                total += sum((v for b, v in enumerate(row) if fits_j[b]), Fraction(0))
        return total

    def _delta(self, p, indices):
        return all(len({indices[x - 1] for x in block}) == 1 for block in p.blocks())

    def truncated_char_moment(self, cat, k, n, s):
        """Tr(W_kN G_ks), the k-th moment of the character truncated to s terms"""
        if not self.enumerate(k, cat):
            return Fraction(0)
        w = self.weingarten(k, n, cat)
        g = self.gram(k, s, cat)
        return Fraction((w @ g).trace())

    def asymptotic_moment(self, cat, k, t=None):
        """sum over D(k) of t^|pi|: the coefficient polynomial, or its value at t"""
        parts = self.enumerate(k, cat)
        coeffs = [0] * (max((p.n_blocks for p in parts), default=0) + 1)
        for p in parts:
            coeffs[p.n_blocks] += 1
        poly = Poly(tuple(coeffs))
        return poly if t is None else poly(t)

    def tpi_map(self, p, n):
        """Matrix of T_pi: e_i -> sum_j delta_pi(i, j) e_j, shape N^lower x N^upper.

           Multi-indices are ordered lexicographically, the leftmost leg most
           significant, so that T_pi (x) T_sigma is numpy.kron.
        """
        if p.upper is None:
            raise exceptions.ShapeException("T_pi needs a two-row partition (set upper).")
        if n > self.workbench.budgets['tensor_n'] or p.k > self.workbench.budgets['tensor_legs']:
            msg = (f"T_pi limited to N <= {self.workbench.budgets['tensor_n']} and "
                   f"{self.workbench.budgets['tensor_legs']} legs, got N={n}, {p.k} legs.")
            raise exceptions.BudgetExceededException(msg)
        data = numpy.zeros((n ** p.lower, n ** p.upper), dtype=object)
        for combined in itertools.product(range(n), repeat=p.k):
            if self._delta(p, combined):
                col = _flatten(combined[:p.upper], n)
                row = _flatten(combined[p.upper:], n)
                data[row, col] = 1
        return Mat(data, Backend.INTEGER)

    def concatenate(self, a, b):
        """Horizontal concatenation [a b]: tops side by side, bottoms side by side"""
        if a.upper is None or b.upper is None:
            raise exceptions.ShapeException("Concatenation needs two-row partitions.")
        shift = a.n_blocks
        top = a.rgs[:a.upper] + tuple(v + shift for v in b.rgs[:b.upper])
        bottom = a.rgs[a.upper:] + tuple(v + shift for v in b.rgs[b.upper:])
        return SetPartition(top + bottom, a.upper + b.upper)

    def compose(self, top, bottom):
        """Stack top over bottom, gluing top's lower row to bottom's upper row.

           :return tuple: (composite partition, number of closed middle loops)
        """
        if top.upper is None or bottom.upper is None or top.lower != bottom.upper:
            raise exceptions.ShapeException(
                f"Can't stack a partition with {top.lower} lower legs over one with {bottom.upper} upper legs.")
        k, middle, m = top.upper, top.lower, bottom.lower
        points = ([('top', x) for x in range(top.k)] + [('bottom', x) for x in range(bottom.k)])
        forest = UnionFind(points)
        for name, p in (('top', top), ('bottom', bottom)):
            for block in p.blocks():
                forest.union(*[(name, x - 1) for x in block])
        for x in range(middle):
            forest.union(('top', k + x), ('bottom', x))
        outer = [('top', x) for x in range(k)] + [('bottom', middle + x) for x in range(m)]
        outer_roots = {forest[pt] for pt in outer}
        loops = {forest[pt] for pt in points} - outer_roots
        composite = SetPartition(tuple(forest[pt] for pt in outer), k)
        return composite, len(loops)

    def involution(self, p):
        """Upside-down turn: the lower row becomes the upper row"""
        if p.upper is None:
            raise exceptions.ShapeException("The involution acts on two-row partitions.")
        return SetPartition(p.rgs[p.upper:] + p.rgs[:p.upper], p.lower)

    def fatten(self, p):
        """Noncrossing partition of k points to a noncrossing pairing of 2k points.

           Each point i becomes the legs 2i-1, 2i; a block b1 < ... < br pairs
           2b_j with 2b_(j+1) - 1 and closes with 2b_r, 2b_1 - 1.
        """
        if not self.is_noncrossing(p):
            raise exceptions.CrossingPartitionException(f"{p} is crossing, fattening needs a noncrossing partition.")
        pairs = []
        for block in p.blocks():
            for x, y in zip(block, block[1:] + block[:1]):
                pairs.append((2 * x, 2 * y - 1))
        return SetPartition.from_blocks(pairs, 2 * p.k)

    def shrink(self, q):
        """Inverse of fatten: collapse each leg pair 2i-1, 2i back to the point i"""
        if q.k % 2 or any(len(b) != 2 for b in q.blocks()) or not self.is_noncrossing(q):
            raise exceptions.CrossingPartitionException(f"{q} isn't a noncrossing pairing.")
        k = q.k // 2
        forest = UnionFind(range(1, k + 1))
        for a, b in q.blocks():
            forest.union((a + 1) // 2, (b + 1) // 2)
        return SetPartition(tuple(forest[i] for i in range(1, k + 1)))

    def catalan(self, k):
        """C_k, from the recurrence C_(k+1) = sum C_a C_b, checked against binom(2k, k)/(k+1)"""
        if k < 0:
            raise exceptions.InvalidParameterException(f"k must be >= 0, got {k}.")
        values = [1]
        for m in range(k):
            values.append(sum(values[a] * values[m - a] for a in range(m + 1)))
        closed = math.comb(2 * k, k) // (k + 1)
        if values[k] != closed:
            raise exceptions.AdvlinException(f"Catalan recurrence gave {values[k]}, closed form {closed}.")
        return values[k]

    def bell(self, k):
        """Bell number |P(k)|, from the Bell triangle"""
        row = [1]
        for _ in range(k):
            nxt = [row[-1]]
            for v in row:
                nxt.append(nxt[-1] + v)
            row = nxt
        return row[0]


def _flatten(indices, n):
    value = 0
    for i in indices:
        value = value * n + i
    return value
