#! /usr/bin/env python
"""This module acts as an interface for graph Laplacians and spanning trees"""

import itertools
from dataclasses import dataclass

import networkx
import numpy
import scipy.linalg
from networkx.utils import UnionFind

from advlin import exceptions
from advlin.matcore import Backend, Mat
from advlin.spectra import AtomicLaw


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices 1..n, edges stored as sorted pairs"""
    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 1:
            raise exceptions.MalformedInputException(f"A graph needs at least one vertex, got n={self.n}.")
        edges = set()
        for edge in self.edges:
            i, j = (int(v) for v in edge)
            if i == j:
                raise exceptions.MalformedInputException(f"Loop at vertex {i} isn't allowed.")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise exceptions.MalformedInputException(f"Edge {edge} leaves the vertex set 1..{self.n}.")
            edges.add((min(i, j), max(i, j)))
        object.__setattr__(self, 'edges', frozenset(edges))

    @classmethod
    def complete(cls, n):
        return cls(n, frozenset(itertools.combinations(range(1, n + 1), 2)))

    @classmethod
    def empty(cls, n):
        return cls(n, frozenset())

    @classmethod
    def path(cls, n):
        return cls(n, frozenset((i, i + 1) for i in range(1, n)))

    @classmethod
    def cycle(cls, n):
        return cls(n, frozenset((i, i % n + 1) for i in range(1, n + 1)))

    def sorted_edges(self):
        return sorted(self.edges)

    def degree(self, v):
        return sum(1 for e in self.edges if v in e)

    def to_networkx(self):
        g = networkx.Graph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from(self.edges)
        return g


class Graphs(object):

    def __init__(self, workbench, logger):
        """Constructor for Graphs object

            :param workbench.Workbench workbench: An already constructed Workbench object
            :param logging.Logger logger: A pre-configured Python Logger object
        """
        self.workbench = workbench
        self.logger = logger

    def _check_vertex(self, g, v):
        if not 1 <= v <= g.n:
            raise exceptions.InvalidParameterException(f"Vertex {v} isn't in 1..{g.n}.")

    def adjacency(self, g):
        rows = [[0] * g.n for _ in range(g.n)]
        for i, j in g.edges:
            rows[i - 1][j - 1] = rows[j - 1][i - 1] = 1
        return Mat.from_rows(rows, Backend.INTEGER)

    def laplacian(self, g):
        """L = v - d, valence minus adjacency"""
        d = self.adjacency(g)
        v = Mat.diag([g.degree(i) for i in range(1, g.n + 1)], Backend.INTEGER)
        return v - d

    def incidence_matrix(self, g):
        """n x |E| matrix with +1 at the lower and -1 at the higher endpoint; L = E E^t"""
        edges = g.sorted_edges()
        if not edges:
            raise exceptions.ShapeException("A graph without edges has no incidence matrix.")
        rows = [[0] * len(edges) for _ in range(g.n)]
        for k, (i, j) in enumerate(edges):
            rows[i - 1][k] = 1
            rows[j - 1][k] = -1
        return Mat.from_rows(rows, Backend.INTEGER)

    def loop_count(self, g, base, k):
        """Closed walks of length k at base, the entry (d^k)_(base, base)"""
        self._check_vertex(g, base)
        if k < 0:
            raise exceptions.InvalidParameterException(f"Walk length must be >= 0, got {k}.")
        return int((self.adjacency(g) ** k).entry(base, base))

    def loop_measure(self, g, base):
        """Measure sum_i U_(base,i)^2 delta_(lambda_i) from d = U D U^t

           Its k-th moment is loop_count(g, base, k).
        """
        self._check_vertex(g, base)
        values, vectors = scipy.linalg.eigh(self.adjacency(g).to_float().data.real)
        pairs = [(float(values[i]), float(vectors[base - 1, i] ** 2)) for i in range(g.n)]
        return AtomicLaw.weighted(pairs, self.workbench.merge_tol)

    def spectrum(self, g):
        return [float(v) for v in scipy.linalg.eigvalsh(self.adjacency(g).to_float().data.real)]

    def laplacian_spectrum(self, g):
        return [float(v) for v in scipy.linalg.eigvalsh(self.laplacian(g).to_float().data.real)]

    def cofactor(self, g, i, j):
        """Signed cofactor (-1)^(i+j) det(L with row i and column j removed)"""
        self._check_vertex(g, i)
        self._check_vertex(g, j)
        if g.n == 1:
            return 1
        minor = self.laplacian(g).submatrix(i, j)
        return (-1) ** (i + j) * self.workbench.matrix.det(minor)

    def spanning_tree_count(self, g):
        """Number of spanning trees, any cofactor of the Laplacian"""
        count = self.cofactor(g, 1, 1)
        self.logger.debug(f"Spanning trees of a {g.n}-vertex graph: {count}")
        return count

    def spanning_tree_bruteforce(self, g):
        """Count (n-1)-edge subsets that are acyclic, hence spanning trees.

           :raises BudgetExceededException: over the 'bruteforce_edges' budget
        """
        limit = self.workbench.budgets['bruteforce_edges']
        if len(g.edges) > limit:
            msg = f"Brute-force tree count limited to {limit} edges, got {len(g.edges)}."
            raise exceptions.BudgetExceededException(msg)
        edges = g.sorted_edges()
        count = 0
        for subset in itertools.combinations(edges, g.n - 1):
            forest = UnionFind(range(1, g.n + 1))
            acyclic = True
            for i, j in subset:
                if forest[i] == forest[j]:
                    acyclic = False
                    break
                forest.union(i, j)
            count += acyclic
        return count

    def component_count(self, g):
        """dim ker L by exact rank, checked against a union-find traversal"""
        by_rank = g.n - self.workbench.matrix.rank(self.laplacian(g))
        forest = UnionFind(range(1, g.n + 1))
        for i, j in g.edges:
            forest.union(i, j)
        by_traversal = len(list(forest.to_sets()))
        if by_rank != by_traversal:
            msg = f"Kernel dimension {by_rank} disagrees with {by_traversal} components."
            raise exceptions.AdvlinException(msg)
        return by_rank

    def harmonic_basis(self, g):
        """Indicator vectors of the connected components, a basis of ker L"""
        basis = []
        for component in sorted(networkx.connected_components(g.to_networkx()), key=min):
            basis.append([1 if v in component else 0 for v in range(1, g.n + 1)])
        return basis

    def quadratic_form(self, g, f):
        """<L f, f> computed exactly"""
        if len(f) != g.n:
            raise exceptions.ShapeException(f"Vector of length {len(f)} on a {g.n}-vertex graph.")
        lap = self.laplacian(g)
        vector = numpy.array(list(f), dtype=object)
        return sum(vector * (lap.data @ vector))

    def edge_energy(self, g, f):
        """sum over edges of (f_i - f_j)^2"""
        return sum((f[i - 1] - f[j - 1]) ** 2 for i, j in g.edges)
