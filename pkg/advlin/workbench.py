#! /usr/bin/env python
"""This module acts as the entry point to every advlin component"""

import logging

from advlin.ensembles import Ensembles
from advlin.factor import Factor
from advlin.graphs import Graphs
from advlin.jordan import Jordan
from advlin.matcore import MatCore
from advlin.partitions import Partitions
from advlin.polyroots import PolyRoots
from advlin.spectra import Spectra
from advlin.structured import Structured


DEFAULT_BUDGETS = {
    'permutation_det': 6,
    'partitions': 12,
    'pairings': 16,
    'wick': 12,
    'tensor_n': 5,
    'tensor_legs': 6,
    'circulant_search': 28,
    'bruteforce_edges': 24,
    'hadamard_equivalence': 8,
}


class Workbench(object):
    """Holds the shared configuration and wires the components together"""

    def __init__(self, tol=1e-10, cluster_tol=1e-6, merge_tol=1e-8,
                 root_cluster_tol=1e-6, seed=None, budgets=None, workers=1,
                 logger=None):
        """Constructor for Workbench object

            :param float tol: Default absolute tolerance Default(1e-10)
            :param float cluster_tol: Relative eigenvalue clustering tolerance
                                      for Jordan structure Default(1e-6)
            :param float merge_tol: Atom merging tolerance for spectral laws
                                    Default(1e-8)
            :param float root_cluster_tol: Relative tolerance for reporting
                                           root multiplicities Default(1e-6)
            :param int seed: Master seed for the sampling routines Default(None)
            :param dict budgets: Overrides for the size budgets Default(None)
            :param int workers: Worker processes for parallel scans Default(1)
            :param logging.Logger logger: A pre-configured Python Logger object
        """
        if tol <= 0:
            raise ValueError(f"Tolerance must be positive, got {tol}")
        self.tol = tol
        self.cluster_tol = cluster_tol
        self.merge_tol = merge_tol
        self.root_cluster_tol = root_cluster_tol
        self.seed = seed
        self.workers = workers
        self.budgets = dict(DEFAULT_BUDGETS)
        self.budgets.update(budgets or {})
        if any(v <= 0 for v in self.budgets.values()):
            raise ValueError(f"Budgets must be positive, got {self.budgets}")
        self._setup_logger(logger)

        self.matrix = MatCore(workbench=self, logger=self.logger)
        self.poly = PolyRoots(workbench=self, logger=self.logger)
        self.spectra = Spectra(workbench=self, logger=self.logger)
        self.jordan = Jordan(workbench=self, logger=self.logger)
        self.factor = Factor(workbench=self, logger=self.logger)
        self.structured = Structured(workbench=self, logger=self.logger)
        self.graphs = Graphs(workbench=self, logger=self.logger)
        self.partitions = Partitions(workbench=self, logger=self.logger)
        self.ensembles = Ensembles(workbench=self, logger=self.logger)

    def _setup_logger(self, logger):
        """Set up a pre-configured logger or create a new one

            :param logging.Logger logger: A pre-configured Python Logger object
        """
        if logger:
            self.logger = logger
        else:
            self.logger = logging.getLogger(__name__)

    @property
    def matrix(self):
        """Return object for determinants, permutations and ranks"""
        return self._matrix

    @matrix.setter
    def matrix(self, new_matrix):
        if not isinstance(new_matrix, MatCore):
            raise TypeError("Matrix must be a MatCore object.")
        self._matrix = new_matrix

    @property
    def poly(self):
        """Return object for polynomial roots, resultants and discriminants"""
        return self._poly

    @poly.setter
    def poly(self, new_poly):
        if not isinstance(new_poly, PolyRoots):
            raise TypeError("Poly must be a PolyRoots object.")
        self._poly = new_poly

    @property
    def spectra(self):
        """Return object for eigendecompositions and functional calculus"""
        return self._spectra

    @spectra.setter
    def spectra(self, new_spectra):
        if not isinstance(new_spectra, Spectra):
            raise TypeError("Spectra must be a Spectra object.")
        self._spectra = new_spectra

    @property
    def jordan(self):
        """Return object for companion matrices and Jordan forms"""
        return self._jordan

    @jordan.setter
    def jordan(self, new_jordan):
        if not isinstance(new_jordan, Jordan):
            raise TypeError("Jordan must be a Jordan object.")
        self._jordan = new_jordan

    @property
    def factor(self):
        """Return object for triangular factorizations"""
        return self._factor

    @factor.setter
    def factor(self, new_factor):
        if not isinstance(new_factor, Factor):
            raise TypeError("Factor must be a Factor object.")
        self._factor = new_factor

    @property
    def structured(self):
        """Return object for Fourier, circulant and Hadamard matrices"""
        return self._structured

    @structured.setter
    def structured(self, new_structured):
        if not isinstance(new_structured, Structured):
            raise TypeError("Structured must be a Structured object.")
        self._structured = new_structured

    @property
    def graphs(self):
        """Return object for graph Laplacians and spanning trees"""
        return self._graphs

    @graphs.setter
    def graphs(self, new_graphs):
        if not isinstance(new_graphs, Graphs):
            raise TypeError("Graphs must be a Graphs object.")
        self._graphs = new_graphs

    @property
    def partitions(self):
        """Return object for partition lattices and Weingarten calculus"""
        return self._partitions

    @partitions.setter
    def partitions(self, new_partitions):
        if not isinstance(new_partitions, Partitions):
            raise TypeError("Partitions must be a Partitions object.")
        self._partitions = new_partitions

    @property
    def ensembles(self):
        """Return object for random matrices and limit laws"""
        return self._ensembles

    @ensembles.setter
    def ensembles(self, new_ensembles):
        if not isinstance(new_ensembles, Ensembles):
            raise TypeError("Ensembles must be an Ensembles object.")
        self._ensembles = new_ensembles
