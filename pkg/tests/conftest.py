#! /usr/bin/env python
"""Base fixtures for unit tests"""

from mock import Mock

import numpy
import pytest

from advlin.graphs import Graph
from advlin.matcore import Mat
from advlin.workbench import Workbench


@pytest.fixture
def mock_logger():
    """Logger mock, to check what gets logged"""
    return Mock()


@pytest.fixture
def workbench(mock_logger):
    """Workbench with default tolerances and a mocked logger"""
    return Workbench(seed=1234, logger=mock_logger)


@pytest.fixture
def rng():
    return numpy.random.default_rng(20240601)


@pytest.fixture
def int_matrix():
    """An invertible integer matrix, det = -3"""
    return Mat.from_rows([[2, 1, 0], [1, 1, 1], [0, 1, -1]])


@pytest.fixture
def hermitian_matrix():
    return Mat.from_rows([[2, 1j, 0], [-1j, 2, 0], [0, 0, 5]])


@pytest.fixture
def nilpotent_block():
    """Single Jordan block of size 3 at eigenvalue 2"""
    return Mat.from_rows([[2, 1, 0], [0, 2, 1], [0, 0, 2]])


@pytest.fixture
def k4():
    return Graph.complete(4)


@pytest.fixture
def two_triangles():
    """Two disjoint triangles on 6 vertices"""
    return Graph(6, frozenset([(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]))
