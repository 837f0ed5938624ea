#! /usr/bin/env python
"""Tests for Workbench"""

import logging

import pytest

from advlin.ensembles import Ensembles
from advlin.factor import Factor
from advlin.graphs import Graphs
from advlin.jordan import Jordan
from advlin.matcore import MatCore
from advlin.partitions import Partitions
from advlin.polyroots import PolyRoots
from advlin.spectra import Spectra
from advlin.structured import Structured
from advlin.workbench import DEFAULT_BUDGETS, Workbench


COMPONENTS = [
    ('matrix', MatCore),
    ('poly', PolyRoots),
    ('spectra', Spectra),
    ('jordan', Jordan),
    ('factor', Factor),
    ('structured', Structured),
    ('graphs', Graphs),
    ('partitions', Partitions),
    ('ensembles', Ensembles),
]


def test_workbench_defaults():
    """
    GIVEN Workbench initialized without arguments
    WHEN the object is created
    THEN the default tolerance, budgets and module logger are used
    """
    workbench = Workbench()
    assert workbench.tol == 1e-10
    assert workbench.budgets == DEFAULT_BUDGETS
    assert workbench.workers == 1
    assert workbench.logger is logging.getLogger('advlin.workbench')


def test_workbench_logger_is_shared(mock_logger):
    """
    GIVEN Workbench initialized with a logger
    WHEN the components are inspected
    THEN each one holds that logger and the workbench
    """
    workbench = Workbench(logger=mock_logger)
    for name, _ in COMPONENTS:
        component = getattr(workbench, name)
        assert component.logger is mock_logger
        assert component.workbench is workbench


def test_workbench_budget_override(mock_logger):
    """
    GIVEN a budget override
    WHEN the Workbench is created
    THEN only that budget changes
    """
    workbench = Workbench(budgets={'partitions': 4}, logger=mock_logger)
    assert workbench.budgets['partitions'] == 4
    assert workbench.budgets['pairings'] == DEFAULT_BUDGETS['pairings']
    assert DEFAULT_BUDGETS['partitions'] == 12


@pytest.mark.parametrize("kwargs", [
    {'tol': 0},
    {'tol': -1e-3},
    {'budgets': {'wick': 0}},
])
def test_workbench_bad_configuration(kwargs):
    """
    GIVEN a non-positive tolerance or budget
    WHEN the Workbench is created
    THEN a ValueError is raised
    """
    with pytest.raises(ValueError):
        Workbench(**kwargs)


@pytest.mark.parametrize("name,cls", COMPONENTS)
def test_component_setter(workbench, name, cls):
    """
    GIVEN a Workbench
    WHEN a component setter is called with a new component
    THEN the component is replaced
    """
    replacement = cls(workbench=workbench, logger=None)
    setattr(workbench, name, replacement)
    assert getattr(workbench, name) is replacement


@pytest.mark.parametrize("name,cls", COMPONENTS)
def test_component_setter_wrong_type(workbench, name, cls):
    """
    GIVEN a Workbench
    WHEN a component setter is called with the wrong type
    THEN a TypeError is raised
    """
    with pytest.raises(TypeError):
        setattr(workbench, name, workbench)
