#! /usr/bin/env python
"""Tests for the argument-checking decorators"""

from mock import Mock
import pytest

from advlin import exceptions
from advlin.matcore import Mat
from advlin.partitions import SetPartition
from advlin.utils.decorators import positive_parameter, same_ground_set, square_matrix, within_budget


class Decorated(object):

    def __init__(self, budgets):
        self.workbench = Mock(budgets=budgets)

    @square_matrix('m')
    def trace(self, m):
        return m.trace()

    @within_budget('k', 'partitions')
    def count(self, k):
        return k

    @within_budget('word', 'pairings')
    def length(self, word):
        return len(word)

    @positive_parameter('t')
    def scale(self, t, x=1):
        return t * x

    @same_ground_set('a', 'b')
    def pair(self, a, b):
        return a.k


@pytest.fixture
def decorated():
    return Decorated({'partitions': 4, 'pairings': 3})


def test_square_matrix(decorated):
    """
    GIVEN a square and a rectangular matrix
    WHEN a square_matrix-decorated method is called
    THEN the square one goes through and the other raises ShapeException
    """
    assert decorated.trace(Mat.from_rows([[1, 2], [3, 4]])) == 5
    with pytest.raises(exceptions.ShapeException):
        decorated.trace(m=Mat.from_rows([[1, 2, 3]]))


def test_within_budget(decorated):
    """
    GIVEN sizes at and over the budget, as ints and as sequences
    WHEN within_budget-decorated methods are called
    THEN sizes at the budget pass and larger ones raise BudgetExceededException
    """
    assert decorated.count(4) == 4
    assert decorated.length('oo*') == 3
    with pytest.raises(exceptions.BudgetExceededException):
        decorated.count(5)
    with pytest.raises(exceptions.BudgetExceededException):
        decorated.length('oo**')


@pytest.mark.parametrize("t", [0, -1, -0.5])
def test_positive_parameter(decorated, t):
    """
    GIVEN a non-positive parameter
    WHEN a positive_parameter-decorated method is called
    THEN an InvalidParameterException is raised
    """
    with pytest.raises(exceptions.InvalidParameterException):
        decorated.scale(t)


def test_positive_parameter_passes(decorated):
    """
    GIVEN a positive parameter passed by keyword
    WHEN the method is called
    THEN the call goes through
    """
    assert decorated.scale(x=3, t=2) == 6


def test_same_ground_set(decorated):
    """
    GIVEN partitions of 2 and of 3 points
    WHEN a same_ground_set-decorated method is called
    THEN matching sizes pass and different ones raise ShapeException
    """
    assert decorated.pair(SetPartition((1, 1)), SetPartition((1, 2))) == 2
    with pytest.raises(exceptions.ShapeException):
        decorated.pair(SetPartition((1, 1)), SetPartition((1, 2, 1)))
