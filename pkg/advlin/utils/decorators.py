#! /usr/bin/env python
"""Decorator utilities"""

import inspect

import wrapt

from advlin import exceptions


def square_matrix(arg):
    @wrapt.decorator
    def wrapper(func, instance, args, kwargs):
        all_args = inspect.getcallargs(func, *args, **kwargs)
        m = all_args[arg]
        if m.rows != m.cols:
            msg = (f"{func.__name__} needs a square matrix, got {arg} of "
                   f"shape {m.rows}x{m.cols}.")
            raise exceptions.ShapeException(msg)
        return func(*args, **kwargs)
    return wrapper


def within_budget(arg, budget):
    @wrapt.decorator
    def wrapper(func, instance, args, kwargs):
        all_args = inspect.getcallargs(func, *args, **kwargs)
        limit = all_args['self'].workbench.budgets[budget]
        value = all_args[arg]
        size = value if isinstance(value, int) else len(value)
        if size > limit:
            msg = (f"{func.__name__}: {arg}={size} is over the '{budget}' "
                   f"budget of {limit}.")
            raise exceptions.BudgetExceededException(msg)
        return func(*args, **kwargs)
    return wrapper


def positive_parameter(arg):
    @wrapt.decorator
    def wrapper(func, instance, args, kwargs):
        all_args = inspect.getcallargs(func, *args, **kwargs)
        value = all_args[arg]
        if not value > 0:
            msg = f"{func.__name__}: {arg} must be positive, got {value}."
            raise exceptions.InvalidParameterException(msg)
        return func(*args, **kwargs)
    return wrapper


def same_ground_set(*names):
    @wrapt.decorator
    def wrapper(func, instance, args, kwargs):
        all_args = inspect.getcallargs(func, *args, **kwargs)
        sizes = {all_args[name].k for name in names}
        if len(sizes) > 1:
            msg = (f"{func.__name__}: partitions {', '.join(names)} live on "
                   f"different ground sets {sorted(sizes)}.")
            raise exceptions.ShapeException(msg)
        return func(*args, **kwargs)
    return wrapper
