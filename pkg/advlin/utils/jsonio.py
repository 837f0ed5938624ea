#! /usr/bin/env python
"""JSON encoding of matrices, polynomials, graphs and partitions"""

import json
from fractions import Fraction

import numpy

from advlin import exceptions
from advlin.graphs import Graph
from advlin.matcore import Backend, Mat, Perm
from advlin.partitions import SetPartition
from advlin.polyroots import Poly


def encode_scalar(value):
    """Exact values become decimal strings ('3', '-2/5'), floats [re, im]"""
    if isinstance(value, (bool, numpy.bool_)):
        return bool(value)
    if isinstance(value, (int, numpy.integer, Fraction)):
        return str(value)
    z = complex(value)
    return [z.real, z.imag]


def decode_scalar(value):
    if isinstance(value, str):
        try:
            v = Fraction(value)
        except (ValueError, ZeroDivisionError) as ex:
            raise exceptions.MalformedInputException(f"Bad exact entry {value!r}.") from ex
        return v.numerator if v.denominator == 1 else v
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise exceptions.MalformedInputException(f"Complex entries are [re, im], got {value!r}.")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    raise exceptions.MalformedInputException(f"Can't decode entry {value!r}.")


def mat_to_json(m):
    return {"rows": m.rows, "cols": m.cols,
            "data": [[encode_scalar(v) for v in row] for row in m.data]}


def mat_from_json(obj):
    try:
        rows = [[decode_scalar(v) for v in row] for row in obj["data"]]
        declared = (int(obj.get("rows", len(rows))), int(obj.get("cols", len(rows[0]) if rows else 0)))
    except (KeyError, TypeError, AttributeError, IndexError) as ex:
        raise exceptions.MalformedInputException(f"Not a matrix object: {ex}") from ex
    if (len(rows), len(rows[0]) if rows else 0) != declared or any(len(r) != declared[1] for r in rows):
        raise exceptions.MalformedInputException(f"Matrix data doesn't match its declared shape {declared}.")
    exact = all(not isinstance(v, complex) for r in rows for v in r)
    return Mat.from_rows(rows, None if exact else Backend.FLOAT)


def poly_to_json(p):
    return {"coeffs": [encode_scalar(c) for c in p.coeffs]}


def poly_from_json(obj):
    try:
        coeffs = [decode_scalar(c) for c in obj["coeffs"]]
    except (KeyError, TypeError) as ex:
        raise exceptions.MalformedInputException(f"Not a polynomial object: {ex}") from ex
    if any(isinstance(c, complex) for c in coeffs):
        coeffs = [complex(c) for c in coeffs]
    return Poly(tuple(coeffs))


def graph_to_json(g):
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_json(obj):
    try:
        return Graph(int(obj["n"]), frozenset(tuple(e) for e in obj["edges"]))
    except (KeyError, TypeError, ValueError) as ex:
        raise exceptions.MalformedInputException(f"Not an edge-list object: {ex}") from ex


def to_jsonable(value):
    """Recursively turn library results into JSON-ready structures"""
    if isinstance(value, Mat):
        return mat_to_json(value)
    if isinstance(value, Poly):
        return poly_to_json(value)
    if isinstance(value, Graph):
        return graph_to_json(value)
    if isinstance(value, SetPartition):
        return str(value)
    if isinstance(value, Perm):
        return list(value.images)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, numpy.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if value is None or isinstance(value, (str, bool, int, float)):
        return value
    if isinstance(value, numpy.integer):
        return int(value)
    if isinstance(value, numpy.floating):
        return float(value)
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return encode_scalar(value)


def load(path):
    """Read a JSON file

       :param str path: File to read
       :raises MalformedInputException: if the file isn't valid JSON
    """
    if not path:
        raise exceptions.MalformedInputException("No input file given.")
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as ex:
        raise exceptions.MalformedInputException(f"{path} isn't valid JSON: {ex}") from ex
    except OSError as ex:
        raise exceptions.MalformedInputException(f"Can't read {path}: {ex}") from ex


def dumps(value):
    """Stable serialization, so identical runs give byte-identical output"""
    return json.dumps(to_jsonable(value), sort_keys=True, separators=(",", ":"))
