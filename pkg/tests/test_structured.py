#! /usr/bin/env python
"""Tests for Structured"""

from fractions import Fraction

import numpy
import pytest

from advlin import exceptions
from advlin.matcore import Mat
from advlin.structured import CirculantSymbol, SignMatrix


def test_fourier_matrix_is_complex_hadamard(workbench):
    """
    GIVEN N = 1 to 6
    WHEN the Fourier matrix is built
    THEN it is a complex Hadamard matrix
    """
    for n in range(1, 7):
        f = workbench.structured.fourier_matrix(n)
        assert workbench.structured.is_hadamard(f, kind='complex')


def test_fourier_matrix_refuses_zero(workbench):
    """
    GIVEN N = 0
    WHEN fourier_matrix is called
    THEN an InvalidParameterException is raised
    """
    with pytest.raises(exceptions.InvalidParameterException):
        workbench.structured.fourier_matrix(0)


def test_group_fourier(workbench):
    """
    GIVEN Z_2 x Z_2
    WHEN the group Fourier matrix is built
    THEN it matches W_4 up to rounding and is complex Hadamard
    """
    f = workbench.structured.group_fourier([2, 2])
    assert f.allclose(workbench.structured.walsh(2).to_mat(), 1e-12)
    assert workbench.structured.is_hadamard(f, kind='complex')


def test_circulant(workbench):
    """
    GIVEN the symbol (1, 2, 3)
    WHEN the circulant matrix is built
    THEN row i is the symbol shifted right by i
    """
    c = workbench.structured.circulant(CirculantSymbol((1, 2, 3)))
    assert c == Mat.from_rows([[1, 2, 3], [3, 1, 2], [2, 3, 1]])


def test_circulant_diagonalize(workbench):
    """
    GIVEN the symbol (1, 2, 3, 4)
    WHEN the circulant is diagonalized through F_4
    THEN the reconstruction is accurate and q_0 is the sum of the symbol
    """
    q, residual = workbench.structured.circulant_diagonalize(CirculantSymbol((1, 2, 3, 4)))
    assert residual < 1e-12
    assert q[0] == pytest.approx(10)


def test_circulant_symbol_empty():
    """
    GIVEN an empty symbol
    WHEN a CirculantSymbol is built
    THEN a ShapeException is raised
    """
    with pytest.raises(exceptions.ShapeException):
        CirculantSymbol(())


def test_flat_and_k_matrices(workbench):
    """
    GIVEN N = 3 and N = 4
    WHEN the flat and K matrices are built
    THEN P_N is an exact projection and K_N is exactly orthogonal
    """
    structured = workbench.structured
    p = structured.flat_matrix(4)
    assert p @ p == p
    k = structured.k_matrix(3)
    assert k @ k.transpose() == Mat.identity(3)


def test_bistochastic_k_matrix(workbench):
    """
    GIVEN K_3
    WHEN bistochastic_check is called
    THEN every row and column sums to 1 and the unitary check passes
    """
    report = workbench.structured.bistochastic_check(workbench.structured.k_matrix(3))
    assert report.is_bistochastic
    assert report.common_sum == 1
    assert report.unitary_consistent is True


def test_bistochastic_fourier(workbench):
    """
    GIVEN F_3
    WHEN bistochastic_check is called
    THEN the first row sums to 3 and the others to 0, so it isn't bistochastic
    """
    report = workbench.structured.bistochastic_check(workbench.structured.fourier_matrix(3))
    assert not report.is_bistochastic
    assert report.common_sum is None
    assert report.row_sums[0] == pytest.approx(3)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_walsh(workbench, k):
    """
    GIVEN k = 1 to 4
    WHEN the Walsh matrix is built
    THEN it is a 2^k real Hadamard matrix attaining the determinant bound
    """
    w = workbench.structured.walsh(k)
    assert w.n == 2 ** k
    assert workbench.structured.is_hadamard(w.to_mat())
    assert workbench.structured.hadamard_determinant_ratio(w) == 1


@pytest.mark.parametrize("q", [3, 7, 11])
def test_paley1(workbench, q):
    """
    GIVEN primes q = 3 mod 4
    WHEN the first Paley construction is used
    THEN H is Hadamard of size q + 1 and H - I is skew
    """
    h = workbench.structured.paley1(q).to_mat()
    assert h.rows == q + 1
    assert workbench.structured.is_hadamard(h)
    skew = h - Mat.identity(q + 1)
    assert skew.transpose() == -skew


@pytest.mark.parametrize("q", [5, 13])
def test_paley2(workbench, q):
    """
    GIVEN primes q = 1 mod 4
    WHEN the second Paley construction is used
    THEN H is a symmetric Hadamard matrix of size 2q + 2
    """
    h = workbench.structured.paley2(q).to_mat()
    assert h.rows == 2 * q + 2
    assert workbench.structured.is_hadamard(h)
    assert h.transpose() == h


def test_paley_wrong_residue(workbench):
    """
    GIVEN q = 5 for the first construction and q = 7 for the second
    WHEN they are called
    THEN InvalidParameterException is raised both times
    """
    with pytest.raises(exceptions.InvalidParameterException):
        workbench.structured.paley1(5)
    with pytest.raises(exceptions.InvalidParameterException):
        workbench.structured.paley2(7)
    with pytest.raises(exceptions.InvalidParameterException):
        workbench.structured.paley_q_matrix(9)


def test_williamson(workbench):
    """
    GIVEN A = J_3 and B = C = D = 2I - J_3, as symmetric circulants
    WHEN the Williamson construction is used
    THEN a 12x12 Hadamard matrix comes back
    """
    a = CirculantSymbol((1, 1, 1))
    b = CirculantSymbol((1, -1, -1))
    h = workbench.structured.williamson(a, b, b, b)
    assert h.n == 12
    assert workbench.structured.is_hadamard(h.to_mat())


def test_williamson_conditions(workbench):
    """
    GIVEN a non-symmetric block and blocks failing the sum of squares
    WHEN williamson is called
    THEN WilliamsonConditionException is raised
    """
    structured = workbench.structured
    ones = CirculantSymbol((1, 1, 1))
    with pytest.raises(exceptions.WilliamsonConditionException):
        structured.williamson(ones, ones, ones, CirculantSymbol((1, 1, -1)))
    with pytest.raises(exceptions.WilliamsonConditionException):
        structured.williamson(ones, ones, ones, ones)
    with pytest.raises(exceptions.WilliamsonConditionException):
        structured.williamson(ones, ones, ones, CirculantSymbol((1,)))


def test_hadamard_construct_dispatch(workbench):
    """
    GIVEN each construction name
    WHEN hadamard_construct is called
    THEN the matching matrix is built, and an unknown name is refused
    """
    structured = workbench.structured
    assert structured.hadamard_construct('walsh', 3).n == 8
    assert structured.hadamard_construct('paley1', 7).n == 8
    assert structured.hadamard_construct('paley2', 5).n == 12
    with pytest.raises(exceptions.InvalidParameterException):
        structured.hadamard_construct('sylvester', 2)


def test_is_hadamard_rejects(workbench):
    """
    GIVEN the all-ones matrix and a matrix with a 2 in it
    WHEN is_hadamard is called
    THEN both are rejected
    """
    structured = workbench.structured
    assert not structured.is_hadamard(Mat.from_rows([[1, 1], [1, 1]]))
    assert not structured.is_hadamard(Mat.from_rows([[1, 2], [1, -1]]))
    assert not structured.is_hadamard(structured.fourier_matrix(3))


def test_f4q_family(workbench):
    """
    GIVEN unit-modulus q
    WHEN the deformed F_4 is built
    THEN it is complex Hadamard, and |q| != 1 is refused
    """
    structured = workbench.structured
    for q in (1, 1j, numpy.exp(0.3j)):
        assert structured.is_hadamard(structured.f4q_family(q), kind='complex', tol=1e-9)
    with pytest.raises(exceptions.InvalidParameterException):
        structured.f4q_family(2)


def test_dephase(workbench):
    """
    GIVEN W_2 with its first column negated
    WHEN dephase is called
    THEN the first row and column are all ones and W_2 comes back
    """
    m = Mat.from_rows([[-1, 1], [-1, -1]])
    result = workbench.structured.dephase(m)
    assert result.allclose(Mat.from_rows([[1, 1], [1, -1]]), 1e-12)


@pytest.mark.parametrize("n,expected", [(1, 2), (2, 0), (4, 8), (8, 0), (12, 0), (16, 0)])
def test_circulant_hadamard_search(workbench, n, expected):
    """
    GIVEN small N
    WHEN circulant Hadamard sign vectors are searched for
    THEN only N = 1 and N = 4 have solutions, 2 and 8 of them
    """
    assert len(workbench.structured.circulant_hadamard_search(n)) == expected


def test_circulant_hadamard_search_exhaustive(workbench):
    """
    GIVEN N = 4 and N = 8
    WHEN the exhaustive scan is used
    THEN it agrees with the pruned scan
    """
    structured = workbench.structured
    for n in (4, 8):
        assert structured.circulant_hadamard_search(n, exhaustive=True) == \
            structured.circulant_hadamard_search(n)


def test_circulant_hadamard_solutions(workbench):
    """
    GIVEN the N = 4 solutions
    WHEN their circulant matrices are built
    THEN each is Hadamard, and (1, 1, 1, -1) is among them
    """
    structured = workbench.structured
    solutions = structured.circulant_hadamard_search(4)
    assert (1, 1, 1, -1) in solutions
    for gamma in solutions:
        assert structured.is_hadamard(structured.circulant(CirculantSymbol(gamma)))


def test_circulant_hadamard_search_budget(workbench):
    """
    GIVEN N above the circulant_search budget
    WHEN the search is called
    THEN a BudgetExceededException is raised
    """
    with pytest.raises(exceptions.BudgetExceededException):
        workbench.structured.circulant_hadamard_search(32)


def test_hadamard_equivalent(workbench):
    """
    GIVEN Hadamard matrices of sizes 4 and 8 from different constructions
    WHEN hadamard_equivalent is called
    THEN they are equivalent, and W_4 isn't equivalent to a non-Hadamard matrix
    """
    structured = workbench.structured
    assert structured.hadamard_equivalent(structured.walsh(2), structured.paley1(3))
    assert structured.hadamard_equivalent(structured.walsh(3), structured.paley1(7))
    ones = SignMatrix(tuple((1,) * 4 for _ in range(4)))
    assert not structured.hadamard_equivalent(structured.walsh(2), ones)
    assert not structured.hadamard_equivalent(structured.walsh(2), structured.walsh(1))


def test_hadamard_equivalent_budget(workbench):
    """
    GIVEN 16x16 matrices
    WHEN hadamard_equivalent is called
    THEN a BudgetExceededException is raised
    """
    w = workbench.structured.walsh(4)
    with pytest.raises(exceptions.BudgetExceededException):
        workbench.structured.hadamard_equivalent(w, w)


def test_sign_matrix_text():
    """
    GIVEN a +/- drawing of W_2
    WHEN it is parsed and printed back
    THEN the text is unchanged, and other characters are refused
    """
    h = SignMatrix.from_text("++\n+-\n")
    assert h.entries == ((1, 1), (1, -1))
    assert h.to_text() == "++\n+-"
    with pytest.raises(exceptions.MalformedInputException):
        SignMatrix.from_text("+x\n++")


def test_hadamard_determinant_ratio(workbench):
    """
    GIVEN a non-Hadamard sign matrix
    WHEN the determinant ratio is computed
    THEN it is (det H)^2 / N^N, below 1
    """
    h = SignMatrix(((1, 1), (1, 1)))
    assert workbench.structured.hadamard_determinant_ratio(h) == Fraction(0)
