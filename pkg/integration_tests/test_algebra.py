import cmath

import numpy

from advlin.matcore import Mat
from advlin.polyroots import Poly


def _random_poly(rng, degree):
    coeffs = [int(c) for c in rng.integers(-9, 10, size=degree + 1)]
    if coeffs[-1] == 0:
        coeffs[-1] = 1
    return Poly(tuple(coeffs))


def _unit_disk(rng, size):
    radius = numpy.sqrt(rng.random(size))
    return radius * numpy.exp(2j * numpy.pi * rng.random(size))


def test_discriminant_cross_check(workbench, rng):
    poly = workbench.poly
    for i in range(10000):
        p = _random_poly(rng, 2 + i % 2)
        # Resultant path and the textbook formula must agree exactly
        assert poly.discriminant(p) == poly.discriminant_closed_form(p)


def test_cardano_and_quartic_residuals(workbench, rng):
    poly = workbench.poly
    for p, q in _unit_disk(rng, (1000, 2)):
        cubic = Poly((2 * q, 3 * p, 0, 1))
        for x in poly.solve_cubic(p, q):
            assert abs(cubic(x)) <= 1e-8 * (1 + abs(x)) ** 3
    for p, q, r in _unit_disk(rng, (1000, 3)):
        quartic = Poly((3 * r, 4 * q, 6 * p, 0, 1))
        for x in poly.solve_quartic(p, q, r):
            assert abs(quartic(x)) <= 1e-8 * (1 + abs(x)) ** 4


def test_det_of_exponential(workbench, rng):
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        a = Mat(rng.uniform(-1, 1, size=(n, n)))
        det = workbench.matrix.det(workbench.spectra.expm(a))
        expected = cmath.exp(a.trace())
        assert abs(det - expected) <= 1e-10 * abs(expected)


def _match(values, others, tol):
    others = list(others)
    for v in values:
        nearest = min(range(len(others)), key=lambda i: abs(others[i] - v))
        if abs(others[nearest] - v) > tol:
            return False
        others.pop(nearest)
    return True


def test_decomposition_residuals(workbench, rng):
    factor, spectra, matrix = workbench.factor, workbench.spectra, workbench.matrix
    for _ in range(1000):
        n = int(rng.integers(1, 11))
        a = Mat(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
        scale = max(1.0, a.norm())

        d = factor.plu(a)
        assert (matrix.perm_matrix(d.perm) @ a - d.lower @ d.upper).norm() <= 1e-10 * scale

        d = factor.qr(a)
        assert (d.q @ d.r - a).norm() <= 1e-10 * scale

        d = factor.schur(a)
        assert (d.q @ d.t @ d.q.adjoint() - a).norm() <= 1e-10 * scale
        eigenvalues = numpy.linalg.eigvals(a.data)
        assert _match(numpy.diag(d.t.data), eigenvalues, 1e-8 * scale)

        assert (spectra.svd(a).reconstruct() - a).norm() <= 1e-10 * scale

        d = spectra.polar(a)
        assert (d.isometry @ d.modulus - a).norm() <= 1e-10 * scale
