#! /usr/bin/env python
"""This module acts as an interface for univariate polynomials and their roots"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy

from advlin import exceptions
from advlin.matcore import Backend, Mat, infer_backend
from advlin.utils.decorators import square_matrix


def _normalize(value, exact):
    if exact:
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        return int(value)
    return complex(value)


@dataclass(frozen=True, eq=False)
class Poly:
    """Univariate polynomial, coefficients in ascending degree.

       Integer and Fraction coefficients keep the polynomial exact, anything
       else stores complex floats.
    """
    coeffs: tuple

    def __post_init__(self):
        coeffs = list(self.coeffs) or [0]
        exact = infer_backend(coeffs).exact
        coeffs = [_normalize(c, exact) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    @classmethod
    def from_roots(cls, roots, leading=1):
        result = cls((leading,))
        for r in roots:
            result = result * cls((-r, 1))
        return result

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    @property
    def exact(self):
        return infer_backend(self.coeffs).exact

    def is_zero(self):
        return self.coeffs == (0,) or self.coeffs == (0j,)

    def is_real(self, tol=0.0):
        return self.exact or all(abs(complex(c).imag) <= tol for c in self.coeffs)

    def evaluate(self, x):
        result = 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    __call__ = evaluate

    def derivative(self):
        if self.degree == 0:
            return Poly((0,))
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def monic(self):
        lead = self.leading
        if self.exact:
            return Poly(tuple(Fraction(c, 1) / lead for c in self.coeffs))
        return Poly(tuple(c / lead for c in self.coeffs))

    def shift(self, h):
        """Coefficients of x -> p(x + h)"""
        result = Poly((0,))
        for c in reversed(self.coeffs):
            result = result * Poly((h, 1)) + Poly((c,))
        return result

    def to_float(self):
        return Poly(tuple(complex(c) for c in self.coeffs))

    def to_exact(self):
        """Exact copy of a polynomial with real float coefficients"""
        if self.exact:
            return self
        if not self.is_real():
            raise exceptions.MalformedInputException(f"{self} has non-real coefficients.")
        return Poly(tuple(Fraction(complex(c).real) for c in self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(tuple(c * other for c in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


@dataclass(frozen=True)
class RootClass:
    """Real/complex root count of a real polynomial of degree 2 to 4"""
    degree: int
    discriminant: object
    n_real: int
    n_complex: int

    @property
    def label(self):
        if self.n_complex == 0:
            return f"{self.n_real} real"
        if self.n_real == 0:
            return f"{self.n_complex} complex"
        return f"{self.n_real} real, {self.n_complex} complex"


def _cbrt(z):
    return complex(z) ** (1.0 / 3.0)


CUBE_ROOTS_OF_UNITY = (1, cmath.exp(2j * cmath.pi / 3), cmath.exp(4j * cmath.pi / 3))


class PolyRoots(object):

    def __init__(self, workbench, logger):
        """Constructor for PolyRoots object

            :param workbench.Workbench workbench: An already constructed Workbench object
            :param logging.Logger logger: A pre-configured Python Logger object
        """
        self.workbench = workbench
        self.logger = logger

    def _require_degree(self, p, minimum, name='p'):
        if p.degree < minimum or (minimum > 0 and p.is_zero()):
            msg = f"Polynomial {name}={p} must have degree >= {minimum}."
            raise exceptions.DegreeException(msg)

    def sylvester_matrix(self, p, q):
        """Sylvester matrix of p (degree k) and q (degree l).

           Column j < l holds the coefficients of p, highest first, shifted
           down by j; column l + j holds those of q shifted down by j.

           :param Poly p: Polynomial of degree k >= 1
           :param Poly q: Polynomial of degree l >= 1
           :return Mat: (k+l)x(k+l) matrix
        """
        self._require_degree(p, 1, 'p')
        self._require_degree(q, 1, 'q')
        k, l = p.degree, q.degree
        size = k + l
        rows = [[0] * size for _ in range(size)]
        for j in range(l):
            for i, c in enumerate(reversed(p.coeffs)):
                rows[i + j][j] = c
        for j in range(k):
            for i, c in enumerate(reversed(q.coeffs)):
                rows[i + j][l + j] = c
        return Mat.from_rows(rows)

    def resultant(self, p, q):
        """Resultant R(p, q), vanishing exactly when p and q share a root"""
        return self.workbench.matrix.det(self.sylvester_matrix(p, q))

    def discriminant(self, p):
        """Discriminant (-1)^C(N,2) / a * R(p, p'), through the resultant

           :param Poly p: Polynomial of degree N >= 2
        """
        self._require_degree(p, 2)
        n = p.degree
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        r = self.resultant(p, p.derivative())
        if p.exact:
            value = Fraction(sign * r) / p.leading
            return value.numerator if value.denominator == 1 else value
        return complex(sign * r / p.leading)

    def discriminant_closed_form(self, p):
        """Textbook discriminant formulas for degrees 2 and 3"""
        if p.degree == 2:
            c, b, a = p.coeffs
            return b * b - 4 * a * c
        if p.degree == 3:
            d, c, b, a = p.coeffs
            return (b * b * c * c - 4 * a * c ** 3 - 4 * b ** 3 * d
                    - 27 * a * a * d * d + 18 * a * b * c * d)
        msg = f"Closed-form discriminant only for degree 2 and 3, got {p.degree}."
        raise exceptions.DegreeException(msg)

    def classify_real_roots(self, p, tol=None):
        """Count real and non-real roots of a real polynomial from its discriminant.

           Degree 4 with a positive discriminant is decided numerically
           between 'all real' and 'all complex'.

           :param Poly p: Real polynomial of degree 2, 3 or 4
           :param float tol: Degeneracy threshold on |discriminant|
           :return RootClass: The classification
        """
        tol = self.workbench.tol if tol is None else tol
        if not p.is_real():
            raise exceptions.InvalidParameterException(f"{p} has non-real coefficients.")
        if p.degree not in (2, 3, 4):
            raise exceptions.DegreeException(f"Classification covers degrees 2-4, got {p.degree}.")
        delta = self.discriminant(p)
        value = complex(delta).real
        if abs(value) <= tol:
            msg = f"Discriminant {value} within {tol} of 0, classification withheld."
            raise exceptions.DegenerateException(msg)
        n = p.degree
        if n == 2:
            n_real = 2 if value > 0 else 0
        elif n == 3:
            n_real = 3 if value > 0 else 1
        elif value < 0:
            n_real = 2
        else:
            scale = max(abs(complex(c)) for c in p.coeffs)
            found = self.roots(p)
            n_real = sum(1 for x in found if abs(x.imag) <= 1e-7 * (1 + scale))
            n_real = 4 if n_real >= 2 else 0
        self.logger.debug(f"Discriminant {value} of {p}: {n_real} real roots")
        return RootClass(degree=n, discriminant=delta, n_real=n_real,
                         n_complex=n - n_real)

    def solve_cubic(self, p, q):
        """Cardano: the three roots of x^3 + 3px + 2q.

           x = w*u + w^2*v with u^3 + v^3 = -2q and u*v = -p, w running over
           the cube roots of unity.
        """
        p, q = complex(p), complex(q)
        s = cmath.sqrt(p ** 3 + q ** 2)
        u3 = -q + s if abs(-q + s) >= abs(-q - s) else -q - s
        u = _cbrt(u3)
        if u == 0:
            return [0j, 0j, 0j]
        v = -p / u
        return [w * u + w * w * v for w in CUBE_ROOTS_OF_UNITY]

    def _quartic_resolvent(self, p, q, r):
        a = p * p + r
        b = p ** 3 - 3 * p * r + q * q
        s = cmath.sqrt(b * b - a ** 3)
        t3 = b + s if abs(b + s) >= abs(b - s) else b - s
        t = _cbrt(t3)
        if t == 0:
            return [p]
        return [t * w + p + a / (t * w) for w in CUBE_ROOTS_OF_UNITY]

    def solve_quartic(self, p, q, r):
        """The four roots of x^4 + 6px^2 + 4qx + 3r.

           Uses the resolvent y = t + p + a/t, t = cbrt(b + sqrt(b^2 - a^3)),
           a = p^2 + r, b = p^3 - 3pr + q^2, then splits into two quadratics.
           q = 0 is solved as a quadratic in x^2.
        """
        p, q, r = complex(p), complex(q), complex(r)
        if q == 0:
            roots = []
            for z in self._quadratic(1, 6 * p, 3 * r):
                root = cmath.sqrt(z)
                roots.extend([root, -root])
            return roots
        candidates = self._quartic_resolvent(p, q, r)
        y = max(candidates, key=lambda c: abs(2 * c - 6 * p))
        if y is not candidates[0]:
            self.logger.info(f"Quartic resolvent re-branched for p={p}, q={q}, r={r}")
        s = cmath.sqrt(2 * y - 6 * p)
        roots = list(self._quadratic(1, s, y - 2 * q / s))
        roots.extend(self._quadratic(1, -s, y + 2 * q / s))
        return roots

    def _quadratic(self, a, b, c):
        d = cmath.sqrt(b * b - 4 * a * c)
        return ((-b + d) / (2 * a), (-b - d) / (2 * a))

    def depress(self, p):
        """Reduce a cubic or quartic to the Cardano normal form.

           The shift x = y + h with h = -b/(N a) removes the second-highest
           term; the remaining coefficients are read as x^3 + 3px + 2q or
           x^4 + 6px^2 + 4qx + 3r.

           :param Poly p: Polynomial of degree 3 or 4
           :return tuple: (parameters, h) with parameters (p, q) or (p, q, r)
        """
        n = p.degree
        if n not in (3, 4):
            raise exceptions.DegreeException(f"Only cubics and quartics depress, got degree {n}.")
        monic = p.monic()
        one = Fraction(1) if monic.exact else 1.0
        h = -monic.coeffs[n - 1] * one / n
        c = tuple(v * one for v in monic.shift(h).coeffs) + (0,) * 5
        if n == 3:
            return (c[1] / 3, c[0] / 2), h
        return (c[2] / 6, c[1] / 4, c[0] / 3), h

    def solve_general(self, p):
        """Closed-form roots of any polynomial of degree 1 to 4"""
        self._require_degree(p, 1)
        n = p.degree
        if n > 4:
            raise exceptions.DegreeException(f"No closed form for degree {n}.")
        monic = p.to_float().monic()
        if n == 1:
            return [-monic.coeffs[0]]
        if n == 2:
            return list(self._quadratic(1, monic.coeffs[1], monic.coeffs[0]))
        params, h = self.depress(monic)
        if n == 3:
            found = self.solve_cubic(*params)
        else:
            found = self.solve_quartic(*params)
        return [x + h for x in found]

    @square_matrix('m')
    def char_poly(self, m):
        """Characteristic polynomial det(A - x) in ascending coefficients.

           Exact backends interpolate det(A - x) at x = 0..N exactly, floats
           go through numpy.poly.
        """
        n = m.rows
        if not m.exact:
            coeffs = numpy.poly(m.data)[::-1] * (-1) ** n
            return Poly(tuple(coeffs))
        xs = list(range(n + 1))
        ys = [self.workbench.matrix.det(m - Mat.identity(n, m.backend).scale(x))
              for x in xs]
        return self._interpolate(xs, ys)

    def _interpolate(self, xs, ys):
        result = Poly((0,))
        for i, (xi, yi) in enumerate(zip(xs, ys)):
            basis = Poly((Fraction(yi),))
            for j, xj in enumerate(xs):
                if j != i:
                    basis = basis * Poly((Fraction(-xj, xi - xj), Fraction(1, xi - xj)))
            result = result + basis
        return result

    def roots(self, p):
        """All roots with multiplicity, from the companion matrix eigenvalues"""
        if p.is_zero():
            raise exceptions.DegreeException("The zero polynomial has no root multiset.")
        self._require_degree(p, 1)
        companion = self.workbench.jordan.companion(p.to_float().monic())
        values = numpy.linalg.eigvals(companion.data)
        return sorted((complex(v) for v in values), key=lambda z: (z.real, z.imag))

    def residual(self, p, x):
        """Scaled residual |p(x)| / (max|coeff| (1+|x|)^N)"""
        scale = max(abs(complex(c)) for c in p.coeffs)
        return abs(p.to_float()(complex(x))) / (scale * (1 + abs(x)) ** p.degree)

    def cluster_roots(self, values, rel_tol=None):
        """Group numerically equal roots, as (mean value, multiplicity) pairs.

           Single linkage: two values join when they are within
           rel_tol * max(1, |value|).
        """
        rel_tol = self.workbench.root_cluster_tol if rel_tol is None else rel_tol
        clusters = []
        for v in values:
            home = None
            for cluster in clusters:
                if any(abs(v - w) <= rel_tol * max(1.0, abs(w)) for w in cluster):
                    home = cluster
                    break
            if home is None:
                clusters.append([v])
            else:
                home.append(v)
        return [(sum(c) / len(c), len(c)) for c in clusters]

    @square_matrix('m')
    def diagonalizable_by_discriminant(self, m, tol=None):
        """True when the characteristic polynomial has a nonzero discriminant.

           A nonzero discriminant means distinct eigenvalues and hence a
           diagonalizable matrix; a zero one is inconclusive and returns False.
        """
        if m.rows == 1:
            return True
        delta = self.discriminant(self.char_poly(m))
        if m.exact:
            return delta != 0
        tol = self.workbench.tol if tol is None else tol
        return abs(delta) > tol

    def legendre_symbol(self, a, q):
        """Quadratic character of a modulo the odd prime q (Euler's criterion)"""
        a %= q
        if a == 0:
            return 0
        return 1 if pow(a, (q - 1) // 2, q) == 1 else -1

    def is_prime(self, q):
        if q < 2:
            return False
        return all(q % d for d in range(2, math.isqrt(q) + 1))
