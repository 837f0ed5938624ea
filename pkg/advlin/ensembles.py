#! /usr/bin/env python
"""This module acts as an interface for random matrices, group characters and limit laws"""

import cmath
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy
import scipy.stats

from advlin import exceptions
from advlin.matcore import Backend, Mat
from advlin.partitions import Category, ColoredWord
from advlin.utils.decorators import positive_parameter


ENSEMBLE_KINDS = ('gaussian', 'wigner', 'wishart')
LAW_TAGS = ('gauss', 'complex_gauss', 'poisson', 'bessel', 'bessel_s',
            'semicircle', 'marchenko_pastur')
REFLECTION_GROUPS = ('S', 'H', 'Hs', 'K')
ROTATION_GROUPS = ('SU2', 'SO3')

# Category whose sum of t^|pi| gives the moments of each limit law
LAW_CATEGORIES = {
    'gauss': 'P2',
    'complex_gauss': 'MatchingP2',
    'poisson': 'P',
    'bessel': 'P_even',
    'semicircle': 'NC2',
    'marchenko_pastur': 'NC',
}

# Samples per derived stream; fixed so results don't depend on the worker count
SAMPLE_BLOCK = 1024
SERIES_CUTOFF = 1e-16
SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SeedSpec:
    """Master seed; stream i is seeded from the pair (master, i)"""
    master_seed: int = 0

    def sequence(self, index):
        return numpy.random.SeedSequence([self.master_seed & SEED_MASK, index])

    def derived_seed(self, index):
        return int(self.sequence(index).generate_state(1, dtype=numpy.uint64)[0])

    def generator(self, index):
        return numpy.random.default_rng(self.sequence(index))


@dataclass(frozen=True)
class EnsembleSpec:
    """Random matrix model.

       gaussian: N x N with i.i.d. complex G_t entries. wigner: hermitian,
       real g_t diagonal and complex G_t above it. wishart: W = Y Y* with Y an
       N x M gaussian matrix.
    """
    kind: str
    n: int
    t: float = 1.0
    m: int = None

    def __post_init__(self):
        if self.kind not in ENSEMBLE_KINDS:
            raise exceptions.InvalidParameterException(f"Unknown ensemble {self.kind}, expected one of {ENSEMBLE_KINDS}.")
        if self.n < 1 or (self.m is not None and self.m < 1):
            raise exceptions.InvalidParameterException(f"Dimensions must be >= 1, got N={self.n}, M={self.m}.")
        if not self.t > 0:
            raise exceptions.InvalidParameterException(f"Parameter t must be positive, got {self.t}.")
        if self.kind == 'wishart' and self.m is None:
            object.__setattr__(self, 'm', self.n)

    def normalization(self):
        """Scale taking a sample to the matrix whose moments converge"""
        return 1 / self.n if self.kind == 'wishart' else 1 / math.sqrt(self.n)


@dataclass(frozen=True)
class LimitLaw:
    """Limit law; bessel_s carries its level s, None meaning the complex Bessel law"""
    tag: str
    t: float = 1.0
    s: int = None

    def __post_init__(self):
        if self.tag not in LAW_TAGS:
            raise exceptions.InvalidParameterException(f"Unknown law {self.tag}, expected one of {LAW_TAGS}.")
        if not self.t > 0:
            raise exceptions.InvalidParameterException(f"Parameter t must be positive, got {self.t}.")
        if self.tag == 'bessel_s' and self.s is not None and self.s < 1:
            raise exceptions.InvalidParameterException(f"Bessel level must be >= 1, got {self.s}.")

    def category(self):
        if self.tag == 'bessel_s':
            return Category('P_s', self.s)
        return Category(LAW_CATEGORIES[self.tag])


@dataclass(frozen=True, eq=False)
class EmpiricalLaw:
    """Sample values, real or complex, and the moments they estimate"""
    values: numpy.ndarray

    def __post_init__(self):
        values = numpy.asarray(self.values)
        if values.size == 0:
            raise exceptions.ShapeException("An empirical law needs at least one sample.")
        if numpy.iscomplexobj(values) and not numpy.any(values.imag):
            values = values.real
        object.__setattr__(self, 'values', values)

    @property
    def count(self):
        return self.values.size

    @property
    def is_real(self):
        return not numpy.iscomplexobj(self.values)

    @property
    def mean(self):
        return self.moment(1)

    def _powers(self, a, b=0):
        v = self.values
        return v ** a * numpy.conj(v) ** b if b else v ** a

    def moment(self, k):
        result = numpy.mean(self._powers(k))
        return float(result) if self.is_real else complex(result)

    def colored_moment(self, a, b):
        """E[x^a conj(x)^b]"""
        return complex(numpy.mean(self._powers(a, b)))

    def stderr(self, k=1):
        """Standard error of the k-th sample moment"""
        if self.count < 2:
            return float('inf')
        return float(numpy.std(self._powers(k), ddof=1) / math.sqrt(self.count))

    def frequencies(self, support):
        """Fraction of samples equal to each integer support point"""
        rounded = numpy.rint(self.values.real).astype(numpy.int64)
        return {k: float(numpy.mean(rounded == k)) for k in support}


def _normals(rng, shape):
    """Standard normals by the Box-Muller transform"""
    u1 = 1.0 - rng.random(shape)
    u2 = rng.random(shape)
    return numpy.sqrt(-2.0 * numpy.log(u1)) * numpy.cos(2 * numpy.pi * u2)


def _complex_normals(rng, shape, t):
    """Complex G_t variables: E|z|^2 = t, independent real and imaginary parts"""
    return math.sqrt(t / 2) * (_normals(rng, shape) + 1j * _normals(rng, shape))


def _haar_from_gaussian(z):
    q, r = numpy.linalg.qr(z)
    d = numpy.diagonal(r)
    phases = numpy.where(d == 0, 1, d / numpy.abs(d))
    return q * phases


def _fisher_yates(rng, size, n):
    """size independent uniform permutations of range(n), one per row"""
    perms = numpy.tile(numpy.arange(n), (size, 1))
    rows = numpy.arange(size)
    for j in range(n - 1, 0, -1):
        picks = rng.integers(0, j + 1, size=size)
        held = perms[rows, j].copy()
        perms[rows, j] = perms[rows, picks]
        perms[rows, picks] = held
    return perms


def _reflection_block(group, n, m, s, seed, block, size):
    rng = seed.generator(block)
    perms = _fisher_yates(rng, size, n)
    fixed = perms[:, :m] == numpy.arange(m)
    if group == 'S':
        return fixed.sum(axis=1).astype(float)
    if group == 'H':
        roots = 1.0 - 2.0 * rng.integers(0, 2, size=(size, m))
        return (roots * fixed).sum(axis=1)
    if group == 'Hs':
        roots = numpy.exp(2j * numpy.pi * rng.integers(0, s, size=(size, m)) / s)
    else:
        roots = numpy.exp(2j * numpy.pi * rng.random((size, m)))
    return (roots * fixed).sum(axis=1)


def _sphere_block(seed, block, size):
    points = _normals(seed.generator(block), (size, 4))
    return points / numpy.linalg.norm(points, axis=1)[:, None]


def _compound_poisson_block(s, t, seed, block, size):
    rng = seed.generator(block)
    if s is None:
        counts = rng.poisson(t, size=size)
        owners = numpy.repeat(numpy.arange(size), counts)
        phases = numpy.exp(2j * numpy.pi * rng.random(owners.size))
        return (numpy.bincount(owners, weights=phases.real, minlength=size)
                + 1j * numpy.bincount(owners, weights=phases.imag, minlength=size))
    roots = numpy.exp(2j * numpy.pi * numpy.arange(s) / s)
    return rng.poisson(t / s, size=(size, s)) @ roots


def _gaussian_block(t, seed, block, size):
    return _complex_normals(seed.generator(block), size, t)


def _bessel_pmf(k, t):
    """e^-t sum_p (t/2)^(|k|+2p) / ((|k|+p)! p!), summed until terms drop under 1e-16"""
    k = abs(int(k))
    term = (t / 2) ** k / math.factorial(k)
    total, p = 0.0, 0
    while term > 0:
        total += term
        term *= (t / 2) ** 2 / ((k + p + 1) * (p + 1))
        p += 1
        if term < SERIES_CUTOFF * total and p > t:
            break
    return math.exp(-t) * total


def _double_factorial(m):
    result = 1
    while m > 1:
        result *= m
        m -= 2
    return result


class Ensembles(object):

    def __init__(self, workbench, logger):
        """Constructor for Ensembles object

            :param workbench.Workbench workbench: An already constructed Workbench object
            :param logging.Logger logger: A pre-configured Python Logger object
        """
        self.workbench = workbench
        self.logger = logger

    def _seed(self, seed):
        if isinstance(seed, SeedSpec):
            return seed
        if seed is None:
            seed = self.workbench.seed if self.workbench.seed is not None else 0
        return SeedSpec(int(seed))

    def _blocks(self, func, count, *args):
        """Run func(*args, block, size) over fixed-size sample blocks and concatenate"""
        if count < 1:
            raise exceptions.InvalidParameterException(f"Sample count must be >= 1, got {count}.")
        sizes = [min(SAMPLE_BLOCK, count - start) for start in range(0, count, SAMPLE_BLOCK)]
        columns = [[a] * len(sizes) for a in args]
        blocks = list(range(len(sizes)))
        if self.workbench.workers > 1 and len(sizes) > 1:
            with ProcessPoolExecutor(max_workers=self.workbench.workers) as pool:
                parts = list(pool.map(func, *columns, blocks, sizes))
        else:
            parts = [func(*[c[i] for c in columns], b, s) for i, (b, s) in enumerate(zip(blocks, sizes))]
        self.logger.debug(f"{func.__name__}: {count} samples in {len(sizes)} blocks")
        return numpy.concatenate(parts)

    def sample_ensemble(self, spec, seed=None, count=1):
        """Stream of sample matrices; sample i draws from stream i of the seed.

           :param EnsembleSpec spec: The model
           :param seed: SeedSpec, master seed or None for the workbench seed
           :param int count: Number of matrices Default(1)
        """
        seed = self._seed(seed)
        n = spec.n
        for index in range(count):
            rng = seed.generator(index)
            if spec.kind == 'gaussian':
                z = _complex_normals(rng, (n, n), spec.t)
            elif spec.kind == 'wigner':
                upper = numpy.triu(_complex_normals(rng, (n, n), spec.t), 1)
                diagonal = math.sqrt(spec.t) * _normals(rng, n)
                z = upper + upper.conj().T + numpy.diag(diagonal)
            else:
                y = _complex_normals(rng, (n, spec.m), spec.t)
                w = y @ y.conj().T
                z = (w + w.conj().T) / 2
            yield Mat(z, Backend.FLOAT)

    def empirical_colored_moments(self, samples, words, spec):
        """Per-word law of (1/N) Tr of the normalized sample word.

           o stands for the normalized sample and * for its adjoint.

           :param samples: Iterable of sample Mats
           :param list words: ColoredWords, strings or plain lengths
           :param EnsembleSpec spec: The model the samples come from
           :return dict: str(word) -> EmpiricalLaw of the traces
        """
        matrices = [s.data * spec.normalization() for s in samples]
        if not matrices:
            raise exceptions.ShapeException("No samples to estimate moments from.")
        table = {}
        for word in (ColoredWord.coerce(w) for w in words):
            traces = []
            for a in matrices:
                product = numpy.eye(a.shape[0], dtype=complex)
                for white in word.colors():
                    product = product @ (a if white else a.conj().T)
                traces.append(numpy.trace(product) / a.shape[0])
            table[str(word)] = EmpiricalLaw(numpy.array(traces))
        return table

    def wick_moment(self, word, indices=None, t=1):
        """E of a product of complex G_t variables, exactly.

           t^(k/2) times the number of matching pairings pi <= ker(indices).

           :param word: ColoredWord; o is a variable, * its conjugate
           :param indices: Variable of each letter Default(all the same)
           :param t: Variance parameter, int or Fraction stays exact Default(1)
        """
        word = ColoredWord.coerce(word)
        limit = self.workbench.budgets['wick']
        if len(word) > limit:
            raise exceptions.BudgetExceededException(f"Wick formula limited to {limit} letters, got {len(word)}.")
        indices = [0] * len(word) if indices is None else list(indices)
        if len(indices) != len(word):
            raise exceptions.ShapeException(f"{len(indices)} indices for a word of {len(word)} letters.")
        if len(word) % 2 or word.n_white != word.n_black:
            return 0
        pairings = self.workbench.partitions.enumerate(word, 'MatchingP2')
        count = sum(1 for p in pairings if all(indices[a - 1] == indices[b - 1] for a, b in p.blocks()))
        return count * t ** (len(word) // 2)

    def limit_moment(self, law, k):
        """Moment sum over D(k) of t^|pi| for the law's category of partitions

           :param LimitLaw law: The law
           :param k: Exponent, or a ColoredWord for complex laws
        """
        return self.workbench.partitions.asymptotic_moment(law.category(), k, law.t)

    def law_eval(self, law, x):
        """Density or pmf of a limit law at x; 0 outside the support.

           marchenko_pastur at x = 0 gives the weight of its atom there.
        """
        t = law.t
        if law.tag == 'gauss':
            return float(scipy.stats.norm.pdf(x, scale=math.sqrt(t)))
        if law.tag == 'complex_gauss':
            return math.exp(-abs(x) ** 2 / t) / (math.pi * t)
        if law.tag == 'semicircle':
            return math.sqrt(4 * t - x * x) / (2 * math.pi * t) if abs(x) < 2 * math.sqrt(t) else 0.0
        if law.tag == 'marchenko_pastur':
            if x == 0:
                return max(1 - t, 0.0)
            inside = 4 * t - (x - 1 - t) ** 2
            return math.sqrt(inside) / (2 * math.pi * x) if x > 0 and inside > 0 else 0.0
        if law.tag == 'bessel_s' and law.s not in (1, 2):
            return self.bessel_s_pmf(law.s, t).get(_lattice_key(x), 0.0)
        if complex(x).imag != 0 or float(complex(x).real) != int(complex(x).real):
            return 0.0
        k = int(complex(x).real)
        if law.tag == 'poisson' or (law.tag == 'bessel_s' and law.s == 1):
            return float(scipy.stats.poisson.pmf(k, t))
        return _bessel_pmf(k, t)

    def bessel_pmf(self, k, t):
        """pmf of the Bessel law b_t at the integer k (t >= 0)"""
        if t < 0:
            raise exceptions.InvalidParameterException(f"Parameter t must be >= 0, got {t}.")
        return _bessel_pmf(k, t)

    def bessel_s_pmf(self, s, t):
        """Atoms of b_t^s as {lattice point: mass}.

           Sums e^-t t^n/n! times the law of n uniform s-th roots of unity,
           until the Poisson weight falls under 1e-16.
        """
        if s is None:
            raise exceptions.InvalidParameterException("The complex Bessel law has no atoms; use its moments.")
        roots = [cmath.exp(2j * math.pi * j / s) for j in range(s)]
        walk = {_lattice_key(0): (0j, 1.0)}
        weight = math.exp(-t)
        result = {}
        n = 0
        while True:
            for key, (point, mass) in walk.items():
                entry = result.get(key, (point, 0.0))
                result[key] = (point, entry[1] + weight * mass)
            n += 1
            weight *= t / n
            if weight < SERIES_CUTOFF and n > t:
                break
            step = {}
            for point, mass in walk.values():
                for r in roots:
                    target = point + r
                    key = _lattice_key(target)
                    step[key] = (target, step.get(key, (target, 0.0))[1] + mass / s)
            walk = step
        return {key: mass for key, (_, mass) in result.items()}

    def bessel_convolve_check(self, s, t, support=20, family='bessel'):
        """sup |b_s * b_t - b_(s+t)| over {-K..K}; family='poisson' checks p_s * p_t on {0..K}"""
        if s < 0 or t < 0:
            raise exceptions.InvalidParameterException(f"Parameters must be >= 0, got s={s}, t={t}.")
        if family == 'poisson':
            points = range(0, support + 1)
            pmf = lambda k, u: float(scipy.stats.poisson.pmf(k, u))  # noqa: E731
            wide = range(0, 2 * support + 1)
        else:
            points = range(-support, support + 1)
            pmf = _bessel_pmf
            wide = range(-2 * support, 2 * support + 1)
        left = {k: pmf(k, s) for k in wide}
        right = {k: pmf(k, t) for k in wide}
        error = 0.0
        for k in points:
            convolved = sum(left[j] * right.get(k - j, 0.0) for j in wide)
            error = max(error, abs(convolved - pmf(k, s + t)))
        self.logger.debug(f"{family} semigroup check s={s}, t={t}: sup error {error:.3g}")
        return error

    def sample_reflection_char(self, group, n, t, seed=None, count=1000, s=None):
        """Truncated character sum_(i <= tN) root_i [sigma(i) = i] of a random group element.

           :param str group: S (permutations), H (signed), Hs (s-th roots), K (circle)
           :param int n: Size N
           :param float t: Truncation ratio, 1 <= floor(tN) <= N
           :param int s: Root order for Hs
           :return EmpiricalLaw: The character samples
        """
        if group not in REFLECTION_GROUPS:
            raise exceptions.InvalidParameterException(f"Unknown group {group}, expected one of {REFLECTION_GROUPS}.")
        m = int(math.floor(t * n))
        if not 1 <= m <= n:
            raise exceptions.InvalidParameterException(f"Truncation floor(tN)={m} isn't in 1..{n}.")
        if group == 'Hs' and (s is None or s < 1):
            raise exceptions.InvalidParameterException(f"Hs needs a root order s >= 1, got {s}.")
        values = self._blocks(_reflection_block, count, group, n, m, s, self._seed(seed))
        return EmpiricalLaw(values)

    def sample_sphere(self, seed=None, count=1000):
        """Uniform points (a, b, c, d) of S^3 as normalized Gaussian vectors"""
        return self._blocks(_sphere_block, count, self._seed(seed))

    def sample_rotation_char(self, group, seed=None, count=1000):
        """Character of a Haar element: 2a on SU2, 4a^2 (that is 1 + Tr) on SO3"""
        if group not in ROTATION_GROUPS:
            raise exceptions.InvalidParameterException(f"Unknown group {group}, expected one of {ROTATION_GROUPS}.")
        a = self.sample_sphere(seed, count)[:, 0]
        return EmpiricalLaw(2 * a if group == 'SU2' else 4 * a ** 2)

    def euler_rodrigues(self, a, b, c, d):
        """Rotation of R^3 given by the unit quaternion a + bi + cj + dk"""
        rows = [
            [a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (a * c + b * d)],
            [2 * (a * d + b * c), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)],
            [2 * (b * d - a * c), 2 * (a * b + c * d), a * a - b * b - c * c + d * d],
        ]
        return Mat.from_rows(rows)

    def su2_matrix(self, a, b, c, d):
        return Mat.from_rows([[complex(a, b), complex(-c, d)], [complex(c, d), complex(a, -b)]],
                             Backend.FLOAT)

    def rotation_residual(self, r):
        """max(|R^t R - 1|, |det R - 1|)"""
        data = r.to_float().data
        orthogonality = numpy.abs(data.T @ data - numpy.eye(3)).max()
        return float(max(orthogonality, abs(numpy.linalg.det(data) - 1)))

    def hyperspherical_moment(self, n, p):
        """Integral of x_1^p over the unit sphere of R^N, exactly

           (p-1)!! (N-2)!! / (N+p-2)!! for even p, 0 for odd p
        """
        if n < 2 or p < 0:
            raise exceptions.InvalidParameterException(f"Needs N >= 2 and p >= 0, got N={n}, p={p}.")
        if p % 2:
            return Fraction(0)
        return Fraction(_double_factorial(p - 1) * _double_factorial(n - 2), _double_factorial(n + p - 2))

    @positive_parameter('n')
    def sample_haar_orthogonal(self, n, seed=None, count=1):
        """Haar orthogonal matrices: QR of a real Gaussian matrix, diag(R) made positive"""
        seed = self._seed(seed)
        for index in range(count):
            yield Mat(_haar_from_gaussian(_normals(seed.generator(index), (n, n))), Backend.FLOAT)

    @positive_parameter('n')
    def sample_haar_unitary(self, n, seed=None, count=1):
        seed = self._seed(seed)
        for index in range(count):
            yield Mat(_haar_from_gaussian(_complex_normals(seed.generator(index), (n, n), 1.0)), Backend.FLOAT)

    @positive_parameter('t')
    def sample_compound_poisson(self, s, t, seed=None, count=1000):
        """sum_j z_j alpha_j over the s-th roots z_j, alpha_j ~ Poisson(t/s).

           s=None draws a Poisson(t) number of uniform phases instead.
        """
        if s is not None and s < 1:
            raise exceptions.InvalidParameterException(f"Root order must be >= 1, got {s}.")
        return EmpiricalLaw(self._blocks(_compound_poisson_block, count, s, t, self._seed(seed)))

    @positive_parameter('t')
    def sample_complex_gaussian(self, t, seed=None, count=1000):
        return EmpiricalLaw(self._blocks(_gaussian_block, count, t, self._seed(seed)))

    def total_variation(self, p, q):
        """Half the l1 distance between two pmfs given as dicts on a common support"""
        support = set(p) | set(q)
        return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in support)

    def ks_distance(self, samples, cdf):
        """sup |empirical CDF - cdf|"""
        values = samples.values if isinstance(samples, EmpiricalLaw) else numpy.asarray(samples)
        return float(scipy.stats.kstest(numpy.real(values), cdf).statistic)

    def spectral_mass_near_zero(self, samples, eps=1e-2):
        """Fraction of eigenvalues of W/N under eps, over all Wishart samples"""
        total = below = 0
        for w in samples:
            values = numpy.linalg.eigvalsh(w.data / w.rows)
            total += values.size
            below += int(numpy.sum(values < eps))
        if not total:
            raise exceptions.ShapeException("No samples to measure.")
        return below / total

    def moment_table(self, empirical, law, ks):
        """Rows k, empirical, limit, abs_err, stderr comparing samples to a limit law"""
        rows = []
        for k in ks:
            value = empirical.moment(k)
            limit = self.limit_moment(law, k)
            rows.append({'k': k, 'empirical': value, 'limit': limit,
                         'abs_err': abs(value - float(limit)), 'stderr': empirical.stderr(k)})
        return rows


def _lattice_key(z):
    z = complex(z)
    return (round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0)
