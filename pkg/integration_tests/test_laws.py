import math

import pytest
import scipy.stats

from advlin.ensembles import EnsembleSpec, LimitLaw


def test_wigner_semicircle(workbench):
    spec = EnsembleSpec('wigner', 200)
    samples = workbench.ensembles.sample_ensemble(spec, 42, 20)
    table = workbench.ensembles.empirical_colored_moments(samples, [2, 4], spec)
    assert abs(table['oo'].mean.real - 1) <= 0.05
    assert abs(table['oooo'].mean.real - 2) <= 0.15


def test_wishart_marchenko_pastur(workbench):
    ensembles = workbench.ensembles
    spec = EnsembleSpec('wishart', 200)
    samples = list(ensembles.sample_ensemble(spec, 43, 20))
    table = ensembles.empirical_colored_moments(samples, [1, 2, 3, 4], spec)
    law = LimitLaw('marchenko_pastur', t=1.0)
    for k in (1, 2, 3, 4):
        catalan = ensembles.limit_moment(law, k)
        assert catalan == workbench.partitions.catalan(k)
        assert abs(table['o' * k].mean.real - catalan) <= 0.05 * catalan


def test_wishart_atom_at_zero(workbench):
    ensembles = workbench.ensembles
    samples = ensembles.sample_ensemble(EnsembleSpec('wishart', 200, m=100), 44, 5)
    mass = ensembles.spectral_mass_near_zero(samples)
    assert abs(mass - 0.5) <= 0.05 * 0.5
    assert ensembles.law_eval(LimitLaw('marchenko_pastur', t=0.5), 0) == 0.5


def test_fixed_points_are_poisson(workbench):
    ensembles = workbench.ensembles
    law = ensembles.sample_reflection_char('S', 200, 1.0, seed=45, count=100000)
    support = range(7)
    poisson = {k: float(scipy.stats.poisson.pmf(k, 1.0)) for k in support}
    assert ensembles.total_variation(law.frequencies(support), poisson) <= 0.01


@pytest.mark.parametrize("t", [0.5, 1.0])
def test_hyperoctahedral_characters_are_bessel(workbench, t):
    ensembles = workbench.ensembles
    law = ensembles.sample_reflection_char('H', 200, t, seed=46, count=100000)
    support = range(-4, 5)
    bessel = {k: ensembles.bessel_pmf(k, t) for k in support}
    assert ensembles.total_variation(law.frequencies(support), bessel) <= 0.02


def test_bessel_semigroup(workbench):
    assert workbench.ensembles.bessel_convolve_check(0.5, 0.5) <= 1e-6


def test_rotation_characters(workbench):
    ensembles = workbench.ensembles
    catalan = [workbench.partitions.catalan(k) for k in range(5)]
    su2 = ensembles.sample_rotation_char('SU2', seed=47, count=1000000)
    so3 = ensembles.sample_rotation_char('SO3', seed=48, count=1000000)
    for k in (1, 2, 3, 4):
        assert abs(su2.moment(2 * k) - catalan[k]) <= 0.02 * catalan[k]
        assert abs(so3.moment(k) - catalan[k]) <= 0.02 * catalan[k]


def test_hyperspherical_formula(workbench):
    for k in range(7):
        moment = workbench.ensembles.hyperspherical_moment(4, 2 * k)
        assert moment * 4 ** k == workbench.partitions.catalan(k)


def test_euler_rodrigues_rotations(workbench):
    ensembles = workbench.ensembles
    for a, b, c, d in ensembles.sample_sphere(seed=49, count=1000):
        r = ensembles.euler_rodrigues(a, b, c, d)
        assert ensembles.rotation_residual(r) <= 1e-10
        assert math.isclose(r.trace().real, 4 * a * a - 1, abs_tol=1e-12)
