import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from energylines import fock
from energylines.channels import apply, lossy
from energylines.states import (
    GaussianPureParam,
    coherent,
    displaced_squeezed_thermal,
    mean_energy,
    von_neumann_entropy,
)
from energylines.work import ergotropy_one_mode

from conftest import params


def test_vacuum():
    rho = fock.gaussian_to_fock(GaussianPureParam(), 8)
    expected = np.zeros((8, 8))
    expected[0, 0] = 1
    assert np.allclose(rho.matrix, expected, atol=1e-14)
    assert fock.energy_fock(rho) == pytest.approx(0.0, abs=1e-14)
    assert fock.entropy_fock(rho) == pytest.approx(0.0, abs=1e-12)


def test_thermal_geometric_law():
    N = 1.0
    rho = fock.gaussian_to_fock(GaussianPureParam(nu=2 * N + 1), 80, max_deficit=1e-12)
    k = np.arange(80)
    assert np.allclose(np.diag(rho.matrix).real, (N / (N + 1)) ** k / (N + 1), atol=1e-14)
    assert np.allclose(rho.matrix - np.diag(np.diag(rho.matrix)), 0, atol=1e-14)
    assert fock.energy_fock(rho) == pytest.approx(1.0, abs=1e-12)
    assert fock.entropy_fock(rho) == pytest.approx(2 * math.log(2), abs=1e-12)
    assert fock.ergotropy_fock(rho) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("cutoff", [10, 40, 120])
def test_thermal_is_passive_at_every_cutoff(cutoff):
    pops = fock.thermal_populations(2.0, cutoff)
    rho = fock.FockOperator(np.diag(pops / pops.sum()).astype(complex))
    assert fock.ergotropy_fock(rho) == 0.0


def test_coherent_energy_at_cutoff_64():
    # |alpha|^2 = 2 means |m|^2 = 4
    p = GaussianPureParam(mean_norm=2.0, mean_dir=(0.6, 0.8))
    rho = fock.gaussian_to_fock(p, 64)
    assert fock.energy_fock(rho) == pytest.approx(2.0, abs=1e-6)
    assert fock.ergotropy_fock(rho) == pytest.approx(2.0, abs=1e-6)


def test_pure_squeezed_entropy():
    rho = fock.adequate_fock(GaussianPureParam(z=3.0, theta=1.0))
    assert fock.entropy_fock(rho) < 1e-6


def test_truncation_reported():
    with pytest.raises(fock.TruncationError) as info:
        fock.gaussian_to_fock(GaussianPureParam(nu=9.0), 10)
    assert info.value.deficit > 1e-6
    assert info.value.cutoff == 10
    with pytest.raises(ValueError):
        fock.gaussian_to_fock(GaussianPureParam(), fock.MAX_CUTOFF + 1)


def test_invalid_density_rejected():
    with pytest.raises(ValueError):
        fock.ergotropy_fock(fock.FockOperator(np.diag([1.2, -0.2]).astype(complex)))
    with pytest.raises(ValueError):
        fock.entropy_fock(fock.FockOperator(np.array([[0.5, 0.3], [0.1, 0.5]], dtype=complex)))


@settings(max_examples=20)
@given(params(z_hi=2.5, nu_hi=2.5, m_hi=2.0))
def test_closed_forms_match_fock(p):
    g = displaced_squeezed_thermal(p)
    rho = fock.adequate_fock(p)
    assert fock.energy_fock(rho) == pytest.approx(mean_energy(g), abs=1e-6)
    assert fock.entropy_fock(rho) == pytest.approx(von_neumann_entropy(g), abs=1e-5)
    assert fock.ergotropy_fock(rho) == pytest.approx(ergotropy_one_mode(g), abs=1e-5)


def test_moments_round_trip():
    p = GaussianPureParam(z=2.0, theta=0.7, nu=1.5, mean_norm=1.2, mean_dir=(0.0, 1.0))
    m, cov = fock.moments_fock(fock.adequate_fock(p))
    g = displaced_squeezed_thermal(p)
    assert np.allclose(m, g.mean, atol=1e-7)
    assert np.allclose(cov, g.cov, atol=1e-7)


def test_attenuator_limits():
    rho = fock.adequate_fock(GaussianPureParam(z=1.5, mean_norm=1.0))
    assert np.allclose(fock.attenuator_fock(1.0, rho).matrix, rho.matrix, atol=1e-14)
    out = fock.attenuator_fock(0.0, rho).matrix
    vac = np.zeros_like(out)
    vac[0, 0] = np.trace(rho.matrix)
    assert np.allclose(out, vac, atol=1e-14)
    with pytest.raises(ValueError):
        fock.attenuator_fock(1.5, rho)


@pytest.mark.parametrize("eta", [0.2, 0.5, 0.85])
def test_attenuator_moments_on_coherent(eta):
    mean = np.array([1.3, -0.4])
    p = GaussianPureParam(mean_norm=float(np.linalg.norm(mean)), mean_dir=tuple(mean))
    out = fock.attenuator_fock(eta, fock.gaussian_to_fock(p, 60, max_deficit=1e-12))
    m, cov = fock.moments_fock(out)
    g = apply(lossy(eta, 0), coherent(mean))
    assert np.allclose(m, g.mean, atol=1e-6)
    assert np.allclose(cov, g.cov, atol=1e-6)
    assert out.trace_deficit < 1e-10


def test_squeezer_unitary_moments():
    zeta = 2.0
    rho = fock.gaussian_to_fock(GaussianPureParam(), 80)
    out = fock.unitary_fock(fock.squeezer_fock(zeta, 80), rho)
    _, cov = fock.moments_fock(out)
    assert np.allclose(cov, np.diag([zeta, 1 / zeta]), atol=1e-8)


@settings(max_examples=25)
@given(st.integers(0, 2**32 - 1))
def test_ergotropy_convex_on_mixtures(seed):
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(2, 10))

    def rand():
        A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        m = A @ A.conj().T
        return m / np.trace(m).real

    r1, r2, p = rand(), rand(), rng.uniform()
    mix = fock.ergotropy_fock(fock.FockOperator(p * r1 + (1 - p) * r2))
    parts = p * fock.ergotropy_fock(fock.FockOperator(r1)) + (1 - p) * fock.ergotropy_fock(fock.FockOperator(r2))
    assert mix <= parts + 1e-8


def test_partial_sums_majorize_under_pure_loss():
    # a pure input stays dominated: its spectrum majorizes the lossy output's
    rho = fock.adequate_fock(GaussianPureParam(mean_norm=1.5))
    out = fock.attenuator_fock(0.6, rho)
    a, b = fock.eigenvalue_partial_sums(rho), fock.eigenvalue_partial_sums(out)
    assert np.all(a >= b - 1e-10)
