import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from energylines.channels import additive_noise, amplifier, apply, attenuated_squeezer, lossy
from energylines.sampling import random_multimode_state
from energylines.states import (
    GaussianPureParam,
    GaussianState,
    coherent_with_energy,
    displaced_squeezed_thermal,
    mean_energy,
    product,
    thermal,
    vacuum,
)
from energylines.work import (
    ergotropy_one_mode,
    free_energy,
    passive_energy_one_mode,
    pi_max_ergotropy,
    thermal_occupation_for_entropy,
    total_ergotropy,
    work_report,
)

from conftest import params, seeds


def test_ergotropy_examples():
    assert ergotropy_one_mode(coherent_with_energy(2.5)) == pytest.approx(2.5)
    assert ergotropy_one_mode(thermal(3.0)) == 0.0
    z = 3.0
    squeezed = GaussianState(np.zeros(2), np.diag([z, 1 / z]))
    assert ergotropy_one_mode(squeezed) == pytest.approx((z + 1 / z) / 4 - 0.5, abs=1e-15)


def test_passive_energy_examples():
    assert passive_energy_one_mode(thermal(2.0)) == pytest.approx(2.0)
    assert passive_energy_one_mode(coherent_with_energy(4.0)) == pytest.approx(0.0, abs=1e-15)
    p = GaussianPureParam(z=2.0, theta=0.4, nu=3.0, mean_norm=1.7, mean_dir=(0.6, 0.8))
    assert passive_energy_one_mode(displaced_squeezed_thermal(p)) == pytest.approx(1.0, abs=1e-12)


def test_one_mode_functionals_reject_multimode():
    with pytest.raises(ValueError):
        ergotropy_one_mode(vacuum(2))
    with pytest.raises(ValueError):
        passive_energy_one_mode(vacuum(2))


@given(params())
def test_energy_splits_into_passive_and_ergotropy(p):
    s = displaced_squeezed_thermal(p)
    assert passive_energy_one_mode(s) + ergotropy_one_mode(s) == pytest.approx(mean_energy(s), abs=1e-12)


@given(params())
def test_work_report_ordering(p):
    r = work_report(displaced_squeezed_thermal(p), [1.0])
    assert -1e-12 <= r.ergotropy <= r.total_ergotropy + 1e-9
    assert r.total_ergotropy <= r.energy + 1e-12


@given(params())
def test_total_equals_single_copy_for_one_mode(p):
    s = displaced_squeezed_thermal(p)
    assert total_ergotropy(s) == pytest.approx(ergotropy_one_mode(s), abs=1e-9)


def test_total_ergotropy_examples():
    assert total_ergotropy(thermal(2.0)) == pytest.approx(0.0, abs=1e-11)
    p = GaussianPureParam(z=2.5, theta=1.0, nu=1.8, mean_norm=1.1)
    one = displaced_squeezed_thermal(p)
    two = product(one, one)
    assert total_ergotropy(two) == pytest.approx(2 * total_ergotropy(one), abs=1e-10)


@given(seeds, st.floats(0.1, 10.0))
def test_multimode_total_ergotropy_bounds(seed, energy):
    s = random_multimode_state(np.random.default_rng(seed), 2, energy)
    r = work_report(s)
    assert r.ergotropy is None
    assert -1e-12 <= r.total_ergotropy <= r.energy + 1e-12


@given(st.floats(1e-6, 50.0), st.integers(1, 4))
def test_entropy_inversion(N, n):
    from energylines.states import bose_entropy
    found = thermal_occupation_for_entropy(n * bose_entropy(N), n, upper=0.0)
    assert found == pytest.approx(N, abs=1e-10, rel=1e-10)


def test_free_energy_examples():
    s = coherent_with_energy(1.3)
    assert free_energy(s, 0.7) == pytest.approx(1.3)
    with pytest.raises(ValueError):
        free_energy(s, 0.0)
    eta, N, E, beta = 0.3, 2.0, 4.0, 0.5
    x = N * (1 - eta)
    expected = eta * E + x - ((x + 1) * math.log(x + 1) - x * math.log(x)) / beta
    assert free_energy(apply(lossy(eta, N), coherent_with_energy(E)), beta) == pytest.approx(expected, abs=1e-12)
    expected = E + N - ((N + 1) * math.log(N + 1) - N * math.log(N)) / beta
    assert free_energy(apply(additive_noise(N), coherent_with_energy(E)), beta) == pytest.approx(expected, abs=1e-12)


def test_pi_closed_forms():
    assert pi_max_ergotropy(lossy(0.5, 3), 10) == pytest.approx(5)
    assert pi_max_ergotropy(amplifier(2, 1), 10) == pytest.approx(20)
    assert pi_max_ergotropy(additive_noise(7), 10) == pytest.approx(10)
    with pytest.raises(ValueError):
        pi_max_ergotropy(attenuated_squeezer(0.5, 2), 1.0)
    with pytest.raises(ValueError):
        pi_max_ergotropy(lossy(0.5), -1.0)


@given(st.floats(0.0, 1.0), st.floats(0.0, 10.0), st.floats(0.0, 100.0))
def test_coherent_output_reaches_closed_form(eta, N, energy):
    out = apply(lossy(eta, N), coherent_with_energy(energy))
    assert ergotropy_one_mode(out) == pytest.approx(pi_max_ergotropy(lossy(eta, N), energy), abs=1e-10)


def test_counterexample_gap():
    from energylines.verify import counterexample_gap
    measured, predicted = counterexample_gap(0.5, 2.0)
    # eta (zeta^2 + zeta^-2 - 2) / 4 at eta = 1/2, zeta = 2 is 9/32
    assert predicted == 0.28125
    assert measured == pytest.approx(predicted, abs=1e-12)


def test_report_json_serializable():
    r = work_report(thermal(0.5), [0.5, 2.0])
    data = json.loads(json.dumps(r.to_json()))
    assert set(data["free_energy"]) == {"0.5", "2.0"}
