import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from energylines.states import GaussianPureParam

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


angles = st.floats(0.0, 2 * math.pi, exclude_max=True)
squeezings = st.floats(1.0, 6.0)
mixedness = st.floats(1.0, 4.0)
energies = st.floats(0.0, 50.0)
seeds = st.integers(0, 2**32 - 1)


@st.composite
def params(draw, z_hi=6.0, nu_hi=4.0, m_hi=3.0):
    phi = draw(angles)
    return GaussianPureParam(
        z=draw(st.floats(1.0, z_hi)),
        theta=draw(angles),
        nu=draw(st.floats(1.0, nu_hi)),
        mean_norm=draw(st.floats(0.0, m_hi)),
        mean_dir=(math.cos(phi), math.sin(phi)),
    )
