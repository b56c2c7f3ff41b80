"""Random states and channels for property checks."""

from __future__ import annotations

import math

import numpy as np

from .channels import GaussianChannel
from .optimize import NormalFormChannel
from .states import GaussianPureParam, GaussianState, displaced_squeezed_thermal, mean_energy
from .symplectic import random_symplectic


def random_direction(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    d = rng.normal(size=dim)
    return d / np.linalg.norm(d)


def random_param_with_energy(rng: np.random.Generator, energy: float, pure: bool = False) -> GaussianPureParam:
    """Displaced squeezed thermal state with mean energy exactly `energy`."""
    budget = 2 * energy + 1  # nu * f+(z) + |m|^2
    nu = 1.0 if pure else 1 + (budget - 1) * rng.uniform() ** 2
    a = budget / nu
    zmax = a + math.sqrt(max(a * a - 1, 0.0))
    z = math.exp(rng.uniform(0, math.log(zmax))) if zmax > 1 else 1.0
    m2 = max(budget - nu * (z + 1 / z) / 2, 0.0)
    return GaussianPureParam(
        z=z,
        theta=rng.uniform(0, 2 * math.pi),
        nu=nu,
        mean_norm=math.sqrt(m2),
        mean_dir=tuple(random_direction(rng)),
    )


def random_state_with_energy(rng, energy: float, pure: bool = False) -> GaussianState:
    return displaced_squeezed_thermal(random_param_with_energy(rng, energy, pure))


def random_param(rng: np.random.Generator, z_hi: float = 3.0, nu_hi: float = 3.0, m_hi: float = 2.0) -> GaussianPureParam:
    """Parameters inside the envelope where the Fock oracle stays cheap."""
    return GaussianPureParam(
        z=rng.uniform(1, z_hi),
        theta=rng.uniform(0, 2 * math.pi),
        nu=rng.uniform(1, nu_hi),
        mean_norm=rng.uniform(0, m_hi),
        mean_dir=tuple(random_direction(rng)),
    )


def random_multimode_state(rng: np.random.Generator, n: int, energy: float, max_tries: int = 1000) -> GaussianState:
    """n-mode Gaussian state with mean energy `energy` (rejection on the covariance part)."""
    for k in range(max_tries):
        # shrink squeezing and thermal excess on retries so small budgets stay reachable
        shrink = 0.97**k
        S = random_symplectic(n, rng, scale=0.3 * shrink)
        nus = 1 + rng.uniform(0, 1, size=n) * min(1.0, energy) * shrink
        cov = S @ np.diag(np.concatenate([nus, nus])) @ S.T
        cov = (cov + cov.T) / 2
        left = energy - (np.trace(cov) / 4 - n / 2)
        if left >= 0:
            mean = math.sqrt(2 * left) * random_direction(rng, 2 * n)
            state = GaussianState(mean, cov)
            assert abs(mean_energy(state) - energy) < 1e-9
            return state
    raise RuntimeError("could not sample a covariance within the energy budget")


def random_channel(rng: np.random.Generator, spread: float = 1.0) -> GaussianChannel:
    """Random valid one-mode channel: Y = |1 - det X| I + A A^T."""
    X = rng.normal(scale=spread, size=(2, 2))
    kappa = 1 - np.linalg.det(X)
    A = rng.normal(scale=0.5, size=(2, 2))
    return GaussianChannel(X, abs(kappa) * np.eye(2) + A @ A.T, None)


def random_diagonal_noise_form(rng: np.random.Generator) -> NormalFormChannel:
    """Normal form with yx = 0 satisfying the complete-positivity condition."""
    lam1 = rng.uniform(0.2, 4.0)
    lam2 = rng.uniform(0.05, 1.0) * lam1
    kappa = 1 - math.sqrt(lam1 * lam2)
    y_z = rng.uniform(-1.0, 1.0)
    y_I = math.sqrt(y_z**2 + kappa**2) + rng.uniform(0.0, 1.5)
    return NormalFormChannel.from_params(lam1, lam2, y_I, 0.0, y_z)
