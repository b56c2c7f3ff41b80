"""Named verification suites: each returns a list of Checks with measured deviations."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .channels import apply, attenuated_squeezer, lossy
from .optimize import maximize, normalize, objective, stationary_z_diagonal_noise, z_max
from .sampling import (
    random_channel,
    random_diagonal_noise_form,
    random_param,
    random_state_with_energy,
)
from .states import coherent_with_energy, displaced_squeezed_thermal, mean_energy, von_neumann_entropy
from .work import ergotropy_one_mode, free_energy, pi_max_ergotropy, total_ergotropy


@dataclass
class Check:
    name: str
    deviation: float
    tolerance: float
    passed: bool | None = None

    def __post_init__(self):
        if self.passed is None:
            self.passed = bool(self.deviation <= self.tolerance)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.name}: deviation {self.deviation:.3e} (tol {self.tolerance:.1e})"


def gaussian_fock(seed: int = 0, samples: int = 50) -> list[Check]:
    rng = np.random.default_rng(seed)
    worst = {"ergotropy": 0.0, "entropy": 0.0, "energy": 0.0}
    for _ in range(samples):
        p = random_param(rng)
        g = displaced_squeezed_thermal(p)
        rho = fock.adequate_fock(p, max_deficit=1e-10)
        worst["ergotropy"] = max(worst["ergotropy"], abs(fock.ergotropy_fock(rho) - ergotropy_one_mode(g)))
        worst["entropy"] = max(worst["entropy"], abs(fock.entropy_fock(rho) - von_neumann_entropy(g)))
        worst["energy"] = max(worst["energy"], abs(fock.energy_fock(rho) - mean_energy(g)))

    # end to end: squeeze then pure loss, compared on moments
    moment_dev = 0.0
    for _ in range(5):
        p = random_param(rng, z_hi=2.0, nu_hi=1.5, m_hi=1.5)
        eta, zeta = rng.uniform(0.2, 0.95), rng.uniform(1.0, 2.5)
        cutoff = 160
        rho = fock.gaussian_to_fock(p, cutoff, max_deficit=1e-10)
        out = fock.attenuator_fock(eta, fock.unitary_fock(fock.squeezer_fock(zeta, cutoff), rho))
        m, cov = fock.moments_fock(out)
        g = apply(attenuated_squeezer(eta, zeta), displaced_squeezed_thermal(p))
        moment_dev = max(moment_dev, np.max(np.abs(m - g.mean)), np.max(np.abs(cov - g.cov)))
    return [
        Check("fock vs gaussian ergotropy", worst["ergotropy"], 1e-5),
        Check("fock vs gaussian entropy", worst["entropy"], 1e-5),
        Check("fock vs gaussian energy", worst["energy"], 1e-6),
        Check("attenuator o squeezer moments", moment_dev, 1e-5),
    ]


def theorem1_sampling(seed: int = 0, samples: int = 1000, eta: float = 0.7, N: float = 1.0,
                      energy: float = 5.0, betas=(0.5, 1.0, 2.0), channel=None) -> list[Check]:
    """No Gaussian input of energy E beats the coherent one at the output of a PI channel."""
    rng = np.random.default_rng(seed)
    ch = lossy(eta, N) if channel is None else channel
    ref_state = apply(ch, coherent_with_energy(energy))
    bound = pi_max_ergotropy(ch, energy)
    ref = {
        "ergotropy": ergotropy_one_mode(ref_state),
        "total_ergotropy": total_ergotropy(ref_state),
        **{f"free_energy(beta={b})": free_energy(ref_state, b) for b in betas},
    }
    excess = dict.fromkeys(ref, -math.inf)
    for _ in range(samples):
        out = apply(ch, random_state_with_energy(rng, energy))
        vals = {
            "ergotropy": ergotropy_one_mode(out),
            "total_ergotropy": total_ergotropy(out),
            **{f"free_energy(beta={b})": free_energy(out, b) for b in betas},
        }
        for k, v in vals.items():
            excess[k] = max(excess[k], v - ref[k])
    checks = [Check(f"sampled {k} - coherent", max(e, 0.0), 1e-8) for k, e in excess.items()]
    checks.append(Check("coherent output ergotropy vs closed form", abs(ref["ergotropy"] - bound), 1e-10))
    return checks


def counterexample_gap(eta: float, zeta: float) -> tuple[float, float]:
    """(measured, predicted) output-energy gap between the two equal-energy inputs."""
    ch = attenuated_squeezer(eta, zeta)
    mean = np.array([0.7, -0.3])
    from .states import GaussianState

    rho1 = GaussianState(mean, np.diag([1 / zeta, zeta]))
    rho2 = GaussianState(mean, np.diag([zeta, 1 / zeta]))
    measured = mean_energy(apply(ch, rho2)) - mean_energy(apply(ch, rho1))
    return measured, eta * (zeta**2 + zeta**-2 - 2) / 4


def counterexample(eta: float = 0.5, zeta: float = 2.0, seed: int = 0) -> list[Check]:
    measured, predicted = counterexample_gap(eta, zeta)
    return [
        Check(f"energy gap {measured:.6g} vs eta(zeta^2+zeta^-2-2)/4", abs(measured - predicted), 1e-12),
        Check("gap strictly positive", 0.0 if measured > 0 else 1.0, 0.0),
    ]


def _random_density(rng, dim: int, rank: int) -> fock.FockOperator:
    A = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = A @ A.conj().T
    return fock.FockOperator(m / np.trace(m).real)


def convexity(seed: int = 0, samples: int = 200) -> list[Check]:
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(samples):
        dim = int(rng.integers(2, 12))
        r1 = _random_density(rng, dim, int(rng.integers(1, dim + 1)))
        r2 = _random_density(rng, dim, int(rng.integers(1, dim + 1)))
        p = rng.uniform()
        mix = fock.FockOperator(p * r1.matrix + (1 - p) * r2.matrix)
        gap = fock.ergotropy_fock(mix) - (p * fock.ergotropy_fock(r1) + (1 - p) * fock.ergotropy_fock(r2))
        worst = max(worst, gap)
    # mixtures of Gaussian states, built in the Fock basis
    gworst = -math.inf
    for _ in range(10):
        p1, p2 = random_param(rng, 2.0, 2.0, 1.5), random_param(rng, 2.0, 2.0, 1.5)
        r1 = fock.gaussian_to_fock(p1, 60)
        r2 = fock.gaussian_to_fock(p2, 60)
        p = rng.uniform()
        mix = fock.FockOperator(p * r1.matrix + (1 - p) * r2.matrix)
        gap = fock.ergotropy_fock(mix) - (p * ergotropy_one_mode(displaced_squeezed_thermal(p1))
                                          + (1 - p) * ergotropy_one_mode(displaced_squeezed_thermal(p2)))
        gworst = max(gworst, gap)
    return [
        Check("ergotropy convexity on random Fock states", max(worst, 0.0), 1e-8),
        Check("ergotropy convexity on Gaussian mixtures", max(gworst, 0.0), 1e-6),
    ]


def optimizer_oracle(seed: int = 0, channels: int = 10, probes: int = 128, energy: float = 3.0) -> list[Check]:
    """maximize against random feasible probes and against the stationarity roots."""
    rng = np.random.default_rng(seed)
    dominance = -math.inf
    for _ in range(channels):
        ch = random_channel(rng)
        nf = normalize(ch)
        best = maximize(nf, energy).value
        zm = z_max(energy)
        for _ in range(probes):
            z = math.exp(rng.uniform(0, math.log(zm)))
            t = rng.uniform(0, 2 * math.pi)
            dominance = max(dominance, objective(nf, z, t, 1.0, energy) - best)
    root_dev = 0.0
    theta_dev = 0.0
    for _ in range(channels):
        nf = random_diagonal_noise_form(rng)
        res = maximize(nf, energy)
        if res.clamped:
            continue
        z_root, t_root = best_stationary(nf, energy)
        root_dev = max(root_dev, abs(z_root - res.z_star))
        theta_dev = max(theta_dev, angle_to_set(res.theta_star, (0.0, math.pi)) if res.z_star > 1 + 1e-6 else 0.0)
    return [
        Check("random probes - maximize", max(dominance, 0.0), 1e-9),
        Check("stationary root vs maximize z*", root_dev, 1e-6),
        Check("theta* distance to {0, pi}", theta_dev, 1e-6),
    ]


def angle_to_set(theta: float, targets) -> float:
    return min(abs((theta - t + math.pi) % (2 * math.pi) - math.pi) for t in targets)


def best_stationary(nf, energy: float) -> tuple[float, float]:
    """Best of the stationary points and the boundaries z = 1, z = z_max, by the objective."""
    zm = z_max(energy)
    cands = [(1.0, 0.0), (zm, 0.0), (zm, math.pi)]
    cands += [(z, t) for z, t in stationary_z_diagonal_noise(nf) if z <= zm]
    return max(cands, key=lambda c: objective(nf, c[0], c[1], 1.0, energy))


SUITES = {
    "gaussian-fock": gaussian_fock,
    "theorem1-sampling": theorem1_sampling,
    "counterexample": counterexample,
    "convexity": convexity,
    "optimizer-oracle": optimizer_oracle,
}


def run_suite(name: str, seed: int = 0) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](seed=seed)
