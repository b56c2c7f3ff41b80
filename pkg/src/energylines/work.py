"""Ergotropy, total ergotropy and non-equilibrium free energy of Gaussian states."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import GaussianChannel, is_phase_insensitive
from .states import GaussianState, bose_entropy, mean_energy, von_neumann_entropy

BISECTION_TOL = 1e-12
BISECTION_MAX_ITER = 400


def _require_one_mode(s: GaussianState):
    if s.n != 1:
        raise ValueError(f"closed form needs a one-mode state, got {s.n} modes")


def passive_energy_one_mode(s: GaussianState) -> float:
    """Energy left in the passive counterpart: (sqrt(det sigma) - 1)/2."""
    _require_one_mode(s)
    det = float(np.linalg.det(s.cov))
    return (np.sqrt(max(det, 1.0)) - 1) / 2


def ergotropy_one_mode(s: GaussianState) -> float:
    _require_one_mode(s)
    (a, c), (_, b) = s.cov
    det = max(a * b - c * c, 0.0)
    # Tr/4 - sqrt(det)/2 without cancellation: ((a-b)^2/4 + c^2) / (2 (Tr/2 + sqrt(det)))
    anisotropy = ((a - b) ** 2 / 4 + c * c) / (a + b + 2 * np.sqrt(det))
    return max(float(anisotropy + s.mean @ s.mean / 2), 0.0)


def thermal_occupation_for_entropy(entropy: float, n_modes: int, upper: float) -> float:
    """Photon number N with n_modes * g(N) = entropy, by bisection on [0, upper]."""
    if entropy <= 0:
        return 0.0
    target = entropy / n_modes
    lo, hi = 0.0, max(upper, 1.0)
    while bose_entropy(hi) < target:
        hi *= 2
    for _ in range(BISECTION_MAX_ITER):
        mid = (lo + hi) / 2
        if bose_entropy(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= BISECTION_TOL:
            return (lo + hi) / 2
    raise RuntimeError(f"entropy inversion did not converge (bracket [{lo}, {hi}])")


def total_ergotropy(s: GaussianState) -> float:
    """Energy minus that of the Gibbs state with equal entropy."""
    energy = mean_energy(s)
    n_star = thermal_occupation_for_entropy(von_neumann_entropy(s), s.n, energy)
    return max(energy - s.n * n_star, 0.0)


def free_energy(s: GaussianState, beta: float) -> float:
    if beta <= 0:
        raise ValueError(f"inverse temperature must be positive, got {beta}")
    return mean_energy(s) - von_neumann_entropy(s) / beta


@dataclass
class WorkReport:
    energy: float
    entropy: float
    ergotropy: float | None
    total_ergotropy: float
    free_energy: dict[float, float] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "energy": self.energy,
            "entropy": self.entropy,
            "ergotropy": self.ergotropy,
            "total_ergotropy": self.total_ergotropy,
            "free_energy": {repr(float(b)): f for b, f in self.free_energy.items()},
        }


def work_report(s: GaussianState, betas=()) -> WorkReport:
    # single-copy ergotropy has no closed form beyond one mode
    ergo = ergotropy_one_mode(s) if s.n == 1 else None
    return WorkReport(
        energy=mean_energy(s),
        entropy=von_neumann_entropy(s),
        ergotropy=ergo,
        total_ergotropy=total_ergotropy(s),
        free_energy={float(b): free_energy(s, b) for b in betas},
    )


def pi_max_ergotropy(channel: GaussianChannel, energy: float) -> float:
    """Maximal output ergotropy of a one-mode phase-insensitive channel at input energy <= E."""
    if channel.n_in != 1 or channel.n_out != 1:
        raise ValueError("closed-form maximum is for one-mode channels")
    if energy < 0:
        raise ValueError("energy must be nonnegative")
    if not is_phase_insensitive(channel):
        raise ValueError("channel is not phase-insensitive; use optimize.maximize")
    # full erasure (X = 0) is a valid channel with nothing left to extract
    lam1 = float(np.linalg.eigvalsh(channel.X.T @ channel.X)[-1])
    return lam1 * energy
