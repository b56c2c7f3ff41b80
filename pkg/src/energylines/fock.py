"""Brute-force one-mode oracle on a truncated Fock space.

Used to check the Gaussian closed forms: states are built from dense matrix
exponentials of ladder operators, and ergotropy is computed from the passive
rearrangement of the spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .states import GaussianPureParam

MAX_CUTOFF = 512
# operators are exponentiated on a padded space, then cut back
_PAD = 1.5


class TruncationError(RuntimeError):
    def __init__(self, deficit: float, cutoff: int):
        super().__init__(f"trace deficit {deficit:.3e} at cutoff {cutoff}")
        self.deficit = deficit
        self.cutoff = cutoff


@dataclass(frozen=True, eq=False)
class FockOperator:
    matrix: np.ndarray

    @property
    def cutoff(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace_deficit(self) -> float:
        return float(1 - np.trace(self.matrix).real)


def annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def number_operator(dim: int) -> np.ndarray:
    return np.diag(np.arange(dim, dtype=float))


def displacement_op(alpha: complex, dim: int) -> np.ndarray:
    a = annihilation(dim)
    return expm(alpha * a.conj().T - np.conj(alpha) * a)


def squeeze_op(xi: complex, dim: int) -> np.ndarray:
    """exp((xi* a^2 - xi a^dag^2)/2)."""
    a = annihilation(dim)
    ad = a.conj().T
    return expm((np.conj(xi) * a @ a - xi * ad @ ad) / 2)


def thermal_populations(N: float, dim: int) -> np.ndarray:
    if N == 0:
        p = np.zeros(dim)
        p[0] = 1.0
        return p
    k = np.arange(dim)
    return (N / (N + 1)) ** k / (N + 1)


def default_cutoff(p: GaussianPureParam) -> int:
    """Heuristic 8 (<n> + 1) max(z, nu), capped."""
    n_mean = (p.nu * (p.z + 1 / p.z) / 2 - 1) / 2 + p.mean_norm**2 / 2
    return int(min(MAX_CUTOFF, math.ceil(8 * (n_mean + 1) * max(p.z, p.nu))))


def gaussian_to_fock(p: GaussianPureParam, cutoff: int | None = None, max_deficit: float = 1e-6) -> FockOperator:
    """D(alpha) S(xi) rho_thermal S(xi)^dag D(alpha)^dag on levels 0..cutoff-1."""
    cutoff = default_cutoff(p) if cutoff is None else int(cutoff)
    if cutoff > MAX_CUTOFF:
        raise ValueError(f"cutoff {cutoff} exceeds the cap {MAX_CUTOFF}")
    big = int(math.ceil(_PAD * cutoff)) + 8
    m = p.mean()
    alpha = (m[0] + 1j * m[1]) / math.sqrt(2)
    # covariance f- (cos(theta) Z + sin(theta) X) needs squeezing phase theta + pi
    xi = 0.5 * math.log(p.z) * np.exp(1j * (p.theta + math.pi))
    U = displacement_op(alpha, big) @ squeeze_op(xi, big)
    rho_th = np.diag(thermal_populations((p.nu - 1) / 2, big)).astype(complex)
    rho = (U @ rho_th @ U.conj().T)[:cutoff, :cutoff]
    rho = (rho + rho.conj().T) / 2
    out = FockOperator(rho)
    if out.trace_deficit > max_deficit:
        raise TruncationError(out.trace_deficit, cutoff)
    return out


def adequate_fock(p: GaussianPureParam, max_deficit: float = 1e-10) -> FockOperator:
    """gaussian_to_fock with the cutoff grown from the heuristic until the deficit is met."""
    cutoff = max(default_cutoff(p), 16)
    while True:
        try:
            return gaussian_to_fock(p, cutoff, max_deficit)
        except TruncationError:
            if cutoff >= MAX_CUTOFF:
                raise
            cutoff = min(MAX_CUTOFF, int(cutoff * 1.5))


def _spectrum(rho: FockOperator, tol: float = 1e-10) -> np.ndarray:
    m = rho.matrix
    if np.max(np.abs(m - m.conj().T)) > 1e-10:
        raise ValueError("density matrix is not Hermitian")
    p = np.linalg.eigvalsh(m)
    if p[0] < -tol:
        raise ValueError(f"density matrix has negative eigenvalue {p[0]:.3e}")
    return np.clip(p, 0.0, None)


def energy_fock(rho: FockOperator) -> float:
    return float(np.sum(np.arange(rho.cutoff) * np.diag(rho.matrix).real))


def entropy_fock(rho: FockOperator) -> float:
    p = _spectrum(rho)
    p = p[p > 1e-15]
    return float(-np.sum(p * np.log(p)))


def passive_energy_fock(rho: FockOperator) -> float:
    p = np.sort(_spectrum(rho))[::-1]
    return float(np.sum(p * np.arange(p.size)))


def ergotropy_fock(rho: FockOperator) -> float:
    return max(energy_fock(rho) - passive_energy_fock(rho), 0.0)


def attenuator_fock(eta: float, rho: FockOperator) -> FockOperator:
    """Quantum-limited attenuator via its Kraus operators.

    A_k = sqrt((1-eta)^k / k!) eta^(n/2) a^k; photon number only decreases,
    so the truncated action is exact on the truncated input.
    """
    if not 0 <= eta <= 1:
        raise ValueError("transmissivity must lie in [0, 1]")
    dim = rho.cutoff
    n = np.arange(dim)
    out = np.zeros((dim, dim), dtype=complex)
    with np.errstate(divide="ignore"):
        log_eta = math.log(eta) if eta > 0 else -np.inf
        log_loss = math.log(1 - eta) if eta < 1 else -np.inf
    for k in range(dim):
        # amplitude <n-k| A_k |n> = sqrt(C(n, k) (1-eta)^k eta^(n-k))
        src = n[k:]
        log_c = gammaln(src + 1) - gammaln(k + 1) - gammaln(src - k + 1)
        with np.errstate(invalid="ignore"):
            log_amp = 0.5 * (log_c + np.where(k > 0, k * log_loss, 0.0)
                             + np.where(src - k > 0, (src - k) * log_eta, 0.0))
        amp = np.exp(log_amp)
        if not np.any(amp):
            continue
        A = np.zeros((dim, dim))
        A[src - k, src] = amp
        out += A @ rho.matrix @ A.T
    return FockOperator((out + out.conj().T) / 2)


def unitary_fock(U: np.ndarray, rho: FockOperator) -> FockOperator:
    m = U @ rho.matrix @ U.conj().T
    return FockOperator((m + m.conj().T) / 2)


def squeezer_fock(zeta: float, dim: int) -> np.ndarray:
    """Unitary scaling q by sqrt(zeta) and p by 1/sqrt(zeta), truncated from a padded space."""
    big = int(math.ceil(_PAD * dim)) + 8
    return squeeze_op(-0.5 * math.log(zeta), big)[:dim, :dim]


def moments_fock(rho: FockOperator) -> tuple[np.ndarray, np.ndarray]:
    """Mean vector (q, p) and covariance matrix read off a Fock density matrix."""
    dim = rho.cutoff
    a = annihilation(dim + 2)
    ad = a.conj().T
    q = (a + ad) / math.sqrt(2)
    p = (a - ad) / (1j * math.sqrt(2))
    sl = slice(0, dim)
    ops = {
        "q": q[sl, sl], "p": p[sl, sl],
        "qq": (q @ q)[sl, sl], "pp": (p @ p)[sl, sl], "qp": (q @ p + p @ q)[sl, sl],
    }
    ev = {k: float(np.trace(rho.matrix @ o).real) for k, o in ops.items()}
    mean = np.array([ev["q"], ev["p"]])
    cov = np.array([
        [2 * (ev["qq"] - ev["q"] ** 2), ev["qp"] - 2 * ev["q"] * ev["p"]],
        [ev["qp"] - 2 * ev["q"] * ev["p"], 2 * (ev["pp"] - ev["p"] ** 2)],
    ])
    return mean, cov


def eigenvalue_partial_sums(rho: FockOperator) -> np.ndarray:
    """Cumulative sums of the spectrum sorted descending (majorization profile)."""
    return np.cumsum(np.sort(_spectrum(rho))[::-1])
