"""Gaussian states described by first and second moments.

Energies are vacuum-subtracted, in units of the mode frequency:
E = Tr(sigma)/4 + |m|^2/2 - n/2. Entropies are in nats.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .symplectic import is_valid_covariance, symplectic_eigenvalues

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


@dataclass(frozen=True, eq=False)
class GaussianState:
    mean: np.ndarray
    cov: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float).reshape(-1)
        cov = np.array(self.cov, dtype=float)
        if cov.ndim != 2 or cov.shape != (mean.size, mean.size) or mean.size % 2:
            raise ValueError(f"inconsistent moments: mean {mean.shape}, cov {cov.shape}")
        cov = (cov + cov.T) / 2 if np.allclose(cov, cov.T, atol=1e-12, rtol=1e-9) else cov
        if not is_valid_covariance(cov):
            raise ValueError("covariance violates the uncertainty relation")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "n", mean.size // 2)

    def to_json(self) -> dict:
        return {"n": self.n, "mean": self.mean.tolist(), "cov": self.cov.reshape(-1).tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "GaussianState":
        mean = np.asarray(data["mean"], dtype=float)
        cov = np.asarray(data["cov"], dtype=float)
        dim = mean.size
        if "n" in data and 2 * int(data["n"]) != dim:
            raise ValueError("field 'n' disagrees with the mean vector length")
        return cls(mean, cov.reshape(dim, dim))

    def allclose(self, other: "GaussianState", atol: float = 1e-12) -> bool:
        return (
            self.n == other.n
            and np.allclose(self.mean, other.mean, rtol=0, atol=atol)
            and np.allclose(self.cov, other.cov, rtol=0, atol=atol)
        )


@dataclass(frozen=True)
class GaussianPureParam:
    """One-mode displaced, squeezed thermal state.

    z is the squeezing degree (eigenvalues nu*z, nu/z of the covariance),
    theta the squeezing direction, nu >= 1 the symplectic eigenvalue.
    """

    z: float = 1.0
    theta: float = 0.0
    nu: float = 1.0
    mean_norm: float = 0.0
    mean_dir: tuple[float, float] = (1.0, 0.0)

    def __post_init__(self):
        if self.z < 1:
            raise ValueError(f"squeezing degree z must be >= 1, got {self.z}")
        if self.nu < 1:
            raise ValueError(f"symplectic eigenvalue nu must be >= 1, got {self.nu}")
        if self.mean_norm < 0:
            raise ValueError("mean_norm must be nonnegative")
        d = np.asarray(self.mean_dir, dtype=float)
        norm = np.linalg.norm(d)
        if d.shape != (2,) or norm == 0:
            raise ValueError("mean_dir must be a nonzero 2-vector")
        object.__setattr__(self, "mean_dir", (float(d[0] / norm), float(d[1] / norm)))

    def covariance(self) -> np.ndarray:
        return squeezed_covariance(self.z, self.theta, self.nu)

    def mean(self) -> np.ndarray:
        return self.mean_norm * np.asarray(self.mean_dir)


def f_plus(z):
    return (z + 1 / z) / 2


def f_minus(z):
    return (z - 1 / z) / 2


def squeezed_covariance(z: float, theta: float, nu: float = 1.0) -> np.ndarray:
    """nu * [f+(z) I + f-(z) (sin(theta) X + cos(theta) Z)] with Pauli X, Z."""
    return nu * (
        f_plus(z) * np.eye(2) + f_minus(z) * (np.sin(theta) * PAULI_X + np.cos(theta) * PAULI_Z)
    )


def vacuum(n: int = 1) -> GaussianState:
    return GaussianState(np.zeros(2 * n), np.eye(2 * n))


def coherent(mean) -> GaussianState:
    mean = np.asarray(mean, dtype=float).reshape(-1)
    return GaussianState(mean, np.eye(mean.size))


def coherent_with_energy(energy: float, direction=(1.0, 0.0)) -> GaussianState:
    """Coherent state of mean energy `energy` with mean along `direction`."""
    if energy < 0:
        raise ValueError("energy must be nonnegative")
    d = np.asarray(direction, dtype=float)
    return coherent(np.sqrt(2 * energy) * d / np.linalg.norm(d))


def thermal(N: float, n: int = 1) -> GaussianState:
    if N < 0:
        raise ValueError(f"mean photon number must be nonnegative, got {N}")
    return GaussianState(np.zeros(2 * n), (2 * N + 1) * np.eye(2 * n))


def displaced_squeezed_thermal(p: GaussianPureParam) -> GaussianState:
    return GaussianState(p.mean(), p.covariance())


def product(*states: GaussianState) -> GaussianState:
    """Tensor product, re-ordered to (q_1..q_n, p_1..p_n)."""
    qs = [s.mean[: s.n] for s in states]
    ps = [s.mean[s.n :] for s in states]
    mean = np.concatenate(qs + ps)
    n = sum(s.n for s in states)
    cov = np.zeros((2 * n, 2 * n))
    offset = 0
    for s in states:
        idx = np.r_[offset : offset + s.n, n + offset : n + offset + s.n]
        cov[np.ix_(idx, idx)] = s.cov
        offset += s.n
    return GaussianState(mean, cov)


def mean_energy(s: GaussianState) -> float:
    return float(np.trace(s.cov) / 4 + s.mean @ s.mean / 2 - s.n / 2)


def bose_entropy(x):
    """g(x) = (x+1) ln(x+1) - x ln x, the entropy of a thermal mode with x photons."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("photon number must be nonnegative")
    safe = np.where(x > 0, x, 1.0)
    # x ln(1 + 1/x): 1/x overflows for subnormal x, the split form cancels for large x
    small = x * np.log1p(safe) - x * np.log(safe)
    large = x * np.log1p(1 / np.maximum(safe, 1.0))
    tail = np.where(x >= 1, large, np.where(x > 0, small, 0.0))
    out = np.log1p(x) + tail
    return float(out) if out.ndim == 0 else out


def von_neumann_entropy(s: GaussianState) -> float:
    nus = symplectic_eigenvalues(s.cov)
    occupations = np.clip((nus - 1) / 2, 0.0, None)
    # nu = 1 up to rounding counts as pure
    occupations[occupations < 1e-13] = 0.0
    return float(np.sum(np.atleast_1d(bose_entropy(occupations))))
