"""Phase-space linear algebra: symplectic form, validity cones, symplectic spectra.

Quadratures are ordered as (q_1, ..., q_n, p_1, ..., p_n) everywhere in the
package. The vacuum covariance matrix is the identity.
"""

from __future__ import annotations

import numpy as np

# relative to the largest |eigenvalue| of the tested matrix
PSD_TOL = 1e-9


def symplectic_form(n: int) -> np.ndarray:
    """Return the 2n x 2n block matrix ((0, I), (-I, 0))."""
    if int(n) != n or n < 1:
        raise ValueError(f"mode count must be a positive integer, got {n!r}")
    n = int(n)
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def _modes(dim: int) -> int:
    if dim % 2:
        raise ValueError(f"phase-space dimension must be even, got {dim}")
    return dim // 2


def _is_psd_hermitian(h: np.ndarray, tol: float) -> bool:
    eig = np.linalg.eigvalsh(h)
    scale = max(1.0, float(np.max(np.abs(eig))))
    return bool(eig[0] >= -tol * scale)


def check_symmetric(m: np.ndarray, tol: float = PSD_TOL, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 1.0)
    if np.max(np.abs(m - m.T), initial=0.0) > tol * scale:
        raise ValueError(f"{name} is not symmetric")
    return m


def is_valid_covariance(sigma: np.ndarray, tol: float = PSD_TOL) -> bool:
    """True iff sigma + i*gamma is positive semidefinite (uncertainty relation)."""
    sigma = check_symmetric(sigma, tol, "covariance")
    n = _modes(sigma.shape[0])
    return _is_psd_hermitian(sigma + 1j * symplectic_form(n), tol)


def is_valid_channel(X: np.ndarray, Y: np.ndarray, tol: float = PSD_TOL) -> bool:
    """Complete-positivity test Y - i(gamma_out - X gamma_in X^T) >= 0."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.ndim != 2 or Y.ndim != 2:
        raise ValueError("X and Y must be 2-d arrays")
    if Y.shape[0] != Y.shape[1] or X.shape[0] != Y.shape[0]:
        raise ValueError(f"shape mismatch: X {X.shape}, Y {Y.shape}")
    n_out = _modes(X.shape[0])
    n_in = _modes(X.shape[1])
    Y = check_symmetric(Y, tol, "Y")
    kernel = symplectic_form(n_out) - X @ symplectic_form(n_in) @ X.T
    return _is_psd_hermitian(Y - 1j * kernel, tol)


def symplectic_eigenvalues(sigma: np.ndarray, tol: float = PSD_TOL) -> np.ndarray:
    """Symplectic spectrum of a valid covariance matrix, in descending order.

    For one mode this is sqrt(det sigma), computed directly.
    """
    sigma = check_symmetric(sigma, tol, "covariance")
    if not is_valid_covariance(sigma, tol):
        raise ValueError("not a valid covariance matrix")
    n = sigma.shape[0] // 2
    if n == 1:
        det = sigma[0, 0] * sigma[1, 1] - sigma[0, 1] * sigma[1, 0]
        return np.array([np.sqrt(max(det, 0.0))])
    eig = np.linalg.eigvals(1j * symplectic_form(n) @ sigma)
    # spectrum is {+nu_k, -nu_k}; keep one copy of each modulus
    moduli = np.sort(np.abs(eig.real))[::-1]
    return moduli[0::2].copy()


def largest_singular_structure(X: np.ndarray) -> tuple[float, np.ndarray]:
    """Largest eigenvalue of X^T X and a unit vector w attaining |Xw|^2 = Lambda_1."""
    X = np.asarray(X, dtype=float)
    if not np.any(X):
        raise ValueError("X must be nonzero")
    vals, vecs = np.linalg.eigh(X.T @ X)
    w = vecs[:, -1]
    # deterministic sign
    k = int(np.argmax(np.abs(w)))
    if w[k] < 0:
        w = -w
    return float(vals[-1]), w


def rotation(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def random_symplectic(n: int, rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    """Random symplectic matrix exp(gamma H) with H symmetric Gaussian of spread `scale`."""
    from scipy.linalg import expm

    a = rng.normal(scale=scale, size=(2 * n, 2 * n))
    h = (a + a.T) / 2
    return expm(symplectic_form(n) @ h)
