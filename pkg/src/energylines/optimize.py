"""Energy-constrained maximization of output ergotropy over one-mode Gaussian inputs.

A one-mode channel is first brought to a normal form by proper rotations on
either side, X' = diag(sqrt(L1), sqrt(L2)) with L1 >= L2, and the rotated
noise matrix is written as Y' = yI*I + yx*PauliX + yz*PauliZ. Inputs are
displaced squeezed thermal states (z, theta, nu) whose mean carries whatever
energy the covariance leaves over. With no output displacement the objective
splits into an E-independent part in (z, theta) and a constant, so the
optimal covariance does not depend on E except through the squeezing cap
z_max(E).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .channels import GaussianChannel
from .golden import golden_max
from .states import (
    GaussianState,
    PAULI_Z,
    f_minus,
    f_plus,
    mean_energy,
    squeezed_covariance,
)

TWO_PI = 2 * math.pi
GRID = 64
PARAM_TOL = 1e-10
_MEAN_ANGLES = np.linspace(0, TWO_PI, 256, endpoint=False)


class InfeasibleConstraint(ValueError):
    """Entropy demand (nu) exceeds what the energy budget allows."""


@dataclass(frozen=True, eq=False)
class NormalFormChannel:
    lam1: float
    lam2: float
    y_I: float
    y_x: float
    y_z: float
    output_rotation: np.ndarray
    input_rotation: np.ndarray
    reflection_flag: bool = False
    # output displacement, expressed in the normal frame
    v: np.ndarray = None

    def __post_init__(self):
        if self.v is None:
            object.__setattr__(self, "v", np.zeros(2))

    @classmethod
    def from_params(cls, lam1, lam2, y_I, y_x=0.0, y_z=0.0) -> "NormalFormChannel":
        return cls(lam1, lam2, y_I, y_x, y_z, np.eye(2), np.eye(2))

    @property
    def X(self) -> np.ndarray:
        """Channel X matrix in the original frame."""
        refl = PAULI_Z if self.reflection_flag else np.eye(2)
        d = np.diag([math.sqrt(self.lam1), math.sqrt(self.lam2)])
        return self.output_rotation @ refl @ d @ self.input_rotation.T

    @property
    def Y(self) -> np.ndarray:
        refl = PAULI_Z if self.reflection_flag else np.eye(2)
        y = np.array([[self.y_I + self.y_z, self.y_x], [self.y_x, self.y_I - self.y_z]])
        o = self.output_rotation @ refl
        return o @ y @ o.T

    @property
    def displaced(self) -> bool:
        return bool(np.any(self.v != 0))

    def channel(self) -> GaussianChannel:
        refl = PAULI_Z if self.reflection_flag else np.eye(2)
        return GaussianChannel(self.X, self.Y, self.output_rotation @ refl @ self.v)


@dataclass(frozen=True, eq=False)
class OptimizationResult:
    z_star: float
    theta_star: float
    nu: float
    mean: np.ndarray
    value: float
    clamped: bool
    input_state: GaussianState
    energy: float


def _proper(m: np.ndarray) -> bool:
    return np.linalg.det(m) > 0


def normalize(channel: GaussianChannel) -> NormalFormChannel:
    """Rotate a one-mode channel to X' = diag(sqrt(L1), sqrt(L2)), L1 >= L2.

    X = O_out R X' O_in^T with O_out, O_in proper rotations. When det X < 0 a
    reflection R = PauliZ is left on the output side; conjugating the noise by
    it flips the sign of yx, which is all the optimizer needs to know.
    """
    if channel.n_in != 1 or channel.n_out != 1:
        raise ValueError("normal form is defined for one-mode channels only")
    U, s, Vt = np.linalg.svd(channel.X)
    Z = PAULI_Z
    reflect = False
    if _proper(U) and _proper(Vt):
        O1, O2t = U, Vt
    elif not _proper(U) and not _proper(Vt):
        O1, O2t = U @ Z, Z @ Vt
    elif not _proper(U):
        O1, O2t, reflect = U @ Z, Vt, True
    else:
        O1, O2t, reflect = U, Z @ Vt, True
    R = Z if reflect else np.eye(2)
    frame = O1 @ R
    Yn = frame.T @ channel.Y @ frame
    vn = frame.T @ channel.v
    return NormalFormChannel(
        lam1=float(s[0] ** 2),
        lam2=float(s[1] ** 2),
        y_I=float((Yn[0, 0] + Yn[1, 1]) / 2),
        y_x=float((Yn[0, 1] + Yn[1, 0]) / 2),
        y_z=float((Yn[0, 0] - Yn[1, 1]) / 2),
        output_rotation=O1,
        input_rotation=O2t.T,
        reflection_flag=reflect,
        v=vn,
    )


def _as_normal_form(obj) -> NormalFormChannel:
    return obj if isinstance(obj, NormalFormChannel) else normalize(obj)


# energy bookkeeping -----------------------------------------------------------


def mean_norm_sq(z: float, nu: float, energy: float) -> float:
    """|m|^2 left for the mean when the covariance is nu * squeezed(z); clipped at 0."""
    return max(2 * energy + 1 - nu * f_plus(z), 0.0)


def z_max(energy: float, nu: float = 1.0) -> float:
    """Largest squeezing reachable with all energy in the covariance."""
    if energy < 0:
        raise ValueError("energy must be nonnegative")
    if nu < 1:
        raise ValueError("nu must be >= 1")
    a = (2 * energy + 1) / nu
    if a < 1 - 1e-15:
        raise InfeasibleConstraint(
            f"energy {energy} cannot support a state with symplectic eigenvalue {nu}"
        )
    a = max(a, 1.0)
    return a + math.sqrt(a * a - 1)


# objective ------------------------------------------------------------------


def _output_entries(nf: NormalFormChannel, z, theta, nu):
    """Entries (s11, s22, s12) and determinant of X' sigma X'^T + Y'.

    Written so that no entry is a difference of large numbers: at strong
    squeezing the small eigenvalue would otherwise drown in rounding.
    """
    c, s = math.cos(theta), math.sin(theta)
    p = z * (1 + c) / 2 + (1 - c) / (2 * z)  # f+ + f- cos
    q = z * (1 - c) / 2 + (1 + c) / (2 * z)  # f+ - f- cos
    a11 = nf.lam1 * nu * p
    a22 = nf.lam2 * nu * q
    a12 = math.sqrt(nf.lam1 * nf.lam2) * nu * f_minus(z) * s
    y11, y22, y12 = nf.y_I + nf.y_z, nf.y_I - nf.y_z, nf.y_x
    # det(A + Y) with det A = L1 L2 nu^2 taken exactly
    det = nf.lam1 * nf.lam2 * nu * nu + a11 * y22 + a22 * y11 - 2 * a12 * y12 + (y11 * y22 - y12 * y12)
    return a11 + y11, a22 + y22, a12 + y12, det


def _eigen_pair(nf, z, theta, nu):
    s11, s22, s12, det = _output_entries(nf, z, theta, nu)
    centre, radius = (s11 + s22) / 2, math.hypot((s11 - s22) / 2, s12)
    l1 = centre + radius
    # small eigenvalue from the determinant, not from centre - radius
    l2 = max(det, 0.0) / l1 if l1 > 0 else 0.0
    return l1, l2, radius


def output_eigenvalues(nf, z: float, theta: float, nu: float = 1.0) -> tuple[float, float]:
    """Eigenvalues (descending) of the output covariance for input (z, theta, nu)."""
    nf = _as_normal_form(nf)
    if z < 1 or nu < 1:
        raise ValueError("need z >= 1 and nu >= 1")
    l1, l2, _ = _eigen_pair(nf, z, theta, nu)
    return l1, l2


def _covariance_part(nf: NormalFormChannel, z, theta, nu) -> float:
    # (sqrt(l1) - sqrt(l2))^2 / 4 = (radius / (sqrt(l1) + sqrt(l2)))^2, no cancellation
    l1, l2, radius = _eigen_pair(nf, z, theta, nu)
    denom = math.sqrt(l1) + math.sqrt(l2)
    return (radius / denom) ** 2 if denom > 0 else 0.0


def output_mean_gain(nf: NormalFormChannel, r: float, refine: bool = True) -> tuple[float, np.ndarray]:
    """max over unit u of |X' r u + v'|^2 and the maximizing u (normal frame).

    With refine=False only the 256-angle grid is searched (used for coarse scans).
    """
    a, b = math.sqrt(nf.lam1), math.sqrt(nf.lam2)
    v = nf.v
    if not nf.displaced:
        return nf.lam1 * r * r, np.array([1.0, 0.0])
    if r == 0:
        return float(v @ v), np.array([1.0, 0.0])

    def f(phi):
        return (a * r * math.cos(phi) + v[0]) ** 2 + (b * r * math.sin(phi) + v[1]) ** 2

    phis = _MEAN_ANGLES
    vals = (a * r * np.cos(phis) + v[0]) ** 2 + (b * r * np.sin(phis) + v[1]) ** 2
    k = int(np.argmax(vals))
    if not refine:
        return float(vals[k]), np.array([math.cos(phis[k]), math.sin(phis[k])])
    h = TWO_PI / phis.size
    phi, val = golden_max(f, phis[k] - h, phis[k] + h, tol=1e-13)
    return val, np.array([math.cos(phi), math.sin(phi)])


def objective(nf, z: float, theta: float, nu: float, energy: float) -> float:
    """Output ergotropy for input (z, theta, nu) at energy E with the best mean direction."""
    nf = _as_normal_form(nf)
    zm = z_max(energy, nu)
    if z < 1 or z > zm * (1 + 1e-12):
        raise ValueError(f"z = {z} outside [1, z_max = {zm}]")
    m2 = mean_norm_sq(z, nu, energy)
    gain, _ = output_mean_gain(nf, math.sqrt(m2))
    return _covariance_part(nf, z, theta, nu) + gain / 2


def _reduced(nf: NormalFormChannel, nu: float, energy: float, coarse: bool = False):
    """Objective up to an E-dependent constant, as a function of (log z, theta).

    coarse=True only matters with an output displacement: the mean direction is
    then taken from a grid instead of being refined.
    """
    if nf.displaced:
        zm = z_max(energy, nu)

        def g_displaced(u, t):
            z = min(math.exp(u), zm)
            gain, _ = output_mean_gain(nf, math.sqrt(mean_norm_sq(z, nu, energy)), refine=not coarse)
            return _covariance_part(nf, z, t, nu) + gain / 2

        return g_displaced
    half_gain = nf.lam1 * nu / 2

    def g(u, t):
        z = math.exp(u)
        return _covariance_part(nf, z, t, nu) - half_gain * f_plus(z)

    return g


def input_state(nf, z: float, theta: float, nu: float, energy: float) -> GaussianState:
    """Input state in the original frame for normal-frame parameters (z, theta, nu)."""
    nf = _as_normal_form(nf)
    m2 = mean_norm_sq(z, nu, energy)
    _, u = output_mean_gain(nf, math.sqrt(m2))
    O = nf.input_rotation
    cov = O @ squeezed_covariance(z, theta, nu) @ O.T
    return GaussianState(O @ (math.sqrt(m2) * u), cov)


def _frame_angle(nf: NormalFormChannel, theta: float) -> float:
    alpha = math.atan2(nf.input_rotation[1, 0], nf.input_rotation[0, 0])
    angle = (theta + 2 * alpha) % TWO_PI
    # report 0 rather than 2pi - tiny
    return 0.0 if TWO_PI - angle < 1e-9 else angle


def _refine(g, u, t, umax, hu, ht, max_sweeps=200):
    """Alternating golden-section sweeps from a grid point."""
    best = g(u, t)
    stalled = 0
    for _ in range(max_sweeps):
        u0, t0, prev = u, t, best
        if ht > 0:
            t, best = golden_max(lambda x: g(u, x), t - ht, t + ht, tol=PARAM_TOL)
        if umax > 0:
            u, best = golden_max(lambda x: g(x, t), max(0.0, u - hu), min(umax, u + hu), tol=PARAM_TOL)
        if abs(u - u0) <= PARAM_TOL and abs(t - t0) <= PARAM_TOL:
            break
        # a flat direction never settles in position; stop once the value has
        if best - prev <= 4 * np.finfo(float).eps * max(1.0, abs(best)):
            stalled += 1
            if stalled >= 2:
                break
        else:
            stalled = 0
    # golden search stalls near sqrt(eps) on a flat top; finish on the
    # central-difference derivative instead
    u_g, t_g = u, t
    for _ in range(3):
        t = _polish(lambda x: g(u, x), t, -math.inf, math.inf)
        if umax > 0:
            u = _polish(lambda x: g(x, t), u, 0.0, umax)
    val = g(u, t)
    # values agree to rounding on a flat top; only reject a real loss
    if val >= best - 1e-12 * max(1.0, abs(best)):
        return u, t, val
    return u_g, t_g, best


def _polish(f, x, lo, hi, step=1e-5):
    """Root of the central-difference derivative near x, bracket widened until it changes sign."""
    def deriv(y):
        return (f(y + step) - f(y - step)) / (2 * step)

    for delta in (1e-6, 1e-5, 1e-4, 1e-3):
        a, b = max(lo + step, x - delta), min(hi - step, x + delta)
        if b <= a:
            return x
        if deriv(a) > 0 > deriv(b):
            return brentq(deriv, a, b, xtol=1e-14)
    return x


def _grid_peaks(values: np.ndarray, count: int):
    """Indices of the `count` best grid points that are local maxima (theta periodic)."""
    nu_, nt = values.shape
    peaks = []
    for i in range(nu_):
        for j in range(nt):
            v = values[i, j]
            neigh = [values[(i + di), (j + dj) % nt] for di in (-1, 0, 1) for dj in (-1, 0, 1)
                     if (di or dj) and 0 <= i + di < nu_]
            if all(v >= w for w in neigh):
                peaks.append((v, i, j))
    peaks.sort(reverse=True)
    return [(i, j) for _, i, j in peaks[:count]]


def maximize(channel, energy: float, nu: float = 1.0, grid: int = GRID) -> OptimizationResult:
    """Maximal output ergotropy over one-mode Gaussian inputs of mean energy `energy`.

    Coarse grid over log z in [0, log z_max] x theta in [0, 2pi), then
    alternating golden-section refinement from the best grid peaks.
    """
    nf = _as_normal_form(channel)
    zm = z_max(energy, nu)
    umax = math.log(zm)
    g = _reduced(nf, nu, energy)

    us = np.linspace(0.0, umax, grid) if umax > 0 else np.zeros(1)
    ts = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    g_grid = _reduced(nf, nu, energy, coarse=True)
    values = np.array([[g_grid(u, t) for t in ts] for u in us])
    hu = us[1] - us[0] if us.size > 1 else 0.0
    ht = ts[1] - ts[0]

    # z = 1 makes theta irrelevant; it is the reference candidate
    best_u, best_t, best_val = 0.0, 0.0, g(0.0, 0.0)
    scale = max(1.0, abs(best_val))
    # every theta ties on the z = 1 row, so its "peaks" carry no direction;
    # that row is covered by the reference candidate above
    starts = [(i + 1, j) for i, j in _grid_peaks(values[1:], 4)] if us.size > 1 else []
    for i, j in starts:
        u, t, val = _refine(g, us[i], ts[j], umax, hu, ht)
        if val > best_val + 1e-14 * scale:
            best_u, best_t, best_val = u, t, val

    clamped = False
    if umax > 0:
        # g subtracts terms of size L1 nu f+(z)/2, so ties at the cap are only
        # meaningful up to that rounding floor; the cap wins such ties
        floor = 64 * np.finfo(float).eps * (nf.lam1 * nu * f_plus(zm) + abs(best_val) + 1)
        if umax - best_u <= 1e-8 or g(umax, best_t) >= best_val - floor:
            best_u = umax
    if umax > 0 and best_u >= umax:
        if nf.displaced:
            clamped = True
        else:
            # does the E-independent optimum lie beyond the cap? slope sign at the cap
            h = 1e-4
            clamped = g(umax + h, best_t) > g(umax - h, best_t)
    z_star = zm if best_u >= umax else math.exp(best_u)
    theta = best_t % TWO_PI if z_star > 1 else 0.0

    state = input_state(nf, z_star, theta, nu, energy)
    value = objective(nf, z_star, theta, nu, energy)
    return OptimizationResult(
        z_star=z_star,
        theta_star=_frame_angle(nf, theta) if z_star > 1 else 0.0,
        nu=nu,
        mean=state.mean,
        value=value,
        clamped=bool(clamped),
        input_state=state,
        energy=energy,
    )


# stationarity conditions -------------------------------------------------------


def _diag_noise_derivative(nf: NormalFormChannel, z: float) -> float:
    """d/dz of the objective at theta = 0, for z in (0, inf), nu = 1, yx = 0.

    z < 1 stands for squeezing 1/z along theta = pi.
    """
    l1, l2, yi, yz = nf.lam1, nf.lam2, nf.y_I, nf.y_z
    num = -2 * z * z * l1 * yi + 2 * l2 * yi + 2 * z * z * l1 * yz + 2 * l2 * yz
    s = z * z * l1 + l2 + 2 * z * yi
    d = z * z * l1 - l2 + 2 * z * yz
    rad = s * s - d * d
    if rad <= 0:
        return math.nan
    return (num / math.sqrt(rad) + (l1 - l2) / z) / (4 * z)


def _isotropic_noise_derivative(nf: NormalFormChannel, z: float) -> float:
    """The yz = yx = 0 reduction of the diagonal-noise derivative."""
    l1, l2, yi = nf.lam1, nf.lam2, nf.y_I
    prod = (yi + l1 * z) * (yi + l2 / z)
    if prod <= 0:
        return math.nan
    return (-yi * (l1 * z - l2 / z) / math.sqrt(prod) + (l1 - l2) / z) / (4 * z)


def _bracketed_roots(f, log_span=18.0, samples=4000):
    us = np.linspace(-log_span, log_span, samples)
    vals = np.array([f(math.exp(u)) for u in us])
    roots = []
    for k in range(samples - 1):
        a, b = vals[k], vals[k + 1]
        if not (np.isfinite(a) and np.isfinite(b)):
            continue
        if a == 0:
            roots.append(math.exp(us[k]))
        elif a * b < 0:
            u = brentq(lambda x: f(math.exp(x)), us[k], us[k + 1], xtol=1e-14, rtol=1e-15)
            roots.append(math.exp(u))
    return roots


def _canonical(roots):
    out = []
    for r in roots:
        out.append((r, 0.0) if r >= 1 else (1 / r, math.pi))
    return sorted(out)


def stationary_z_diagonal_noise(nf, tol: float = 1e-12) -> list[tuple[float, float]]:
    """Stationary points of the objective along theta in {0, pi} when yx = 0.

    Returns (z, theta) pairs with z >= 1, one per sign change of the
    z-derivative on (0, inf); a root r < 1 of the theta = 0 branch is
    reported as (1/r, pi).
    """
    nf = _as_normal_form(nf)
    if abs(nf.y_x) > tol:
        raise ValueError("noise matrix is not diagonal in the squeezing frame (yx != 0)")
    return _canonical(_bracketed_roots(lambda z: _diag_noise_derivative(nf, z)))


def stationary_z_isotropic_noise(nf, tol: float = 1e-12) -> list[tuple[float, float]]:
    nf = _as_normal_form(nf)
    if abs(nf.y_x) > tol or abs(nf.y_z) > tol:
        raise ValueError("noise matrix is not proportional to the identity")
    return _canonical(_bracketed_roots(lambda z: _isotropic_noise_derivative(nf, z)))


def asymptotic_ratio(channel) -> float:
    """Large-energy limit of max output ergotropy / E."""
    return _as_normal_form(channel).lam1


def output_energy(channel: GaussianChannel, result: OptimizationResult) -> float:
    from .channels import apply

    return mean_energy(apply(channel, result.input_state))
