"""Bosonic Gaussian channels acting on moments: m -> X m + v, sigma -> X sigma X^T + Y."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .states import GaussianState
from .symplectic import PSD_TOL, is_valid_channel, symplectic_form


@dataclass(frozen=True, eq=False)
class GaussianChannel:
    X: np.ndarray
    Y: np.ndarray
    v: np.ndarray | None = None
    n_in: int = field(init=False)
    n_out: int = field(init=False)

    def __post_init__(self):
        X = np.array(self.X, dtype=float)
        Y = np.array(self.Y, dtype=float)
        if X.ndim != 2 or X.shape[0] % 2 or X.shape[1] % 2:
            raise ValueError(f"X must be 2n_out x 2n_in, got shape {X.shape}")
        v = np.zeros(X.shape[0]) if self.v is None else np.array(self.v, dtype=float).reshape(-1)
        if v.size != X.shape[0]:
            raise ValueError("v must have length 2n_out")
        if np.allclose(Y, Y.T, atol=1e-12, rtol=1e-9):
            Y = (Y + Y.T) / 2
        if not is_valid_channel(X, Y):
            raise ValueError("(X, Y) violates the complete-positivity condition")
        for arr in (X, Y, v):
            arr.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "n_out", X.shape[0] // 2)
        object.__setattr__(self, "n_in", X.shape[1] // 2)

    def __call__(self, state: GaussianState) -> GaussianState:
        return apply(self, state)

    def allclose(self, other: "GaussianChannel", atol: float = 1e-12) -> bool:
        return (
            self.X.shape == other.X.shape
            and np.allclose(self.X, other.X, rtol=0, atol=atol)
            and np.allclose(self.Y, other.Y, rtol=0, atol=atol)
            and np.allclose(self.v, other.v, rtol=0, atol=atol)
        )


def identity(n: int = 1) -> GaussianChannel:
    return GaussianChannel(np.eye(2 * n), np.zeros((2 * n, 2 * n)))


def lossy(eta: float, N: float = 0.0) -> GaussianChannel:
    """Thermal attenuator of transmissivity eta with environment photon number N."""
    if not 0 <= eta <= 1:
        raise ValueError(f"transmissivity must lie in [0, 1], got {eta}")
    if N < 0:
        raise ValueError(f"environment photon number must be >= 0, got {N}")
    return GaussianChannel(np.sqrt(eta) * np.eye(2), (1 - eta) * (2 * N + 1) * np.eye(2))


def amplifier(mu: float, N: float = 0.0) -> GaussianChannel:
    if mu < 1:
        raise ValueError(f"gain must be >= 1, got {mu}")
    if N < 0:
        raise ValueError(f"environment photon number must be >= 0, got {N}")
    return GaussianChannel(np.sqrt(mu) * np.eye(2), (mu - 1) * (2 * N + 1) * np.eye(2))


def additive_noise(N: float) -> GaussianChannel:
    if N < 0:
        raise ValueError(f"noise photon number must be >= 0, got {N}")
    return GaussianChannel(np.eye(2), 2 * N * np.eye(2))


def squeezer(zeta: float) -> GaussianChannel:
    """Unitary squeezing stretching q by sqrt(zeta) and compressing p by the same factor."""
    if zeta < 1:
        raise ValueError(f"squeezing parameter must be >= 1, got {zeta}")
    return GaussianChannel(np.diag([np.sqrt(zeta), 1 / np.sqrt(zeta)]), np.zeros((2, 2)))


def compose(second: GaussianChannel, first: GaussianChannel) -> GaussianChannel:
    """The channel `second` after `first`."""
    if first.n_out != second.n_in:
        raise ValueError(f"cannot feed {first.n_out} modes into a {second.n_in}-mode channel")
    X2 = second.X
    return GaussianChannel(
        X2 @ first.X,
        X2 @ first.Y @ X2.T + second.Y,
        X2 @ first.v + second.v,
    )


def attenuated_squeezer(eta: float, zeta: float) -> GaussianChannel:
    return compose(lossy(eta, 0.0), squeezer(zeta))


def amplified_squeezer(mu: float, zeta: float) -> GaussianChannel:
    return compose(amplifier(mu, 0.0), squeezer(zeta))


def direct_sum(*channels: GaussianChannel) -> GaussianChannel:
    """Independent channels on consecutive modes, in (q..., p...) ordering."""
    n_in = sum(c.n_in for c in channels)
    n_out = sum(c.n_out for c in channels)
    X = np.zeros((2 * n_out, 2 * n_in))
    Y = np.zeros((2 * n_out, 2 * n_out))
    v = np.zeros(2 * n_out)
    oi = oo = 0
    for c in channels:
        rows = np.r_[oo : oo + c.n_out, n_out + oo : n_out + oo + c.n_out]
        cols = np.r_[oi : oi + c.n_in, n_in + oi : n_in + oi + c.n_in]
        X[np.ix_(rows, cols)] = c.X
        Y[np.ix_(rows, rows)] = c.Y
        v[rows] = c.v
        oi += c.n_in
        oo += c.n_out
    return GaussianChannel(X, Y, v)


def apply(channel: GaussianChannel, state: GaussianState) -> GaussianState:
    if state.n != channel.n_in:
        raise ValueError(f"{state.n}-mode state fed to a {channel.n_in}-mode channel")
    X = channel.X
    return GaussianState(X @ state.mean + channel.v, X @ state.cov @ X.T + channel.Y)


def is_phase_insensitive(channel: GaussianChannel, tol: float = PSD_TOL) -> bool:
    """Covariance (or contravariance) under free evolution, tested on the moments.

    Free evolution rotates phase space with generator gamma_n. The channel is
    phase-insensitive when v = 0, Y commutes with gamma_out and X either
    intertwines (X gamma_in = gamma_out X) or anti-intertwines the generators.
    For one mode this is exactly X = x * rotation (or x * reflection * rotation)
    and Y proportional to the identity; for more modes it is our moment-level
    reading of the definition.
    """
    g_in = symplectic_form(channel.n_in)
    g_out = symplectic_form(channel.n_out)
    X, Y = channel.X, channel.Y
    scale = max(1.0, np.max(np.abs(X)), np.max(np.abs(Y)))
    if np.max(np.abs(channel.v)) > tol * scale:
        return False
    if np.max(np.abs(Y @ g_out - g_out @ Y)) > tol * scale:
        return False
    covariant = np.max(np.abs(X @ g_in - g_out @ X)) <= tol * scale
    contravariant = np.max(np.abs(X @ g_in + g_out @ X)) <= tol * scale
    return bool(covariant or contravariant)


# JSON channel specs ---------------------------------------------------------

_BUILDERS = {
    "lossy": (lossy, ("eta", "N")),
    "amplifier": (amplifier, ("mu", "N")),
    "additive": (additive_noise, ("N",)),
    "squeezer": (squeezer, ("zeta",)),
    "identity": (identity, ("n",)),
}


def channel_from_spec(spec: dict) -> GaussianChannel:
    """Build a channel from a JSON-style dict.

    {"kind": "lossy", "eta": 0.5, "N": 0}
    {"kind": "compose", "channels": [first, second, ...]}   applied left to right
    {"kind": "raw", "X": [[...]], "Y": [[...]], "v": [...]}
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError("channel spec must be an object with a 'kind' field")
    kind = spec["kind"]
    if kind in _BUILDERS:
        fn, names = _BUILDERS[kind]
        unknown = set(spec) - set(names) - {"kind"}
        if unknown:
            raise ValueError(f"unknown parameters for {kind!r}: {sorted(unknown)}")
        return fn(**{k: spec[k] for k in names if k in spec})
    if kind == "compose":
        children = spec.get("channels")
        if not children:
            raise ValueError("compose needs a nonempty 'channels' list")
        out = channel_from_spec(children[0])
        for child in children[1:]:
            out = compose(channel_from_spec(child), out)
        return out
    if kind == "raw":
        X = np.asarray(spec["X"], dtype=float)
        Y = np.asarray(spec["Y"], dtype=float).reshape(X.shape[0], X.shape[0])
        return GaussianChannel(X, Y, spec.get("v"))
    raise ValueError(f"unknown channel kind {kind!r}")


def channel_to_spec(channel: GaussianChannel) -> dict:
    return {
        "kind": "raw",
        "X": channel.X.tolist(),
        "Y": channel.Y.tolist(),
        "v": channel.v.tolist(),
    }
