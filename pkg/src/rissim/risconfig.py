"""RIS phase configuration and receive combining: SNR evaluation and optimization."""

from dataclasses import dataclass

import numpy as np

from .channels import CascadedChannel


@dataclass(frozen=True)
class RisConfiguration:
    "Unit-modulus RIS phase vector and unit-norm receive combiner."

    phi: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        if np.max(np.abs(np.abs(self.phi) - 1.0)) > 1e-9:
            raise ValueError("phi entries must be unit modulus")
        if abs(np.linalg.norm(self.w) - 1.0) > 1e-9:
            raise ValueError("w must be unit norm")


def _as_matrix(V) -> np.ndarray:
    return V.matrix if isinstance(V, CascadedChannel) else np.asarray(V)


def snr(V, phi: np.ndarray, w: np.ndarray, rho_mw: float, sigma2_mw: float) -> float:
    "Linear receive SNR rho |w^H V phi|^2 / sigma^2."
    if sigma2_mw <= 0:
        raise ValueError(f"noise power must be positive, got {sigma2_mw}")
    matrix = _as_matrix(V)
    return rho_mw * np.abs(w.conj() @ matrix @ phi) ** 2 / sigma2_mw


def split_config(phi_tx: np.ndarray, phi_rx: np.ndarray) -> np.ndarray:
    "Combine the precoding and combining halves of a configuration entrywise."
    return np.asarray(phi_tx) * np.asarray(phi_rx)


def config_from_estimate(v_hat: np.ndarray) -> np.ndarray:
    "Phase-aligned configuration exp(j arg(v_hat)); zero entries map to phase 0."
    return np.exp(1j * np.angle(v_hat))


def los_closed_form(u1: np.ndarray, v1: np.ndarray, h: np.ndarray) -> RisConfiguration:
    """Optimal configuration for a rank-one BS-RIS channel.

    The combiner matches the left factor; the RIS splits into a precoder
    sqrt(M) v1 toward the BS and a combiner exp(-j arg(h)) toward the user.
    """
    m = len(v1)
    phi = split_config(np.sqrt(m) * v1, np.exp(-1j * np.angle(h)))
    return RisConfiguration(phi=phi, w=u1)


def _leading_left_singular(matrix: np.ndarray) -> np.ndarray:
    "Unit-norm leading left singular vector via the small N x N Gram matrix."
    gram = matrix @ matrix.conj().T
    _, vecs = np.linalg.eigh(gram)
    return vecs[:, -1]


def alt_optimize(
    V,
    w_init: np.ndarray | None = None,
    max_iter: int = 50,
    tol: float = 1e-8,
    rho_mw: float = 1.0,
    sigma2_mw: float = 1.0,
) -> tuple[RisConfiguration, list[float]]:
    """Alternating maximization of the SNR over (phi, w).

    Each half-step is the exact maximizer for its variable: phase alignment
    phi = exp(j arg(V^H w)) for fixed w, then matched combining
    w = V phi / ||V phi||.  Returns the configuration and the SNR value
    after every half-step (nondecreasing).  w_init defaults to the leading
    left singular vector of V.
    """
    matrix = _as_matrix(V)
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    w = _leading_left_singular(matrix) if w_init is None else w_init / np.linalg.norm(w_init)

    trace: list[float] = []
    gain = lambda p, c: rho_mw * np.abs(c.conj() @ matrix @ p) ** 2 / sigma2_mw
    phi = None
    for _ in range(max_iter):
        phi = np.exp(1j * np.angle(matrix.conj().T @ w))
        trace.append(gain(phi, w))
        steered = matrix @ phi
        norm = np.linalg.norm(steered)
        if norm == 0:
            raise ValueError("degenerate channel: V phi vanished during optimization")
        w = steered / norm
        trace.append(gain(phi, w))
        if len(trace) >= 4 and abs(trace[-1] - trace[-3]) <= tol * max(trace[-3], 1e-300):
            break
    return RisConfiguration(phi=phi, w=w), trace
