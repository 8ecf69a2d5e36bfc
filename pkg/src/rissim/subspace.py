"""Orthogonal steering-vector basis of the RIS channel subspace.

Builds the angle grid whose array responses are mutually orthogonal,
provides the asymptotic dimension formula, subspace projection, and the
Monte Carlo correlation-spectrum analysis.
"""

from dataclasses import dataclass

import numpy as np

from .arrays import AnglePair, ArrayGeometry, dirichlet_kernel, steering_matrix

_COS_POLE_EPS = 1e-12
ORTHOGONALITY_TOL = 1e-9


def vertical_array_factor(offset, m_v: int, d_v: float):
    "Normalized vertical beam coupling for an elevation-sine separation."
    return dirichlet_kernel(offset, m_v, d_v)


def horizontal_array_factor(offset, m_h: int, d_h: float):
    "Normalized horizontal beam coupling for a cos(el)*sin(az) separation."
    return dirichlet_kernel(offset, m_h, d_h)


def _elevation_candidates(m_v: int, d_v: float) -> list[tuple[float, int]]:
    "(elevation, k) pairs with sin(elevation) = k/(m_v*d_v), ascending in elevation."
    out = []
    for k in range(-(m_v // 2), m_v // 2 + 1):
        arg = k / (m_v * d_v)
        if abs(arg) <= 1.0:
            out.append((float(np.arcsin(arg)), k))
    out.sort()
    return out


def _azimuth_candidates(theta: float, m_h: int, d_h: float) -> list[tuple[float, int]]:
    """(azimuth, l) pairs on one elevation line, descending in azimuth.

    At the poles (cos(theta) = 0) every azimuth yields the same response,
    so a single degenerate direction pi/2 is returned.
    """
    if abs(np.cos(theta)) < _COS_POLE_EPS:
        return [(np.pi / 2, 0)]
    out = []
    for l in range(-(m_h - 1), m_h):
        arg = 1.0 + l / (m_h * d_h * np.cos(theta))
        if -1.0 <= arg <= 1.0:
            out.append((float(np.arcsin(arg)), l))
    out.sort(reverse=True)
    return out


def elevation_set(m_v: int, d_v: float) -> np.ndarray:
    "Sorted elevations (radians) whose responses are pairwise orthogonal."
    return np.array([theta for theta, _ in _elevation_candidates(m_v, d_v)])


def azimuth_set(theta: float, m_h: int, d_h: float) -> np.ndarray:
    "Descending azimuths (radians) orthogonal to each other at elevation theta."
    return np.array([phi for phi, _ in _azimuth_candidates(theta, m_h, d_h)])


def orthogonal_angle_pairs(
    geom: ArrayGeometry, tol: float = ORTHOGONALITY_TOL
) -> tuple[list[AnglePair], np.ndarray, np.ndarray]:
    """Full orthogonal angle grid with aliasing collisions removed.

    Enumerates elevation ascending, azimuth descending per elevation, then
    greedily drops any later pair whose response is not orthogonal to all
    kept ones (e.g. the +-pi/2 elevations alias for d_v = 1/2 with even
    m_v).  The coupling is evaluated through the separable closed form, so
    no steering vectors are materialized here.
    """
    cand: list[tuple[float, float, int, int]] = []
    for theta, k in _elevation_candidates(geom.m_v, geom.d_v):
        for phi, l in _azimuth_candidates(theta, geom.m_h, geom.d_h):
            cand.append((phi, theta, k, l))

    sin_el = np.array([np.sin(t) for _, t, _, _ in cand])
    sin_az_proj = np.array([np.cos(t) * np.sin(p) for p, t, _, _ in cand])

    kept: list[int] = []
    kept_sin_el = np.empty(len(cand))
    kept_proj = np.empty(len(cand))
    n_kept = 0
    for i in range(len(cand)):
        if n_kept:
            coupling = dirichlet_kernel(
                sin_el[i] - kept_sin_el[:n_kept], geom.m_v, geom.d_v
            ) * dirichlet_kernel(sin_az_proj[i] - kept_proj[:n_kept], geom.m_h, geom.d_h)
            if np.max(coupling) > tol:
                continue
        kept_sin_el[n_kept] = sin_el[i]
        kept_proj[n_kept] = sin_az_proj[i]
        n_kept += 1
        kept.append(i)

    pairs = [AnglePair(cand[i][0], cand[i][1]) for i in kept]
    ks = np.array([cand[i][2] for i in kept], dtype=int)
    ls = np.array([cand[i][3] for i in kept], dtype=int)
    return pairs, ks, ls


@dataclass(frozen=True)
class BasisSet:
    """Orthogonal steering-vector basis of the channel subspace.

    ``vectors`` is M x eta with pairwise orthogonal columns of squared norm
    M; ``k``/``l`` are the integer grid indices that generated each pair.
    """

    geometry: ArrayGeometry
    pairs: tuple[AnglePair, ...]
    k: np.ndarray
    l: np.ndarray
    vectors: np.ndarray

    @property
    def eta(self) -> int:
        "Subspace dimension."
        return len(self.pairs)


def generate_basis(geom: ArrayGeometry) -> BasisSet:
    "Build the orthogonal basis (angle pairs and steering vectors) for geom."
    pairs, ks, ls = orthogonal_angle_pairs(geom)
    az = np.array([p.azimuth for p in pairs])
    el = np.array([p.elevation for p in pairs])
    vectors = steering_matrix(geom, az, el)
    return BasisSet(geometry=geom, pairs=tuple(pairs), k=ks, l=ls, vectors=vectors)


def dof_approx(geom: ArrayGeometry) -> float:
    "Asymptotic subspace dimension pi * m_h d_h * m_v d_v of a large aperture."
    return np.pi * geom.m_h * geom.d_h * geom.m_v * geom.d_v


def project(basis: BasisSet, h: np.ndarray) -> np.ndarray:
    "Orthogonal projection of h onto the basis span, without any M x M matrix."
    h = np.asarray(h)
    if h.shape != (basis.geometry.m,):
        raise ValueError(f"expected vector of length {basis.geometry.m}, got shape {h.shape}")
    return basis.vectors @ (basis.vectors.conj().T @ h) / basis.geometry.m


def subspace_coefficients(basis: BasisSet, h: np.ndarray) -> np.ndarray:
    "Expansion coefficients c with project(h) = sum_i c_i * basis.vectors[:, i]."
    h = np.asarray(h)
    if h.shape != (basis.geometry.m,):
        raise ValueError(f"expected vector of length {basis.geometry.m}, got shape {h.shape}")
    return basis.vectors.conj().T @ h / basis.geometry.m


@dataclass(frozen=True)
class EigenSpectrum:
    "Descending eigenvalues of a sampled spatial correlation matrix."

    eigenvalues: np.ndarray
    sample_count: int
    geometry: ArrayGeometry


def correlation_spectrum(
    geom: ArrayGeometry,
    azimuth_range: tuple[float, float],
    elevation_range: tuple[float, float],
    n_samples: int,
    seed,
    chunk_size: int = 512,
) -> EigenSpectrum:
    """Monte Carlo eigenvalue spectrum of R = E{a(az, el) a(az, el)^H}.

    Angles are drawn uniformly on the given ranges; the Hermitian sum is
    accumulated in fixed-order chunks so results depend only on
    (seed, n_samples).
    """
    if n_samples <= 0:
        raise ValueError(f"n_samples must be positive, got {n_samples}")
    rng = np.random.default_rng(seed)
    az = rng.uniform(azimuth_range[0], azimuth_range[1], n_samples)
    el = rng.uniform(elevation_range[0], elevation_range[1], n_samples)

    corr = np.zeros((geom.m, geom.m), dtype=complex)
    for start in range(0, n_samples, chunk_size):
        block = steering_matrix(geom, az[start : start + chunk_size], el[start : start + chunk_size])
        corr += block @ block.conj().T
    corr /= n_samples
    corr = (corr + corr.conj().T) / 2

    eigenvalues = np.linalg.eigvalsh(corr)[::-1]
    return EigenSpectrum(
        eigenvalues=np.maximum(eigenvalues, 0.0),
        sample_count=n_samples,
        geometry=geom,
    )
