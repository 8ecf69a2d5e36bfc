"""Array geometries and steering (array response) vectors for ULA and UPA apertures.

Convention: steering vectors are returned with unit-modulus entries
``exp(-1j * phase)``.  Every magnitude-valued quantity in the library is
insensitive to this sign choice; it only has to be applied consistently.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform planar array: element counts and spacings in wavelengths.

    Elements are indexed column-major over the horizontal axis: element m
    (1-based) sits at horizontal index i = (m-1) % m_h and vertical index
    j = (m-1) // m_h.
    """

    m_h: int
    m_v: int
    d_h: float
    d_v: float

    def __post_init__(self):
        if self.m_h < 1 or self.m_v < 1:
            raise ValueError(f"element counts must be >= 1, got {self.m_h}x{self.m_v}")
        if not (0.0 < self.d_h <= 1.0) or not (0.0 < self.d_v <= 1.0):
            raise ValueError(f"spacings must be in (0, 1], got d_h={self.d_h}, d_v={self.d_v}")

    @property
    def m(self) -> int:
        "Total element count."
        return self.m_h * self.m_v


@dataclass(frozen=True)
class UlaGeometry:
    "Uniform linear array: antenna count and spacing in wavelengths."

    n: int
    d_bs: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"antenna count must be >= 1, got {self.n}")
        if not (0.0 < self.d_bs <= 1.0):
            raise ValueError(f"spacing must be in (0, 1], got {self.d_bs}")


_HALF_PI = np.pi / 2 + 1e-12  # inclusive bound with float slack for arcsin(+-1)


@dataclass(frozen=True)
class AnglePair:
    "Azimuth/elevation direction in radians, restricted to the front hemisphere."

    azimuth: float
    elevation: float

    def __post_init__(self):
        if abs(self.azimuth) > _HALF_PI:
            raise ValueError(f"azimuth {self.azimuth} outside [-pi/2, pi/2]")
        if abs(self.elevation) > _HALF_PI:
            raise ValueError(f"elevation {self.elevation} outside [-pi/2, pi/2]")


def element_index(m: int, m_h: int) -> tuple[int, int]:
    "Horizontal and vertical grid indices of 1-based element m."
    if m < 1:
        raise ValueError(f"element id must be >= 1, got {m}")
    return (m - 1) % m_h, (m - 1) // m_h


def element_grid(geom: ArrayGeometry) -> tuple[np.ndarray, np.ndarray]:
    "Horizontal and vertical index arrays for all M elements in element order."
    idx = np.arange(geom.m)
    return idx % geom.m_h, idx // geom.m_h


def upa_steering(geom: ArrayGeometry, angle: AnglePair) -> np.ndarray:
    "Length-M planar array response; entry m has phase -2pi(i*d_h*cos(el)*sin(az) + j*d_v*sin(el))."
    return steering_matrix(geom, np.array([angle.azimuth]), np.array([angle.elevation]))[:, 0]


def steering_matrix(geom: ArrayGeometry, azimuths: np.ndarray, elevations: np.ndarray) -> np.ndarray:
    "M x n matrix whose columns are UPA responses for angle pairs (azimuths[t], elevations[t])."
    az = np.asarray(azimuths, dtype=float)
    el = np.asarray(elevations, dtype=float)
    if az.shape != el.shape:
        raise ValueError("azimuths and elevations must have equal length")
    i, j = element_grid(geom)
    phase = (
        i[:, None] * (geom.d_h * np.cos(el) * np.sin(az))[None, :]
        + j[:, None] * (geom.d_v * np.sin(el))[None, :]
    )
    return np.exp(-2j * np.pi * phase)


def ula_steering(geom: UlaGeometry, azimuth: float) -> np.ndarray:
    "Length-N linear array response; entry n has phase -2pi*n*d_bs*sin(azimuth)."
    return np.exp(-2j * np.pi * np.arange(geom.n) * geom.d_bs * np.sin(azimuth))


def dirichlet_kernel(x, n_elems: int, spacing: float):
    """Normalized beam pattern |sin(pi n d x) / (n sin(pi d x))| of an n-element line array.

    x is a separation in sine space (difference of direction sines).  The
    removable singularities where sin(pi d x) = 0 evaluate to 1.
    """
    x = np.asarray(x, dtype=float)
    den_arg = np.sin(np.pi * spacing * x)
    num = np.sin(np.pi * n_elems * spacing * x)
    safe = np.where(den_arg == 0.0, 1.0, den_arg)
    out = np.where(
        np.abs(den_arg) < 1e-12,
        1.0,
        np.abs(num / (n_elems * safe)),
    )
    return out if out.ndim else float(out)


def inner_product_magnitude(geom: ArrayGeometry, a1: AnglePair, a2: AnglePair) -> float:
    """|a(a2)^H a(a1)| between two planar array responses.

    Evaluated through the separable closed form M * S(Omega) * T(Psi),
    where Omega is the elevation-sine separation and Psi the separation of
    cos(elevation)*sin(azimuth).
    """
    omega = np.sin(a2.elevation) - np.sin(a1.elevation)
    psi = np.cos(a2.elevation) * np.sin(a2.azimuth) - np.cos(a1.elevation) * np.sin(a1.azimuth)
    s = dirichlet_kernel(omega, geom.m_v, geom.d_v)
    t = dirichlet_kernel(psi, geom.m_h, geom.d_h)
    return geom.m * s * t
