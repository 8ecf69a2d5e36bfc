"""BS-RIS and RIS-UE channel generation, pathloss models, and the cascaded channel.

Receive-side (UE to RIS) steering vectors are conjugated relative to the
convention in :mod:`rissim.arrays`.  This makes the estimation target
diag(h*) v1 fall exactly in the pilot subspace when the user sits on a
basis direction; with a single convention on both sides the two conjugations
cancel and the pilot projections land on mirrored angles instead.
"""

import struct
import warnings
from dataclasses import dataclass, field

import numpy as np

from .arrays import AnglePair, ArrayGeometry, UlaGeometry, ula_steering, upa_steering
from .units import SPEED_OF_LIGHT, db_to_amplitude


@dataclass(frozen=True)
class LinkBudget:
    "Carrier, noise, and bandwidth parameters of the link."

    carrier_hz: float = 28e9
    noise_dbm: float = -96.0
    bandwidth_hz: float = 20e6

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_hz


@dataclass(frozen=True)
class PathComponent:
    "One propagation path: complex gain plus departure/arrival angles."

    gain: complex
    azimuth: float
    elevation: float

    def __post_init__(self):
        if not np.isfinite(self.gain):
            raise ValueError("path gain must be finite")


@dataclass(frozen=True)
class BsRisChannel:
    "Rank-one decomposition of the BS-RIS matrix: matrix = u1 * lambda1 * v1^H."

    matrix: np.ndarray
    u1: np.ndarray
    lambda1: complex
    v1: np.ndarray


@dataclass(frozen=True)
class UeChannel:
    "RIS-UE channel vector with its Rician decomposition."

    vector: np.ndarray
    distance_m: float
    rician_k_db: float
    los: PathComponent
    nlos: tuple[PathComponent, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class CascadedChannel:
    "Cascaded BS-RIS-UE channel V = H diag(h) and its row factor tilde_v1."

    matrix: np.ndarray
    tilde_v1: np.ndarray


def rx_steering(geom: ArrayGeometry, angle: AnglePair) -> np.ndarray:
    "UPA response for an arriving (UE-side) wave; conjugate of the departure convention."
    return upa_steering(geom, angle).conj()


def bs_ris_los(
    bs: UlaGeometry,
    ris: ArrayGeometry,
    phi_bs: float,
    phi_aod: float,
    theta_aod: float,
    beta_br: complex,
) -> BsRisChannel:
    "Static LOS BS-RIS channel beta_br * a_BS(phi_bs) a_RIS(phi_aod, theta_aod)^H."
    a_bs = ula_steering(bs, phi_bs)
    a_ris = upa_steering(ris, AnglePair(phi_aod, theta_aod))
    u1 = a_bs / np.sqrt(bs.n)
    v1 = a_ris / np.sqrt(ris.m)
    lambda1 = np.sqrt(ris.m * bs.n) * beta_br
    matrix = u1[:, None] * lambda1 * v1.conj()[None, :]
    return BsRisChannel(matrix=matrix, u1=u1, lambda1=lambda1, v1=v1)


def bs_ris_multipath(bs: UlaGeometry, ris: ArrayGeometry, paths) -> np.ndarray:
    """Multipath BS-RIS matrix: sum of rank-one terms over (gain, phi_bs, phi_aod, theta_aod).

    An empty path list yields the zero matrix (flagged with a warning).
    """
    matrix = np.zeros((bs.n, ris.m), dtype=complex)
    if not paths:
        warnings.warn("bs_ris_multipath called with no paths; returning zero matrix")
        return matrix
    for gain, phi_bs, phi_aod, theta_aod in paths:
        a_bs = ula_steering(bs, phi_bs)
        a_ris = upa_steering(ris, AnglePair(phi_aod, theta_aod))
        matrix += gain * np.outer(a_bs, a_ris.conj())
    return matrix


def ue_pathloss_db(d_m: float) -> float:
    "Distance-dependent pathloss -61.4 - 20 log10(d / 1 m) in dB."
    if d_m <= 0:
        raise ValueError(f"distance must be positive, got {d_m}")
    return -61.4 - 20.0 * np.log10(d_m)


def rician_k_db(d_m: float) -> float:
    "Distance-dependent Rician factor 13 - 0.03 * (d / 1 m) in dB."
    return 13.0 - 0.03 * d_m


# Per-path NLOS power profile: exponential decay, stand-in for the external
# measurement tables; total NLOS power is set by the K-factor alone.
def _nlos_powers(los_power: float, k_linear: float, n_nlos: int) -> np.ndarray:
    weights = np.exp(-np.arange(n_nlos, dtype=float))
    return weights / weights.sum() * los_power / k_linear


DEFAULT_NLOS_SECTOR = ((-np.pi / 3, np.pi / 3), (-np.pi / 2, 0.0))


def ue_channel(
    ris: ArrayGeometry,
    budget: LinkBudget,
    user: tuple[float, float, float],
    n_nlos: int,
    rng: np.random.Generator,
    nlos_sector=DEFAULT_NLOS_SECTOR,
) -> UeChannel:
    """Correlated Rician RIS-UE channel for a user at (azimuth, elevation, distance).

    The LOS gain carries the pathloss amplitude and propagation phase; the
    n_nlos scattered paths get circularly-symmetric Gaussian gains whose
    total power matches the distance-dependent K-factor, with angles drawn
    uniformly over nlos_sector.
    """
    azimuth, elevation, distance_m = user
    if n_nlos < 0:
        raise ValueError(f"n_nlos must be >= 0, got {n_nlos}")
    k_db = rician_k_db(distance_m)
    los_amp = db_to_amplitude(ue_pathloss_db(distance_m))
    los_gain = los_amp * np.exp(-2j * np.pi * distance_m / budget.wavelength_m)
    los = PathComponent(gain=los_gain, azimuth=azimuth, elevation=elevation)

    vector = los_gain * rx_steering(ris, AnglePair(azimuth, elevation))
    nlos = []
    if n_nlos > 0:
        powers = _nlos_powers(abs(los_gain) ** 2, 10.0 ** (k_db / 10.0), n_nlos)
        (az_lo, az_hi), (el_lo, el_hi) = nlos_sector
        for p in powers:
            gain = np.sqrt(p / 2) * (rng.standard_normal() + 1j * rng.standard_normal())
            az = rng.uniform(az_lo, az_hi)
            el = rng.uniform(el_lo, el_hi)
            nlos.append(PathComponent(gain=gain, azimuth=az, elevation=el))
            vector = vector + gain * rx_steering(ris, AnglePair(az, el))

    return UeChannel(
        vector=vector,
        distance_m=distance_m,
        rician_k_db=k_db,
        los=los,
        nlos=tuple(nlos),
    )


def cascaded(bsris: BsRisChannel, h) -> CascadedChannel:
    """Cascaded channel V = H diag(h) with tilde_v1 = conj(lambda1) diag(h*) v1.

    The conjugate on lambda1 keeps u1^H V = tilde_v1^H an exact identity
    for complex BS-RIS gains; magnitude expressions are unaffected.
    """
    h = np.asarray(getattr(h, "vector", h))
    if h.shape != (bsris.matrix.shape[1],):
        raise ValueError(f"expected UE vector of length {bsris.matrix.shape[1]}, got {h.shape}")
    matrix = bsris.matrix * h[None, :]
    tilde_v1 = np.conj(bsris.lambda1) * h.conj() * bsris.v1
    return CascadedChannel(matrix=matrix, tilde_v1=tilde_v1)


_DUMP_MAGIC = b"RISC"


def write_channel_dump(path, matrix: np.ndarray, flags: int = 0) -> None:
    """Binary dump of a complex matrix for cross-language golden tests.

    16-byte header (magic, rows, cols, flags; little-endian uint32) followed
    by row-major little-endian complex64 entries.
    """
    matrix = np.atleast_2d(np.asarray(matrix))
    rows, cols = matrix.shape
    with open(path, "wb") as f:
        f.write(struct.pack("<4sIII", _DUMP_MAGIC, rows, cols, flags))
        f.write(np.ascontiguousarray(matrix, dtype="<c8").tobytes())


def read_channel_dump(path) -> tuple[np.ndarray, int]:
    "Read a matrix written by write_channel_dump; returns (matrix, flags)."
    with open(path, "rb") as f:
        magic, rows, cols, flags = struct.unpack("<4sIII", f.read(16))
        if magic != _DUMP_MAGIC:
            raise ValueError(f"not a channel dump (magic {magic!r})")
        data = np.frombuffer(f.read(), dtype="<c8")
    if data.size != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, found {data.size}")
    return data.reshape(rows, cols).astype(complex), flags
