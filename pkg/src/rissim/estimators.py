"""Pilot design, pilot reception, and cascaded-channel estimators.

Two pilot schemes: the reduced-subspace plan uses eta configurations built
from the orthogonal basis (one pilot per subspace dimension), the
conventional full plan uses M DFT configurations (one pilot per RIS
element).  Large-M discipline: the reduced plan is kept in factored form
(phi_tx, basis) and the DFT plan is applied through FFTs, so no M x M
matrix is ever materialized.
"""

from dataclasses import dataclass

import numpy as np

from .channels import CascadedChannel
from .subspace import BasisSet

KIND_REDUCED = "reduced-subspace"
KIND_FULL = "full-ls"

_MATERIALIZE_LIMIT = 4096


@dataclass(frozen=True)
class PilotPlan:
    """RIS configuration schedule for one estimation round.

    kind selects the scheme; the reduced plan stores (basis, phi_tx)
    factors, the full plan only the element count.  pilot_symbols defaults
    to the constant sqrt(rho) transmit symbol.
    """

    kind: str
    rho_mw: float
    n_elements: int
    pilot_symbols: np.ndarray
    basis: BasisSet | None = None
    phi_tx: np.ndarray | None = None

    @property
    def n_pilots(self) -> int:
        return len(self.pilot_symbols)

    def config_matrix(self) -> np.ndarray:
        "Materialize the M x P configuration matrix (small M only for the full plan)."
        if self.kind == KIND_REDUCED:
            return self.phi_tx[:, None] * self.basis.vectors
        if self.n_elements > _MATERIALIZE_LIMIT:
            raise ValueError(
                f"refusing to materialize {self.n_elements}x{self.n_elements} DFT matrix; "
                "full-ls products are applied via FFT"
            )
        m = self.n_elements
        grid = np.arange(m)
        return np.exp(-2j * np.pi * np.outer(grid, grid) / m)


@dataclass(frozen=True)
class RxPilots:
    "Received pilots: combined eta-vector (reduced plan) or full N x M matrix."

    noise_var_mw: float
    combined: np.ndarray | None = None
    full: np.ndarray | None = None

    def __post_init__(self):
        if (self.combined is None) == (self.full is None):
            raise ValueError("exactly one of combined/full must be set")


@dataclass(frozen=True)
class Estimate:
    "Estimated row factor v_hat and/or cascaded matrix V_hat."

    v_hat: np.ndarray | None = None
    V_hat: np.ndarray | None = None


def rsls_pilot_plan(basis: BasisSet, phi_tx: np.ndarray, rho_mw: float) -> PilotPlan:
    "Reduced-subspace plan: configuration t is phi_tx Hadamard basis column t."
    phi_tx = np.asarray(phi_tx)
    if phi_tx.shape != (basis.geometry.m,):
        raise ValueError(f"phi_tx must have length {basis.geometry.m}, got {phi_tx.shape}")
    if np.max(np.abs(np.abs(phi_tx) - 1.0)) > 1e-9:
        raise ValueError("phi_tx entries must be unit modulus")
    if rho_mw < 0:
        raise ValueError("pilot power must be nonnegative")
    symbols = np.full(basis.eta, np.sqrt(rho_mw), dtype=complex)
    return PilotPlan(
        kind=KIND_REDUCED,
        rho_mw=rho_mw,
        n_elements=basis.geometry.m,
        pilot_symbols=symbols,
        basis=basis,
        phi_tx=phi_tx,
    )


def ls_pilot_plan(m: int, rho_mw: float) -> PilotPlan:
    "Conventional full plan: M DFT configurations, one pilot per RIS element."
    if m < 1:
        raise ValueError(f"element count must be >= 1, got {m}")
    if rho_mw < 0:
        raise ValueError("pilot power must be nonnegative")
    symbols = np.full(m, np.sqrt(rho_mw), dtype=complex)
    return PilotPlan(kind=KIND_FULL, rho_mw=rho_mw, n_elements=m, pilot_symbols=symbols)


def _symbol_equalizer(plan: PilotPlan) -> np.ndarray:
    "Per-pilot factor mapping received symbols back to the constant-sqrt(rho) model."
    if np.min(np.abs(plan.pilot_symbols)) == 0:
        raise ValueError("pilot symbols must be nonzero")
    return np.sqrt(plan.rho_mw) / plan.pilot_symbols


def simulate_pilots(
    V,
    plan: PilotPlan,
    w: np.ndarray | None,
    sigma2_mw: float,
    rng: np.random.Generator,
) -> RxPilots:
    """Simulate one pilot round over the cascaded channel V.

    Reduced plan: y_t = w^H V phi_t x_t + n_t with the unit-norm combiner w.
    Full plan: Y = V Phi X + N received on all antennas (w must be absent).
    """
    matrix = V.matrix if isinstance(V, CascadedChannel) else np.asarray(V)
    if sigma2_mw < 0:
        raise ValueError("noise variance must be nonnegative")
    noise_scale = np.sqrt(sigma2_mw / 2)

    if plan.kind == KIND_REDUCED:
        if w is None:
            raise ValueError("reduced-subspace pilots need a combiner w")
        row = w.conj() @ matrix
        clean = (plan.basis.vectors.T @ (row * plan.phi_tx)) * plan.pilot_symbols
        noise = noise_scale * (
            rng.standard_normal(plan.n_pilots) + 1j * rng.standard_normal(plan.n_pilots)
        )
        return RxPilots(combined=clean + noise, noise_var_mw=sigma2_mw)

    if w is not None:
        raise ValueError("full-ls pilots are received on all antennas; no combiner applies")
    # V Phi for the DFT configuration is a length-M FFT along the element axis.
    clean = np.fft.fft(matrix, axis=1) * plan.pilot_symbols[None, :]
    shape = (matrix.shape[0], plan.n_pilots)
    noise = noise_scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    return RxPilots(full=clean + noise, noise_var_mw=sigma2_mw)


def rsls_estimate(rx: RxPilots, plan: PilotPlan) -> Estimate:
    "Reduced-subspace LS estimate v_hat = Phi y* / (M sqrt(rho))."
    if plan.kind != KIND_REDUCED:
        raise ValueError("rsls_estimate needs a reduced-subspace plan")
    if rx.combined is None:
        raise ValueError("received pilots do not match the plan kind (need combined)")
    if plan.rho_mw <= 0:
        raise ValueError("cannot estimate with zero pilot power")
    y = rx.combined * _symbol_equalizer(plan)
    m = plan.n_elements
    v_hat = plan.phi_tx * (plan.basis.vectors @ y.conj()) / (m * np.sqrt(plan.rho_mw))
    return Estimate(v_hat=v_hat)


def assemble_cascaded(w: np.ndarray, v_hat: np.ndarray) -> Estimate:
    "Rank-one cascaded estimate V_hat = w v_hat^H from the combiner and row factor."
    return Estimate(v_hat=v_hat, V_hat=np.outer(w, v_hat.conj()))


def ls_estimate(rx: RxPilots, plan: PilotPlan) -> Estimate:
    "Conventional LS estimate V_hat = Y Phi^H / (M sqrt(rho)), applied via inverse FFT."
    if plan.kind != KIND_FULL:
        raise ValueError("ls_estimate needs a full-ls plan")
    if rx.full is None:
        raise ValueError("received pilots do not match the plan kind (need full)")
    if plan.rho_mw <= 0:
        raise ValueError("cannot estimate with zero pilot power")
    y = rx.full * _symbol_equalizer(plan)[None, :]
    v_hat_matrix = np.fft.ifft(y, axis=1) / np.sqrt(plan.rho_mw)
    return Estimate(V_hat=v_hat_matrix)
