"""Monte Carlo experiment drivers: scenario sampling, per-trial pipeline, sweeps.

Every trial is a pure function of (master_seed, trial_index): the channel
stream and the pilot-noise stream are derived child seeds, so trials can run
on any number of workers and still reduce to byte-identical results.  The
pilot-noise base draw is shared across the power grid (common random
numbers), which keeps the estimation-error curves smooth in rho.
"""

import hashlib
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from math import fsum

import numpy as np

from .arrays import ArrayGeometry, UlaGeometry
from .channels import (
    BsRisChannel,
    CascadedChannel,
    LinkBudget,
    bs_ris_los,
    cascaded,
    ue_channel,
    ue_pathloss_db,
)
from .estimators import (
    assemble_cascaded,
    ls_estimate,
    ls_pilot_plan,
    rsls_estimate,
    rsls_pilot_plan,
    simulate_pilots,
)
from .risconfig import alt_optimize, config_from_estimate, snr
from .subspace import (
    BasisSet,
    EigenSpectrum,
    correlation_spectrum,
    dof_approx,
    generate_basis,
    orthogonal_angle_pairs,
)
from .units import db_to_amplitude, dbm_to_mw, linear_to_db

THREADS_ENV = "RIS_SIM_THREADS"


class ConfigError(ValueError):
    "Invalid or unknown scenario configuration input."


@dataclass(frozen=True)
class ScenarioConfig:
    """Full simulation scenario; defaults reproduce the large reference setup.

    data_rho_dbm is the (fixed) transmit power used when evaluating the
    data-transmission SNR, decoupled from the swept pilot power so the
    perfect-CSI reference stays flat across the pilot grid.
    """

    ris: ArrayGeometry = ArrayGeometry(m_h=128, m_v=128, d_h=0.25, d_v=0.25)
    bs: UlaGeometry = UlaGeometry(n=128, d_bs=0.5)
    budget: LinkBudget = LinkBudget()
    azimuth_range: tuple[float, float] = (-np.pi / 3, np.pi / 3)
    elevation_range: tuple[float, float] = (-np.pi / 2, 0.0)
    distance_range_m: tuple[float, float] = (30.0, 50.0)
    phi_bs: float = 0.0
    theta_aod: float = 0.0
    phi_aod: float = np.pi / 6
    d_br_m: float = 10.0
    trials: int = 500
    rho_grid_dbm: tuple[float, ...] = tuple(float(r) for r in range(-10, 45, 5))
    master_seed: int = 20240131
    n_nlos: int = 3
    data_rho_dbm: float = 30.0

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if not self.rho_grid_dbm:
            raise ConfigError("rho_grid_dbm must not be empty")
        if self.n_nlos < 0:
            raise ConfigError(f"n_nlos must be >= 0, got {self.n_nlos}")
        for name in ("azimuth_range", "elevation_range", "distance_range_m"):
            lo, hi = getattr(self, name)
            if not lo <= hi:
                raise ConfigError(f"{name} is empty: ({lo}, {hi})")
        if self.distance_range_m[0] <= 0:
            raise ConfigError(f"distance_range_m must be positive, got {self.distance_range_m}")
        if self.d_br_m <= 0:
            raise ConfigError(f"d_br_m must be positive, got {self.d_br_m}")

    def to_dict(self) -> dict:
        "Nested plain-type dict (JSON-ready), one section per parameter group."
        return {
            "ris": {"m_h": self.ris.m_h, "m_v": self.ris.m_v, "d_h": self.ris.d_h, "d_v": self.ris.d_v},
            "bs": {"n": self.bs.n, "d_bs": self.bs.d_bs},
            "budget": {
                "carrier_hz": self.budget.carrier_hz,
                "noise_dbm": self.budget.noise_dbm,
                "bandwidth_hz": self.budget.bandwidth_hz,
            },
            "user": {
                "azimuth_range": list(self.azimuth_range),
                "elevation_range": list(self.elevation_range),
                "distance_range_m": list(self.distance_range_m),
            },
            "deployment": {
                "phi_bs": self.phi_bs,
                "theta_aod": self.theta_aod,
                "phi_aod": self.phi_aod,
                "d_br_m": self.d_br_m,
            },
            "trials": self.trials,
            "rho_grid_dbm": list(self.rho_grid_dbm),
            "master_seed": self.master_seed,
            "n_nlos": self.n_nlos,
            "data_rho_dbm": self.data_rho_dbm,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ScenarioConfig":
        "Build a config from a (possibly partial) dict; unknown keys are rejected."
        if not isinstance(doc, dict):
            raise ConfigError(f"config must be a JSON object, got {type(doc).__name__}")
        base = cls()
        sections = {
            "ris": ({"m_h", "m_v", "d_h", "d_v"}, None),
            "bs": ({"n", "d_bs"}, None),
            "budget": ({"carrier_hz", "noise_dbm", "bandwidth_hz"}, None),
            "user": ({"azimuth_range", "elevation_range", "distance_range_m"}, None),
            "deployment": ({"phi_bs", "theta_aod", "phi_aod", "d_br_m"}, None),
        }
        scalars = {"trials", "rho_grid_dbm", "master_seed", "n_nlos", "data_rho_dbm"}
        for key in doc:
            if key not in sections and key not in scalars:
                raise ConfigError(f"unknown config key: {key!r}")
        for sec, (allowed, _) in sections.items():
            body = doc.get(sec, {})
            if not isinstance(body, dict):
                raise ConfigError(f"config section {sec!r} must be an object")
            for key in body:
                if key not in allowed:
                    raise ConfigError(f"unknown config key: {sec}.{key}")

        def sec(name, key, default):
            return doc.get(name, {}).get(key, default)

        try:
            kwargs = dict(
                ris=ArrayGeometry(
                    m_h=int(sec("ris", "m_h", base.ris.m_h)),
                    m_v=int(sec("ris", "m_v", base.ris.m_v)),
                    d_h=float(sec("ris", "d_h", base.ris.d_h)),
                    d_v=float(sec("ris", "d_v", base.ris.d_v)),
                ),
                bs=UlaGeometry(
                    n=int(sec("bs", "n", base.bs.n)),
                    d_bs=float(sec("bs", "d_bs", base.bs.d_bs)),
                ),
                budget=LinkBudget(
                    carrier_hz=float(sec("budget", "carrier_hz", base.budget.carrier_hz)),
                    noise_dbm=float(sec("budget", "noise_dbm", base.budget.noise_dbm)),
                    bandwidth_hz=float(sec("budget", "bandwidth_hz", base.budget.bandwidth_hz)),
                ),
                azimuth_range=tuple(sec("user", "azimuth_range", base.azimuth_range)),
                elevation_range=tuple(sec("user", "elevation_range", base.elevation_range)),
                distance_range_m=tuple(sec("user", "distance_range_m", base.distance_range_m)),
                phi_bs=float(sec("deployment", "phi_bs", base.phi_bs)),
                theta_aod=float(sec("deployment", "theta_aod", base.theta_aod)),
                phi_aod=float(sec("deployment", "phi_aod", base.phi_aod)),
                d_br_m=float(sec("deployment", "d_br_m", base.d_br_m)),
                trials=int(doc.get("trials", base.trials)),
                rho_grid_dbm=tuple(float(r) for r in doc.get("rho_grid_dbm", base.rho_grid_dbm)),
                master_seed=int(doc.get("master_seed", base.master_seed)),
                n_nlos=int(doc.get("n_nlos", base.n_nlos)),
                data_rho_dbm=float(doc.get("data_rho_dbm", base.data_rho_dbm)),
            )
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        return cls(**kwargs)

    def digest(self) -> str:
        "Stable hex digest of the resolved configuration."
        canonical = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()


def full_profile(**overrides) -> ScenarioConfig:
    "The large reference scenario (128x128 RIS, 128-antenna BS, 500 trials)."
    return replace(ScenarioConfig(), **overrides)


def desk_profile(**overrides) -> ScenarioConfig:
    """Scaled-down scenario for interactive runs and the test suite.

    32x32 RIS, 32-antenna BS, 100 trials.  Users sit at 5-10 m so the
    estimation sweep traverses both the noise-limited and the
    subspace-floor regimes inside the default -10..+40 dBm pilot grid;
    the smaller aperture would otherwise stay noise-limited throughout.
    """
    cfg = ScenarioConfig(
        ris=ArrayGeometry(m_h=32, m_v=32, d_h=0.25, d_v=0.25),
        bs=UlaGeometry(n=32, d_bs=0.5),
        distance_range_m=(5.0, 10.0),
        trials=100,
    )
    return replace(cfg, **overrides)


def sample_user(config: ScenarioConfig, rng: np.random.Generator) -> tuple[float, float, float]:
    "Uniform (azimuth, elevation, distance) draw from the configured coverage."
    return (
        rng.uniform(*config.azimuth_range),
        rng.uniform(*config.elevation_range),
        rng.uniform(*config.distance_range_m),
    )


def nmse(pairs) -> float:
    "Mean of ||V - V_hat||_F^2 / ||V||_F^2 over (V, V_hat) pairs."
    ratios = []
    for v, v_hat in pairs:
        denom = np.linalg.norm(v) ** 2
        if denom == 0:
            raise ValueError("NMSE undefined for a zero reference channel")
        ratios.append(np.linalg.norm(v - v_hat) ** 2 / denom)
    return fsum(ratios) / len(ratios)


@dataclass(frozen=True)
class TrialRecord:
    "Per-trial metrics of one pipeline execution at one pilot power."

    nmse_rsls: float
    nmse_ls: float
    snr_perfect_db: float
    snr_rsls_db: float
    snr_ls_db: float


@dataclass(frozen=True)
class TrialContext:
    "Trial-invariant precomputation shared across a sweep."

    config: ScenarioConfig
    basis: BasisSet
    bsris: BsRisChannel
    phi_tx: np.ndarray
    sigma2_mw: float
    data_rho_mw: float


def build_trial_context(config: ScenarioConfig) -> TrialContext:
    "Precompute the basis, the static BS-RIS channel, and derived constants."
    basis = generate_basis(config.ris)
    beta_br = db_to_amplitude(ue_pathloss_db(config.d_br_m)) * np.exp(
        -2j * np.pi * config.d_br_m / config.budget.wavelength_m
    )
    bsris = bs_ris_los(
        config.bs, config.ris, config.phi_bs, config.phi_aod, config.theta_aod, beta_br
    )
    # phi_tx = sqrt(M) v1: the precoding half toward the (known) BS direction
    phi_tx = np.sqrt(config.ris.m) * bsris.v1
    return TrialContext(
        config=config,
        basis=basis,
        bsris=bsris,
        phi_tx=phi_tx,
        sigma2_mw=dbm_to_mw(config.budget.noise_dbm),
        data_rho_mw=dbm_to_mw(config.data_rho_dbm),
    )


def _trial_channel(config: ScenarioConfig, trial_index: int, ctx: TrialContext) -> CascadedChannel:
    rng_channel = np.random.default_rng(
        np.random.SeedSequence([config.master_seed, trial_index, 0])
    )
    user = sample_user(config, rng_channel)
    ue = ue_channel(
        config.ris,
        config.budget,
        user,
        config.n_nlos,
        rng_channel,
        nlos_sector=(config.azimuth_range, config.elevation_range),
    )
    return cascaded(ctx.bsris, ue)


def run_trial(
    config: ScenarioConfig,
    rho_dbm: float,
    trial_index: int,
    context: TrialContext | None = None,
) -> TrialRecord:
    """One full pipeline execution: channels, both estimators, configuration, SNRs.

    Deterministic given (master_seed, trial_index, rho).  The noise stream
    is re-derived per call, so all rho points of a trial see the same base
    noise draw scaled to the pilot power.
    """
    ctx = context if context is not None else build_trial_context(config)
    chan = _trial_channel(config, trial_index, ctx)
    rng_noise = np.random.default_rng(
        np.random.SeedSequence([config.master_seed, trial_index, 1])
    )
    rho_mw = float(dbm_to_mw(rho_dbm))
    u1 = ctx.bsris.u1

    # perfect-CSI reference: phase-align to the true row factor
    phi_star = config_from_estimate(chan.tilde_v1)
    snr_perfect = snr(chan, phi_star, u1, ctx.data_rho_mw, ctx.sigma2_mw)

    plan_rs = rsls_pilot_plan(ctx.basis, ctx.phi_tx, rho_mw)
    rx_rs = simulate_pilots(chan, plan_rs, u1, ctx.sigma2_mw, rng_noise)
    est_rs = assemble_cascaded(u1, rsls_estimate(rx_rs, plan_rs).v_hat)
    nmse_rsls = nmse([(chan.matrix, est_rs.V_hat)])
    snr_rsls = snr(chan, config_from_estimate(est_rs.v_hat), u1, ctx.data_rho_mw, ctx.sigma2_mw)

    plan_ls = ls_pilot_plan(config.ris.m, rho_mw)
    rx_ls = simulate_pilots(chan, plan_ls, None, ctx.sigma2_mw, rng_noise)
    est_ls = ls_estimate(rx_ls, plan_ls)
    nmse_ls = nmse([(chan.matrix, est_ls.V_hat)])
    # LS has no combiner prior: optimize (phi, w) treating the estimate as truth
    ls_config, _ = alt_optimize(est_ls.V_hat)
    snr_ls = snr(chan, ls_config.phi, ls_config.w, ctx.data_rho_mw, ctx.sigma2_mw)

    return TrialRecord(
        nmse_rsls=nmse_rsls,
        nmse_ls=nmse_ls,
        snr_perfect_db=float(linear_to_db(snr_perfect)),
        snr_rsls_db=float(linear_to_db(snr_rsls)),
        snr_ls_db=float(linear_to_db(snr_ls)),
    )


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}")


def _run_all_trials(config: ScenarioConfig) -> list[list[TrialRecord]]:
    "records[rho_index][trial_index], computed with the configured worker count."
    ctx = build_trial_context(config)
    jobs = [(ri, ti) for ri in range(len(config.rho_grid_dbm)) for ti in range(config.trials)]
    records: dict[tuple[int, int], TrialRecord] = {}
    workers = _worker_count()
    if workers == 1:
        for ri, ti in jobs:
            records[(ri, ti)] = run_trial(config, config.rho_grid_dbm[ri], ti, ctx)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {
                (ri, ti): pool.submit(run_trial, config, config.rho_grid_dbm[ri], ti, ctx)
                for ri, ti in jobs
            }
            records = {key: fut.result() for key, fut in futures.items()}
    return [
        [records[(ri, ti)] for ti in range(config.trials)]
        for ri in range(len(config.rho_grid_dbm))
    ]


@dataclass(frozen=True)
class SweepRow:
    "One aggregated metric at one pilot power."

    rho_dbm: float
    method: str
    metric: str
    mean: float
    std: float
    trials: int


@dataclass(frozen=True)
class SweepResult:
    "Aggregated sweep output with provenance."

    rows: tuple[SweepRow, ...]
    master_seed: int
    config_digest: str

    CSV_HEADER = "rho_dbm,method,metric,mean,std,trials"

    def to_csv_text(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(
                f"{r.rho_dbm:.17g},{r.method},{r.metric},{r.mean:.17g},{r.std:.17g},{r.trials}"
            )
        return "\n".join(lines) + "\n"


def _aggregate(values: list[float]) -> tuple[float, float]:
    mean = fsum(values) / len(values)
    var = fsum((v - mean) ** 2 for v in values) / len(values)
    return mean, float(np.sqrt(var))


def _sweep(config: ScenarioConfig, metrics: dict[str, tuple[str, str]]) -> SweepResult:
    per_rho = _run_all_trials(config)
    rows = []
    for ri, rho in enumerate(config.rho_grid_dbm):
        for attr, (method, metric) in metrics.items():
            mean, std = _aggregate([getattr(rec, attr) for rec in per_rho[ri]])
            rows.append(
                SweepRow(
                    rho_dbm=float(rho),
                    method=method,
                    metric=metric,
                    mean=mean,
                    std=std,
                    trials=config.trials,
                )
            )
    return SweepResult(rows=tuple(rows), master_seed=config.master_seed, config_digest=config.digest())


def run_nmse_sweep(config: ScenarioConfig) -> SweepResult:
    "Mean estimation NMSE per estimator over the pilot-power grid."
    return _sweep(
        config,
        {"nmse_rsls": ("rsls", "nmse"), "nmse_ls": ("ls", "nmse")},
    )


def run_snr_sweep(config: ScenarioConfig) -> SweepResult:
    "Mean data-transmission SNR (dB) per method over the pilot-power grid."
    return _sweep(
        config,
        {
            "snr_perfect_db": ("perfect", "snr_db"),
            "snr_rsls_db": ("rsls", "snr_db"),
            "snr_ls_db": ("ls", "snr_db"),
        },
    )


@dataclass(frozen=True)
class DofRow:
    "Subspace dimension versus the aperture-area approximation for one geometry."

    m: int
    d: float
    eta: int
    eta_over_m: float
    dof_approx_over_m: float


def run_dof_table(sizes, spacings) -> list[DofRow]:
    "Exact and approximate subspace dimension over square-array sizes and spacings."
    rows = []
    for d in spacings:
        for m_side in sizes:
            geom = ArrayGeometry(m_h=m_side, m_v=m_side, d_h=d, d_v=d)
            pairs, _, _ = orthogonal_angle_pairs(geom)
            eta = len(pairs)
            rows.append(
                DofRow(
                    m=m_side,
                    d=float(d),
                    eta=eta,
                    eta_over_m=eta / geom.m,
                    dof_approx_over_m=dof_approx(geom) / geom.m,
                )
            )
    return rows


DEFAULT_EIGEN_RANGES = ((-np.pi / 3, np.pi / 3), (-np.pi / 2, np.pi / 2))


def run_eigen_spectrum(
    geometries,
    n_samples: int = 20000,
    seed: int = 20240131,
    azimuth_range=DEFAULT_EIGEN_RANGES[0],
    elevation_range=DEFAULT_EIGEN_RANGES[1],
) -> list[tuple[str, EigenSpectrum, int]]:
    "Per-geometry sampled eigenvalue spectrum plus the basis dimension marker."
    out = []
    for geom in geometries:
        spectrum = correlation_spectrum(geom, azimuth_range, elevation_range, n_samples, seed)
        pairs, _, _ = orthogonal_angle_pairs(geom)
        label = f"{geom.m_h}x{geom.m_v}_d{geom.d_h:g}"
        out.append((label, spectrum, len(pairs)))
    return out
