"""Acceptance suite: one test per exit criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s``.  The scaled estimation
sweeps use the desk profile (32x32 RIS, 32-antenna BS, 100 trials); the
large reference profile is exercised only through its configuration
defaults since a full run takes hours.
"""

import json

import numpy as np
import pytest

from rissim.arrays import ArrayGeometry
from rissim.channels import bs_ris_los, cascaded, ue_channel
from rissim.estimators import rsls_estimate, rsls_pilot_plan, simulate_pilots
from rissim.experiments import desk_profile, run_nmse_sweep, run_snr_sweep
from rissim.risconfig import alt_optimize, los_closed_form, snr
from rissim.subspace import correlation_spectrum, dof_approx, generate_basis
from rissim.cli import parse_and_run


def ok(msg):
    print(f"PASS: {msg}")


@pytest.fixture(scope="module")
def basis_128():
    return generate_basis(ArrayGeometry(128, 128, 0.25, 0.25))


@pytest.fixture(scope="module")
def desk_sweeps():
    config = desk_profile(master_seed=20240131)
    return config, run_nmse_sweep(config), run_snr_sweep(config)


def sweep_series(result, method, metric):
    rows = sorted(
        (r for r in result.rows if r.method == method and r.metric == metric),
        key=lambda r: r.rho_dbm,
    )
    return np.array([r.rho_dbm for r in rows]), np.array([r.mean for r in rows])


def test_basis_orthogonality_grid():
    worst = 0.0
    for side in (4, 8, 16, 32):
        for d in (0.125, 0.25, 0.5):
            geom = ArrayGeometry(side, side, d, d)
            basis = generate_basis(geom)
            gram = np.abs(basis.vectors.conj().T @ basis.vectors) / geom.m
            np.fill_diagonal(gram, 0.0)
            worst = max(worst, gram.max())
            assert gram.max() < 1e-9, f"off-diagonal leakage at {side}x{side}, d={d}"
    ok(f"basis orthogonality: max off-diagonal |b_i^H b_j|/M = {worst:.2e} < 1e-9")


def test_eta_counts(basis_128):
    basis8 = generate_basis(ArrayGeometry(8, 8, 0.25, 0.25))
    assert basis8.eta == 15
    # hand enumeration: azimuth counts per elevation line of the 8x8 grid
    per_line = {}
    for pair in basis8.pairs:
        per_line.setdefault(round(pair.elevation, 12), 0)
        per_line[round(pair.elevation, 12)] += 1
    expected = {
        round(-np.pi / 2, 12): 1,
        round(-np.pi / 6, 12): 4,
        0.0: 5,
        round(np.pi / 6, 12): 4,
        round(np.pi / 2, 12): 1,
    }
    assert per_line == expected

    ratio = basis_128.eta / basis_128.geometry.m
    assert 0.196 <= ratio <= 0.200
    ok(f"eta counts: eta(8x8)=15 with line pattern 1+4+5+4+1; eta/M(128x128)={ratio:.4f}")


def test_dof_approximation(basis_128):
    for side, basis in ((64, generate_basis(ArrayGeometry(64, 64, 0.25, 0.25))), (128, basis_128)):
        approx = dof_approx(basis.geometry)
        rel = abs(basis.eta - approx) / basis.eta
        assert rel <= 0.05, f"{side}x{side}: relative gap {rel:.3%}"
        ok(f"DOF approximation at {side}x{side}: |eta - pi*A|/eta = {rel:.3%} <= 5%")


def test_eigenvalue_capture():
    geom = ArrayGeometry(32, 32, 0.25, 0.25)
    basis = generate_basis(geom)
    spectrum = correlation_spectrum(
        geom, (-np.pi / 3, np.pi / 3), (-np.pi / 2, np.pi / 2), 20000, seed=20240131
    )
    mass = spectrum.eigenvalues[: basis.eta].sum() / geom.m
    assert 0.982 <= mass <= 0.992
    tail_drop = spectrum.eigenvalues[basis.eta] / spectrum.eigenvalues[2 * basis.eta]
    assert tail_drop >= 100.0
    ok(
        f"eigenvalue capture: top-eta mass / M = {mass:.4f} in [0.982, 0.992]; "
        f"tail drops {tail_drop:.1e}x within the next eta indices"
    )


def test_rsls_noise_trace():
    geom = ArrayGeometry(16, 16, 0.25, 0.25)
    basis = generate_basis(geom)
    rho, sigma2 = 2.0, 1.3
    plan = rsls_pilot_plan(basis, np.ones(geom.m), rho)
    zero_channel = np.zeros((8, geom.m), dtype=complex)
    rng = np.random.default_rng(20240131)
    w = np.zeros(8)
    w[0] = 1.0
    energies = []
    for _ in range(1000):
        rx = simulate_pilots(zero_channel, plan, w, sigma2, rng)
        energies.append(np.linalg.norm(rsls_estimate(rx, plan).v_hat) ** 2)
    expected = sigma2 / rho * basis.eta / geom.m
    rel = abs(np.mean(energies) - expected) / expected
    assert rel <= 0.05
    ok(f"RS-LS noise trace: empirical/theory - 1 = {rel:+.3%} within 5%")


def test_noiseless_in_subspace_recovery():
    from rissim.arrays import UlaGeometry
    from rissim.channels import LinkBudget
    from rissim.estimators import assemble_cascaded

    geom = ArrayGeometry(16, 16, 0.25, 0.25)
    bs = UlaGeometry(8, 0.5)
    basis = generate_basis(geom)
    los = bs_ris_los(bs, geom, 0.0, np.pi / 6, 0.0, 0.05 * np.exp(-1.1j))
    phi_tx = np.sqrt(geom.m) * los.v1
    worst = 0.0
    for idx in range(0, basis.eta, 7):
        pair = basis.pairs[idx]
        ue = ue_channel(
            geom, LinkBudget(), (pair.azimuth, pair.elevation, 10.0), 0, np.random.default_rng(idx)
        )
        chan = cascaded(los, ue)
        plan = rsls_pilot_plan(basis, phi_tx, 4.0)
        rx = simulate_pilots(chan, plan, los.u1, 0.0, np.random.default_rng(0))
        v_hat = rsls_estimate(rx, plan).v_hat
        est = assemble_cascaded(los.u1, v_hat)
        v_err = np.linalg.norm(v_hat - chan.tilde_v1) / np.linalg.norm(chan.tilde_v1)
        m_err = np.linalg.norm(est.V_hat - chan.matrix) / np.linalg.norm(chan.matrix)
        worst = max(worst, v_err, m_err)
        assert v_err < 1e-10 and m_err < 1e-10, f"basis angle {idx}: {v_err:.2e}/{m_err:.2e}"
    ok(f"noiseless in-subspace recovery: worst relative error {worst:.2e} < 1e-10")


def test_closed_form_snr_oracle():
    from rissim.arrays import UlaGeometry
    from rissim.channels import LinkBudget

    geom = ArrayGeometry(16, 16, 0.25, 0.25)
    bs = UlaGeometry(8, 0.5)
    beta = 0.07 * np.exp(0.3j)
    los = bs_ris_los(bs, geom, 0.0, np.pi / 6, 0.0, beta)
    ue = ue_channel(geom, LinkBudget(), (0.4, -0.5, 12.0), 0, np.random.default_rng(1))
    zeta = ue.los.gain
    chan = cascaded(los, ue)
    rho, sigma2 = 10.0, 0.5
    analytic = rho * geom.m**2 * bs.n * abs(beta * zeta) ** 2 / sigma2

    cfg = los_closed_form(los.u1, los.v1, ue.vector)
    perfect = snr(chan, cfg.phi, cfg.w, rho, sigma2)
    rel = abs(perfect - analytic) / analytic
    assert rel <= 1e-9

    cfg_alt, _ = alt_optimize(chan, max_iter=2, rho_mw=rho, sigma2_mw=sigma2)
    alt = snr(chan, cfg_alt.phi, cfg_alt.w, rho, sigma2)
    rel_alt = abs(alt - analytic) / analytic
    assert rel_alt <= 1e-6
    ok(
        "closed-form SNR oracle: perfect-CSI gap "
        f"{rel:.2e} <= 1e-9, alternating gap {rel_alt:.2e} <= 1e-6 in <= 2 iterations"
    )


def test_nmse_sweep_replication(desk_sweeps):
    config, nmse_result, _ = desk_sweeps
    rho, rsls = sweep_series(nmse_result, "rsls", "nmse")
    _, ls = sweep_series(nmse_result, "ls", "nmse")

    # (a) reduced-subspace beats full LS through at least +20 dBm
    head = rho <= 20.0
    assert np.all(rsls[head] < ls[head])

    # (b) error floor: top two grid points within a factor of two
    top_ratio = rsls[-2] / rsls[-1]
    assert top_ratio < 2.0 and top_ratio >= 1.0 - 1e-9

    # (c) full-LS error scales as 1/rho: log-log slope -1 +- 10% below the floor
    fit_region = rho <= 20.0
    slope = np.polyfit(np.log10(10 ** (rho[fit_region] / 10)), np.log10(ls[fit_region]), 1)[0]
    assert abs(slope + 1.0) <= 0.1
    ok(
        "NMSE sweep (scaled): RS-LS < LS up to +20 dBm; floor ratio "
        f"{top_ratio:.3f} < 2; LS slope {slope:+.3f} = -1 +- 10%"
    )


def test_snr_sweep_replication(desk_sweeps):
    config, _, snr_result = desk_sweeps
    rho, perfect = sweep_series(snr_result, "perfect", "snr_db")
    _, rsls = sweep_series(snr_result, "rsls", "snr_db")
    _, ls = sweep_series(snr_result, "ls", "snr_db")

    assert np.all(np.diff(rsls) >= -1e-9), "RS-LS SNR must be nondecreasing in rho"
    assert np.all(np.diff(ls) >= -1e-9), "LS SNR must be nondecreasing in rho"
    assert np.all(rsls <= perfect + 1e-9) and np.all(ls <= perfect + 1e-9)
    gap = perfect - rsls
    assert np.all(np.diff(gap) < 0), "RS-LS gap to perfect CSI must shrink monotonically"
    ok(
        "SNR sweep (scaled): curves nondecreasing, bounded by perfect CSI, "
        f"gap shrinks {gap[0]:.1f} dB -> {gap[-1]:.3f} dB"
    )


def test_sweep_determinism_across_worker_counts(tmp_path, monkeypatch):
    config_doc = {
        "ris": {"m_h": 8, "m_v": 8},
        "bs": {"n": 8},
        "user": {"distance_range_m": [5.0, 10.0]},
        "trials": 6,
        "rho_grid_dbm": [0.0, 15.0, 30.0],
        "master_seed": 77,
    }
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(json.dumps(config_doc))

    outputs = {}
    for workers in ("1", "3"):
        out_dir = tmp_path / f"w{workers}"
        monkeypatch.setenv("RIS_SIM_THREADS", workers)
        rc = parse_and_run(
            ["nmse-sweep", "--config", str(cfg_path), "--out-dir", str(out_dir)]
        )
        assert rc == 0
        outputs[workers] = (out_dir / "nmse_sweep.csv").read_bytes()
    assert outputs["1"] == outputs["3"]
    ok("determinism: 1-worker and 3-worker sweeps produced byte-identical CSV rows")
