"""Reduced-pilot estimation versus the conventional full-pilot baseline.

One Rician channel draw, both estimators, a few pilot powers: the reduced
scheme sends eta pilots instead of M (an ~80% saving at quarter-wavelength
spacing) and removes the noise outside the channel subspace.
"""

import numpy as np

from rissim import (
    LinkBudget,
    UlaGeometry,
    assemble_cascaded,
    bs_ris_los,
    cascaded,
    ls_estimate,
    ls_pilot_plan,
    nmse,
    rsls_estimate,
    rsls_pilot_plan,
    simulate_pilots,
    ue_channel,
)
from rissim.arrays import ArrayGeometry
from rissim.subspace import generate_basis
from rissim.units import dbm_to_mw

geom = ArrayGeometry(32, 32, 0.25, 0.25)
bs = UlaGeometry(32, 0.5)
budget = LinkBudget()
basis = generate_basis(geom)

beta = 10 ** (-81.4 / 20) * np.exp(-2j * np.pi * 10.0 / budget.wavelength_m)
los = bs_ris_los(bs, geom, 0.0, np.pi / 6, 0.0, beta)
rng = np.random.default_rng(3)
ue = ue_channel(geom, budget, (0.35, -0.4, 7.0), n_nlos=3, rng=rng)
chan = cascaded(los, ue)
sigma2 = dbm_to_mw(budget.noise_dbm)
phi_tx = np.sqrt(geom.m) * los.v1

print(f"pilot count: reduced = {basis.eta}, full = {geom.m} "
      f"(saving {100 * (1 - basis.eta / geom.m):.1f}%)\n")
print(f"{'rho [dBm]':>9} {'NMSE reduced':>14} {'NMSE full':>12}")
for rho_dbm in (0.0, 10.0, 20.0, 30.0, 40.0):
    rho = dbm_to_mw(rho_dbm)
    noise_rng = np.random.default_rng(4)

    plan_rs = rsls_pilot_plan(basis, phi_tx, rho)
    rx = simulate_pilots(chan, plan_rs, los.u1, sigma2, noise_rng)
    est = assemble_cascaded(los.u1, rsls_estimate(rx, plan_rs).v_hat)
    err_rs = nmse([(chan.matrix, est.V_hat)])

    plan_ls = ls_pilot_plan(geom.m, rho)
    rx = simulate_pilots(chan, plan_ls, None, sigma2, noise_rng)
    err_ls = nmse([(chan.matrix, ls_estimate(rx, plan_ls).V_hat)])

    print(f"{rho_dbm:>9.0f} {err_rs:>14.3e} {err_ls:>12.3e}")

print("\nthe reduced estimator flattens at its subspace floor while the full")
print("estimator keeps improving as 1/rho, at 5x the pilot cost")
