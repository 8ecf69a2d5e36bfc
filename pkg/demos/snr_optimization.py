"""Configuring the surface: closed form, alternating optimization, and estimates.

For a rank-one BS-RIS channel the optimal (phi, w) pair has a closed form;
the alternating optimizer lands on it in one pass, and a configuration
built from an estimated channel approaches it as pilot power grows.
"""

import numpy as np

from rissim import (
    LinkBudget,
    UlaGeometry,
    alt_optimize,
    bs_ris_los,
    cascaded,
    config_from_estimate,
    los_closed_form,
    rsls_estimate,
    rsls_pilot_plan,
    simulate_pilots,
    snr,
    ue_channel,
)
from rissim.arrays import ArrayGeometry
from rissim.subspace import generate_basis
from rissim.units import dbm_to_mw, linear_to_db

geom = ArrayGeometry(16, 16, 0.25, 0.25)
bs = UlaGeometry(16, 0.5)
budget = LinkBudget()
basis = generate_basis(geom)

los = bs_ris_los(bs, geom, 0.0, np.pi / 6, 0.0, 10 ** (-81.4 / 20))
ue = ue_channel(geom, budget, (0.2, -0.5, 6.0), n_nlos=0, rng=np.random.default_rng(5))
chan = cascaded(los, ue)
rho, sigma2 = dbm_to_mw(30.0), dbm_to_mw(budget.noise_dbm)

ref = los_closed_form(los.u1, los.v1, ue.vector)
best = snr(chan, ref.phi, ref.w, rho, sigma2)
print(f"closed-form optimum:        {linear_to_db(best):8.3f} dB")

alt_cfg, trace = alt_optimize(chan, rho_mw=rho, sigma2_mw=sigma2)
print(f"alternating optimization:   {linear_to_db(trace[-1]):8.3f} dB "
      f"({(len(trace) + 1) // 2} iterations)")

phi_tx = np.sqrt(geom.m) * los.v1
for rho_pilot_dbm in (-10.0, 10.0, 30.0):
    plan = rsls_pilot_plan(basis, phi_tx, dbm_to_mw(rho_pilot_dbm))
    rx = simulate_pilots(chan, plan, los.u1, sigma2, np.random.default_rng(6))
    phi_hat = config_from_estimate(rsls_estimate(rx, plan).v_hat)
    achieved = snr(chan, phi_hat, los.u1, rho, sigma2)
    print(f"from {rho_pilot_dbm:+5.0f} dBm pilot estimate: {linear_to_db(achieved):8.3f} dB")
