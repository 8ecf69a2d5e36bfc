"""How much channel power lives in the reduced subspace?

Compares two notions of "captured power" for a 32x32 surface:
  1. the mass of the top-eta eigenvalues of the sampled spatial correlation
     matrix (the best possible eta-dimensional subspace), and
  2. the projection of individual steering vectors onto the generated basis,
     which varies with direction and thins out toward the array poles.
"""

import numpy as np

from rissim import ArrayGeometry, correlation_spectrum, generate_basis, project, upa_steering
from rissim.arrays import AnglePair

geom = ArrayGeometry(32, 32, 0.25, 0.25)
basis = generate_basis(geom)
print(f"32x32 surface, d = 1/4: eta = {basis.eta}, eta/M = {basis.eta / geom.m:.4f}")

spectrum = correlation_spectrum(
    geom, (-np.pi / 3, np.pi / 3), (-np.pi / 2, np.pi / 2), n_samples=20000, seed=1
)
mass = spectrum.eigenvalues[: basis.eta].sum() / geom.m
print(f"top-eta eigenvalue mass: {100 * mass:.2f}% of the total channel power")

rng = np.random.default_rng(2)
rows = []
for label, el_range in [("near boresight", (-0.5, 0.0)), ("full sector", (-np.pi / 2, 0.0))]:
    caps = []
    for _ in range(500):
        pair = AnglePair(rng.uniform(-np.pi / 3, np.pi / 3), rng.uniform(*el_range))
        h = upa_steering(geom, pair)
        caps.append(np.linalg.norm(project(basis, h)) ** 2 / np.linalg.norm(h) ** 2)
    rows.append((label, np.mean(caps), np.min(caps)))

print("\nper-direction projection capture (LOS steering vectors):")
for label, mean, worst in rows:
    print(f"  {label:<15} mean {100 * mean:5.1f}%   worst draw {100 * worst:5.1f}%")
print("\nthe gap between the eigenvalue mass and the per-direction capture is")
print("what produces the error floor of the reduced-pilot estimator at high SNR")
