"""Enumerate the orthogonal angle grid of a small RIS and check its properties.

Walks through the construction for an 8x8 surface with quarter-wavelength
spacing: the elevation lines, the azimuth points per line, and the exact
orthogonality of the resulting steering vectors.
"""

import numpy as np

from rissim import ArrayGeometry, dof_approx, generate_basis

geom = ArrayGeometry(m_h=8, m_v=8, d_h=0.25, d_v=0.25)
basis = generate_basis(geom)

print(f"geometry: {geom.m_h}x{geom.m_v}, spacing {geom.d_h} wavelengths")
print(f"subspace dimension eta = {basis.eta} (out of M = {geom.m})")
print(f"large-aperture approximation: {dof_approx(geom):.2f}\n")

print(f"{'idx':>3} {'azimuth':>9} {'elevation':>10} {'k':>3} {'l':>4}")
for idx, pair in enumerate(basis.pairs):
    print(f"{idx:>3} {pair.azimuth:>9.4f} {pair.elevation:>10.4f} "
          f"{basis.k[idx]:>3d} {basis.l[idx]:>4d}")

gram = np.abs(basis.vectors.conj().T @ basis.vectors) / geom.m
np.fill_diagonal(gram, 0.0)
print(f"\nmax |b_i^H b_j| / M over distinct pairs: {gram.max():.2e}")
