"""Pump-phonon correlations when only the pump and anti-Stokes fields are seeded.

Every anti-Stokes photon created removes a phonon and returns a pump photon, so
the phonon count bounds the pump-noise count.  Conditioned on the phonon count
the pump count is binomial, with Fano factor 1 - B_L / B_V < 1.
"""
import numpy as np

from offraman import Mode, make_config, noise_terms
from offraman import distributions as dist

cfg = make_config(g=1, chi=1, dw1=2, dw2=-1, gt=0.3, amplitudes={"L": 1.0, "A": 1.0})
nt = noise_terms(cfg)
b_l, b_v = nt.B[Mode.L], nt.B[Mode.V]
print(f"B_L = {b_l:.5f}, B_V = {b_v:.5f}")

f_l, f_v = dist.fano_conditional(nt)
print(f"conditional pump Fano factor F_L = {f_l:.4f}")
for n_v in (1, 3, 6):
    counts, p = dist.conditional_numbers(nt, n_v, given="V")
    print(f"  n_V={n_v}: p(n_L | n_V) = {np.round(p, 4)}  Fano {dist.fano_factor(p):.4f}")
print(f"conditional phonon Fano factor at n_L = 0, 2: {f_v(0):.4f}, {f_v(2):.4f}")
