"""Spontaneous Stokes-phonon pairs and the quasidistribution threshold.

With only the pump seeded, Stokes photons and phonons are created in pairs.
The s-ordered quasidistribution of the pair turns negative once the ordering
parameter exceeds s_th = 1 + 2 B_S - 2 sqrt(B_S).  The threshold is lowest at
B_S = 1/4; once B_S is large it exceeds 1 and no ordering shows negativity.
"""
import numpy as np

from offraman import Mode, make_config, noise_terms
from offraman import distributions as dist

for gt in (0.05, 0.2, 0.5, 1.0):
    nt = noise_terms(make_config(g=1, dw1=1, gt=gt, amplitudes={"L": np.sqrt(10)}))
    b_s = nt.B[Mode.S]
    s_th = dist.sth_sv(nt)
    p11 = dist.joint_sv(nt, 4).probs[1, 1]
    line = f"gt={gt:4.2f}  B_S={b_s:.4f}  p(1,1)={p11:.4f}  s_th={s_th:.3f}"
    if s_th < 0.98:
        s = s_th + 0.02
        w = np.linspace(0, 8 * (b_s + (1 - s) / 2), 201)
        line += f"  min at s_th+0.02: {dist.quasi_sv(nt, s, w, w).minimum:.3g}"
    print(line)
