"""Where does the phonon mode squeeze?

Strong pump and Stokes seeds with a weak anti-Stokes seed, chi = g, gt = 0.1 and
the anti-Stokes line detuned by 10 g.  Sweeping the Stokes detuning shows a
window of single-mode phonon squeezing (lambda_V < 1) well away from resonance.
"""
import numpy as np

from offraman import Mode, make_config, noise_terms, witness_report

amps = {"L": np.sqrt(10), "S": 3.0, "V": 0.1, "A": 1.0}
base = make_config(g=1, chi=1, dw2=10, gt=0.1, amplitudes=amps)

dws = np.linspace(-100, 100, 401)
lam = np.array([witness_report(noise_terms(base.replace(dw1=d))).lambda_single[Mode.V] for d in dws])

neg = dws[lam < 1]
print(f"lambda_V < 1 for dw1 in [{neg.min():.1f}, {neg.max():.1f}] (units of g)")
print(f"deepest squeezing: lambda_V = {lam.min():.6f} at dw1 = {dws[lam.argmin()]:.1f}")

# at resonance the same seeds give excess noise instead
print(f"at dw1 = 0: lambda_V = {lam[dws == 0][0]:.4f}")
