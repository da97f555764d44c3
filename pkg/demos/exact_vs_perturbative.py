"""Check the second-order solution against brute-force evolution in a truncated Fock space.

The discrepancy in first and second moments should fall like (gt)^3 or faster.
"""
from offraman import make_config, oracle

cfg = make_config(chi=0.8, dw1=3, dw2=-2, amplitudes={"L": 0.5, "S": 0.3j, "V": 0.25, "A": 0.4 - 0.1j})
basis = oracle.FockBasis.for_config(cfg)
print(f"Fock cutoffs {basis.cutoffs}, dimension {basis.dim}")

report = oracle.compare(cfg, basis, gts=(0.01, 0.02, 0.04))
for key, q in report["quantities"].items():
    if q["exponent"] is not None:
        print(f"{key:>10}  discrepancy at gt=0.04 {q['discrepancy'][-1]:.2e}  exponent {q['exponent']:.2f}")
print("pass" if report["pass"] else "fail")
