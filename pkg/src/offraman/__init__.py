"""Nonclassicality of off-resonant Raman scattering from a second-order operator solution.

Typical use::

    from offraman import make_config, noise_terms, witness_report
    cfg = make_config(dw1=10, gt=0.1, amplitudes={"L": 10 ** 0.5})
    report = witness_report(noise_terms(cfg))
"""
from .charfun import NoiseTerms, RegimeError, mean_fields, noise_terms
from .coefficients import CoeffSet, eval_coeffs, eval_coeffs_raw, exp_divdiff
from .config import Chaotic, Coherent, ConfigError, Mode, PAIRS, RamanConfig, make_config
from .witnesses import WitnessReport, closed_forms, witness_report

__all__ = [
    "Chaotic",
    "Coherent",
    "CoeffSet",
    "ConfigError",
    "Mode",
    "NoiseTerms",
    "PAIRS",
    "RamanConfig",
    "RegimeError",
    "WitnessReport",
    "closed_forms",
    "eval_coeffs",
    "eval_coeffs_raw",
    "exp_divdiff",
    "make_config",
    "mean_fields",
    "noise_terms",
    "witness_report",
]
