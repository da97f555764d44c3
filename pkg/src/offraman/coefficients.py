"""Time-dependent coefficients of the second-order operator solution.

Every coefficient is a pure phase times a divided difference of ``exp`` taken
at nodes built from ``i*dw1*t`` and ``i*dw2*t``.  Written that way the
apparent poles at ``dw1 = 0``, ``dw2 = 0`` and ``dw1 = +-dw2`` become
coincident nodes, which :func:`exp_divdiff` resolves by a Taylor series
about the node centroid.  :func:`eval_coeffs_raw` keeps the original
quotient form and is used only to cross-check the stable path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .config import Mode, RamanConfig

__all__ = [
    "CoeffSet",
    "EPS_SWITCH",
    "SingularInput",
    "exp_divdiff",
    "eval_coeffs",
    "eval_coeffs_raw",
]

#: |x t| below which a denominator x counts as degenerate
EPS_SWITCH = 5e-3

# node clusters narrower than this are summed as a series
_CLUSTER = 1.0
_NTERMS = 26


class SingularInput(ValueError):
    """A denominator of the quotient form lies inside the switching region."""


def _taylor_divdiff(z: list[complex]) -> complex:
    # E[z0..zn] = exp(c) * sum_m h_m(z - c) / (m + n)!
    n = len(z) - 1
    c = sum(z) / len(z)
    w = [zi - c for zi in z]
    h = [1.0 + 0j] + [0j] * _NTERMS
    for wk in w:
        for m in range(1, _NTERMS + 1):
            h[m] = h[m] + wk * h[m - 1]
    total = 0j
    fact = math.factorial(n)
    for m in range(_NTERMS + 1):
        total += h[m] / fact
        fact *= m + n + 1
    return complex(np.exp(c)) * total


def exp_divdiff(*nodes: complex) -> complex:
    """Divided difference of ``exp`` on the given (possibly coincident) nodes.

    Accurate to a few ulps of the largest partial quotient for any node
    configuration with modest spread.
    """
    z = [complex(v) for v in nodes]
    if len(z) == 1:
        return complex(np.exp(z[0]))
    best, bi, bj = -1.0, 0, 0
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            d = abs(z[i] - z[j])
            if d > best:
                best, bi, bj = d, i, j
    if best <= _CLUSTER:
        return _taylor_divdiff(z)
    without_i = z[:bi] + z[bi + 1:]
    without_j = z[:bj] + z[bj + 1:]
    return (exp_divdiff(*without_i) - exp_divdiff(*without_j)) / (z[bj] - z[bi])


@dataclass(frozen=True)
class CoeffSet:
    f1: complex
    f2: complex
    f3: complex
    f4: complex
    f5: complex
    f6: complex
    f7: complex
    f8: complex
    g1: complex
    g2: complex
    g3: complex
    g4: complex
    g5: complex
    g6: complex
    h1: complex
    h2: complex
    h3: complex
    h4: complex
    h5: complex
    h6: complex
    h7: complex
    h8: complex
    l1: complex
    l2: complex
    l3: complex
    l4: complex
    l5: complex
    l6: complex

    def as_dict(self) -> dict[str, complex]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


def _phases(cfg: RamanConfig):
    t = cfg.t
    return tuple(complex(np.exp(-1j * cfg.omega[m] * t)) for m in (Mode.L, Mode.S, Mode.V, Mode.A))


def eval_coeffs(cfg: RamanConfig) -> CoeffSet:
    """All 28 coefficients at ``cfg.t``, finite on every degenerate detuning line."""
    g, chi, t = cfg.g, cfg.chi, cfg.t
    gc, chic = g.conjugate(), chi.conjugate()
    g2abs, chi2abs = abs(g) ** 2, abs(chi) ** 2
    a, b = cfg.dw1 * t, cfg.dw2 * t
    # sum and difference taken before scaling so they keep full relative accuracy
    amb, apb = (cfg.dw1 - cfg.dw2) * t, (cfg.dw1 + cfg.dw2) * t
    f1, g1, h1, l1 = _phases(cfg)
    E = exp_divdiff
    ia, ib = 1j * a, 1j * b
    t2 = t * t

    e1_a, e1_ma = E(0, ia), E(0, -ia)
    e1_b, e1_mb = E(0, ib), E(0, -ib)
    e2_a, e2_ma = E(0, 0, ia), E(0, 0, -ia)
    e2_b, e2_mb = E(0, 0, ib), E(0, 0, -ib)

    f5 = -g2abs * t2 * f1 * e2_ma
    f7 = -chi2abs * t2 * f1 * e2_b
    g5 = -g2abs * t2 * g1 * e2_a
    h5 = g2abs * t2 * h1 * e2_a
    h7 = chi2abs * t2 * h1 * e2_b
    l5 = -chi2abs * t2 * l1 * e2_mb
    return CoeffSet(
        f1=f1,
        f2=1j * gc * t * f1 * e1_ma,
        f3=1j * chi * t * f1 * e1_b,
        f4=1j * chi * gc * t2 * f1 * apb * E(0, -ia, ib, -1j * amb),
        f5=f5,
        f6=f5,
        f7=f7,
        f8=-f7,
        g1=g1,
        g2=1j * g * t * g1 * e1_a,
        g3=chic * g * t2 * g1 * E(0, ia, 1j * amb),
        g4=-chi * g * t2 * g1 * E(0, ia, 1j * apb),
        g5=g5,
        g6=-g5,
        h1=h1,
        h2=1j * g * t * h1 * e1_a,
        h3=1j * chi * t * h1 * e1_b,
        h4=-1j * chi * g * t2 * h1 * amb * E(0, ia, ib, 1j * apb),
        h5=h5,
        h6=-h5,
        h7=h7,
        h8=-h7,
        l1=l1,
        l2=1j * chic * t * l1 * e1_mb,
        l3=-chic * g * t2 * l1 * E(0, 1j * amb, -ib),
        l4=-chic * gc * t2 * l1 * E(0, -1j * apb, -ib),
        l5=l5,
        l6=l5,
    )


def _cis_m1(x: float) -> complex:
    """exp(i x) - 1 without cancellation at small x."""
    s = math.sin(0.5 * x)
    return complex(-2.0 * s * s, math.sin(x))


def eval_coeffs_raw(cfg: RamanConfig) -> CoeffSet:
    """Quotient form of the coefficients, as printed, with no limit handling.

    Rejects configurations where any of ``dw1``, ``dw2``, ``dw1 - dw2``,
    ``dw1 + dw2`` times ``t`` is below :data:`EPS_SWITCH` in magnitude.
    """
    g, chi, t = cfg.g, cfg.chi, cfg.t
    d1, d2 = cfg.dw1, cfg.dw2
    for name, x in (("dw1", d1), ("dw2", d2), ("dw1-dw2", d1 - d2), ("dw1+dw2", d1 + d2)):
        if abs(x * t) < EPS_SWITCH:
            raise SingularInput(f"|({name}) t| = {abs(x * t):.3g} is inside the switching region")
    gc, chic = g.conjugate(), chi.conjugate()
    g2abs, chi2abs = abs(g) ** 2, abs(chi) ** 2
    f1, g1, h1, l1 = _phases(cfg)
    ex = lambda x: complex(np.exp(1j * x * t))  # noqa: E731
    em1 = lambda x: _cis_m1(x * t)  # noqa: E731
    dm, dp = d1 - d2, d1 + d2

    f4 = (-chi * gc * f1 / d2) * (em1(-dm) / dm - ex(-d1) / d1) - (chi * gc * f1 / d1) * (
        em1(-dm) / dm + ex(d2) / d2
    )
    f5 = g2abs * f1 / d1**2 * em1(-d1) + 1j * g2abs * t * f1 / d1
    f7 = chi2abs * f1 / d2**2 * em1(d2) - 1j * chi2abs * t * f1 / d2
    g5 = g2abs * g1 / d1**2 * em1(d1) - 1j * g2abs * t * g1 / d1
    h4 = (chi * g * h1 / d2) * (em1(dp) / dp - ex(d1) / d1) - (chi * g * h1 / d1) * (
        em1(dp) / dp - ex(d2) / d2
    )
    h5 = -g2abs * h1 / d1**2 * em1(d1) + 1j * g2abs * t * h1 / d1
    h7 = -chi2abs * h1 / d2**2 * em1(d2) + 1j * chi2abs * t * h1 / d2
    l5 = chi2abs * l1 / d2**2 * em1(-d2) + 1j * chi2abs * t * l1 / d2
    return CoeffSet(
        f1=f1,
        f2=-(gc * f1 / d1) * em1(-d1),
        f3=(chi * f1 / d2) * em1(d2),
        f4=f4,
        f5=f5,
        f6=f5,
        f7=f7,
        f8=-f7,
        g1=g1,
        g2=(g * g1 / d1) * em1(d1),
        g3=(chic * g * g1 / d2) * (em1(dm) / dm - em1(d1) / d1),
        g4=(chi * g * g1 / d2) * (em1(dp) / dp - em1(d1) / d1),
        g5=g5,
        g6=-g5,
        h1=h1,
        h2=(g * h1 / d1) * em1(d1),
        h3=(chi * h1 / d2) * em1(d2),
        h4=h4,
        h5=h5,
        h6=-h5,
        h7=h7,
        h8=-h7,
        l1=l1,
        l2=-(chic * l1 / d2) * em1(-d2),
        l3=(chic * g * l1 / d1) * (em1(dm) / dm + em1(-d2) / d2),
        l4=(chic * gc * l1 / d1) * (em1(-dp) / dp - em1(-d2) / d2),
        l5=l5,
        l6=l5,
    )
