"""Gaussian normal-ordered characteristic-function data.

The noise terms are the second-order cumulants of the evolved fields,

    B_j = <da_j^+ da_j>,  C_j = <da_j^2>,  D_jk = <da_j da_k>,  Dbar_jk = <da_j^+ da_k>,

truncated to the order kept by the operator solution, plus the mean fields
``xi_j(t) = <a_j(t)>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .coefficients import CoeffSet, eval_coeffs
from .config import PAIRS, Mode, RamanConfig

__all__ = [
    "NoiseTerms",
    "RegimeError",
    "noise_terms",
    "noise_terms_coherent",
    "noise_terms_chaotic",
    "mean_fields",
]

L, S, V, A = Mode.L, Mode.S, Mode.V, Mode.A


class RegimeError(ValueError):
    """Input belongs to the wrong initial-state regime."""


def _zero_modes():
    return {m: 0j for m in Mode}


def _zero_pairs():
    return {p: 0j for p in PAIRS}


@dataclass(frozen=True)
class NoiseTerms:
    B: Mapping[Mode, float]
    C: Mapping[Mode, complex] = field(default_factory=_zero_modes)
    D: Mapping[tuple, complex] = field(default_factory=_zero_pairs)
    Dbar: Mapping[tuple, complex] = field(default_factory=_zero_pairs)
    xi_t: Mapping[Mode, complex] = field(default_factory=_zero_modes)
    regime: str = "coherent"

    @classmethod
    def zero(cls, regime: str = "coherent") -> "NoiseTerms":
        return cls(B={m: 0.0 for m in Mode}, regime=regime)

    def entries(self) -> dict[str, complex]:
        """Flat ``name -> value`` view, handy for comparisons and output."""
        out: dict[str, complex] = {}
        for m in Mode:
            out[f"B_{m}"] = self.B[m]
        for m in Mode:
            out[f"C_{m}"] = self.C[m]
        for i, j in PAIRS:
            out[f"D_{i}{j}"] = self.D[(i, j)]
        for i, j in PAIRS:
            out[f"Dbar_{i}{j}"] = self.Dbar[(i, j)]
        for m in Mode:
            out[f"xi_{m}"] = self.xi_t[m]
        return out


def mean_fields(cfg: RamanConfig, coeffs: CoeffSet | None = None) -> dict[Mode, complex]:
    """Expectation of each evolved annihilation operator in the initial state.

    Operator products are reduced with ``<a a^+> = |xi|^2 + 1``.  For a
    chaotic phonon only phonon-number-conserving monomials survive, with
    ``<a_V^+ a_V> = n`` and ``<a_V a_V^+> = n + 1``.
    """
    c = coeffs if coeffs is not None else eval_coeffs(cfg)
    x = cfg.xi0
    xl, xs, xa = x[L], x[S], x[A]
    il, is_, ia = abs(xl) ** 2, abs(xs) ** 2, abs(xa) ** 2
    if cfg.chaotic:
        n = cfg.n_mean
        return {
            L: c.f1 * xl + c.f4 * xl.conjugate() * xs * xa + c.f5 * xl * (is_ + 1)
            + (c.f6 + c.f7) * xl * n + c.f8 * xl * ia,
            S: c.g1 * xs + c.g3 * xl**2 * xa.conjugate() + c.g5 * xs * (n + 1)
            + c.g6 * xs * (il + 1),
            V: c.h2 * xl * xs.conjugate() + c.h3 * xl.conjugate() * xa,
            A: c.l1 * xa + c.l3 * xl**2 * xs.conjugate() + c.l5 * n * xa + c.l6 * (il + 1) * xa,
        }
    xv = x[V]
    iv = abs(xv) ** 2
    return {
        L: c.f1 * xl + c.f2 * xs * xv + c.f3 * xv.conjugate() * xa
        + c.f4 * xl.conjugate() * xs * xa + c.f5 * xl * (is_ + 1)
        + (c.f6 + c.f7) * xl * iv + c.f8 * xl * ia,
        S: c.g1 * xs + c.g2 * xl * xv.conjugate() + c.g3 * xl**2 * xa.conjugate()
        + c.g4 * xv.conjugate() ** 2 * xa + c.g5 * xs * (iv + 1) + c.g6 * xs * (il + 1),
        V: c.h1 * xv + c.h2 * xl * xs.conjugate() + c.h3 * xl.conjugate() * xa
        + c.h4 * xs.conjugate() * xv.conjugate() * xa + c.h5 * xv * (il + 1)
        + c.h6 * xv * (is_ + 1) + c.h7 * xv * ia + c.h8 * xv * il,
        A: c.l1 * xa + c.l2 * xl * xv + c.l3 * xl**2 * xs.conjugate() + c.l4 * xs * xv**2
        + c.l5 * iv * xa + c.l6 * (il + 1) * xa,
    }


def noise_terms_coherent(cfg: RamanConfig, coeffs: CoeffSet | None = None) -> NoiseTerms:
    """Noise terms when all four modes start coherent."""
    if cfg.chaotic:
        raise RegimeError("configuration has a chaotic phonon; use noise_terms_chaotic")
    c = coeffs if coeffs is not None else eval_coeffs(cfg)
    x = cfg.xi0
    xl, xs, xv, xa = x[L], x[S], x[V], x[A]
    il, ia = abs(xl) ** 2, abs(xa) ** 2

    B = {
        L: abs(c.f3) ** 2 * ia,
        S: abs(c.g2) ** 2 * il,
        V: abs(c.h2) ** 2 * il + abs(c.h3) ** 2 * ia,
        A: 0.0,
    }
    C = _zero_modes()
    C[L] = (c.f2 * c.f3 + c.f1 * c.f4) * xs * xa
    C[V] = (c.h2 * c.h3 + c.h1 * c.h4) * xs.conjugate() * xa
    D = _zero_pairs()
    D[(L, S)] = (c.f1 * c.g6 + c.f2 * c.g2) * xl * xs
    D[(L, V)] = c.f1 * c.h3 * xa + (c.f1 * c.h5 + c.f1 * c.h8 + c.f2 * c.h2) * xl * xv
    D[(L, A)] = c.f1 * c.l6 * xl * xa
    D[(S, V)] = (c.g1 * c.h2 * xl + c.g1 * c.h6 * xs * xv
                 + (c.g1 * c.h4 + c.g2 * c.h3) * xv.conjugate() * xa)
    D[(S, A)] = c.g1 * c.l3 * xl**2
    D[(V, A)] = c.h1 * c.l5 * xv * xa
    Dbar = _zero_pairs()
    Dbar[(L, S)] = c.f3.conjugate() * c.g2 * xl * xa.conjugate()
    return NoiseTerms(B=B, C=C, D=D, Dbar=Dbar, xi_t=mean_fields(cfg, c), regime="coherent")


def noise_terms_chaotic(cfg: RamanConfig, coeffs: CoeffSet | None = None) -> NoiseTerms:
    """Noise terms for a thermal phonon with mean number ``cfg.n_mean``."""
    if not cfg.chaotic:
        raise RegimeError("configuration has a coherent phonon; use noise_terms_coherent")
    c = coeffs if coeffs is not None else eval_coeffs(cfg)
    n = cfg.n_mean
    x = cfg.xi0
    xl, xs, xa = x[L], x[S], x[A]
    il, is_, ia = abs(xl) ** 2, abs(xs) ** 2, abs(xa) ** 2

    B = {
        L: abs(c.f2) ** 2 * is_ * n + abs(c.f3) ** 2 * ia * (n + 1),
        S: abs(c.g2) ** 2 * il * (n + 1),
        V: n + abs(c.h2) ** 2 * (il + n * (il - is_)) + abs(c.h3) ** 2 * (ia + n * (ia - il)),
        A: abs(c.l2) ** 2 * il * n,
    }
    C = _zero_modes()
    C[L] = (c.f2 * c.f3 * (2 * n + 1) + c.f1 * c.f4) * xs * xa
    C[V] = (c.h2 * c.h3 + c.h1 * c.h4 * (2 * n + 1)) * xs.conjugate() * xa
    D = _zero_pairs()
    D[(L, S)] = (c.f1 * c.g6 + c.f2 * c.g2 * (n + 1)) * xl * xs
    D[(L, V)] = c.f1 * c.h3 * (n + 1) * xa
    D[(L, A)] = (c.f1 * c.l6 + c.f3 * c.l2 * n) * xl * xa
    D[(S, V)] = c.g1 * c.h2 * (n + 1) * xl
    D[(S, A)] = (c.g1 * c.l3 + c.g2 * c.l2 * n) * xl**2
    Dbar = _zero_pairs()
    Dbar[(L, S)] = c.f3.conjugate() * c.g2 * (n + 1) * xl * xa.conjugate()
    Dbar[(L, V)] = c.f2.conjugate() * c.h1 * n * xs.conjugate()
    Dbar[(L, A)] = c.f2.conjugate() * c.l2 * n * xl * xs.conjugate()
    Dbar[(V, A)] = c.h1.conjugate() * c.l2 * n * xl
    return NoiseTerms(B=B, C=C, D=D, Dbar=Dbar, xi_t=mean_fields(cfg, c), regime="chaotic")


def noise_terms(cfg: RamanConfig, coeffs: CoeffSet | None = None) -> NoiseTerms:
    """Dispatch on the phonon state of ``cfg``."""
    if cfg.chaotic:
        return noise_terms_chaotic(cfg, coeffs)
    return noise_terms_coherent(cfg, coeffs)
