"""Scalar nonclassicality witnesses built from Gaussian noise terms.

Every function takes a :class:`~offraman.charfun.NoiseTerms` record and
returns plain floats.  Values are never clamped: a tiny negative number is
reported as is, and callers decide what counts as significant.

:func:`closed_forms` evaluates the specialised leading-order expressions
(pump/phonon entanglement, squeezing and wave variances) straight from the
coefficients, as an independent cross-check of the generic pipeline.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .charfun import NoiseTerms, noise_terms
from .coefficients import CoeffSet, eval_coeffs
from .config import PAIRS, Mode, RamanConfig

__all__ = [
    "WitnessReport",
    "entanglement",
    "sub_shot",
    "squeezing_single",
    "squeezing_pair",
    "wave_variance",
    "wave_covariance",
    "sum_diff_variance",
    "witness_report",
    "closed_forms",
    "closed_form_checks",
]

L, S, V, A = Mode.L, Mode.S, Mode.V, Mode.A


def _pair(pair) -> tuple[Mode, Mode]:
    i, j = (Mode(p) for p in pair)
    if (i, j) in PAIRS:
        return i, j
    if (j, i) in PAIRS:
        return j, i
    raise ValueError(f"not a pair of distinct modes: {pair!r}")


def _D(nt: NoiseTerms, pair) -> tuple[Mode, Mode, complex, complex]:
    i, j = _pair(pair)
    return i, j, complex(nt.D[(i, j)]), complex(nt.Dbar[(i, j)])


def entanglement(nt: NoiseTerms, pair) -> tuple[float, float]:
    """``(K_plus, K_minus)``; either one negative certifies entanglement."""
    i, j, d, db = _D(nt, pair)
    bi, bj = float(np.real(nt.B[i])), float(np.real(nt.B[j]))
    ci, cj = abs(nt.C[i]), abs(nt.C[j])
    kp = (bi + ci) * (bj + cj) - (abs(d) - abs(db)) ** 2
    km = (bi - ci) * (bj - cj) - (abs(d) + abs(db)) ** 2
    return float(kp), float(km)


def sub_shot(nt: NoiseTerms, pair) -> float:
    """Two-mode sub-shot-noise parameter; negative means nonclassical."""
    i, j, d, db = _D(nt, pair)
    bi, bj = float(np.real(nt.B[i])), float(np.real(nt.B[j]))
    return float(bi**2 + bj**2 + abs(nt.C[i]) ** 2 + abs(nt.C[j]) ** 2 - 2 * abs(d) ** 2 - 2 * abs(db) ** 2)


def squeezing_single(nt: NoiseTerms, mode) -> float:
    """``1 + 2(B - |C|)``; below 1 the mode is quadrature squeezed."""
    m = Mode(mode)
    return float(1 + 2 * (np.real(nt.B[m]) - abs(nt.C[m])))


def squeezing_pair(nt: NoiseTerms, pair, dbar_mode: str = "re") -> float:
    """Intermodal squeezing parameter; below 1 the pair is squeezed.

    The cross-number term enters as ``2 Re(Dbar)`` by default, or as
    ``2 |Dbar|`` with ``dbar_mode="abs"``.
    """
    i, j, d, db = _D(nt, pair)
    if dbar_mode == "re":
        cross = 2 * db.real
    elif dbar_mode == "abs":
        cross = 2 * abs(db)
    else:
        raise ValueError(f"dbar_mode must be 're' or 'abs', got {dbar_mode!r}")
    return float(1 + np.real(nt.B[i]) + np.real(nt.B[j]) - cross - abs(nt.C[i] + nt.C[j] + 2 * d))


def wave_variance(nt: NoiseTerms, mode) -> float:
    """Integrated-intensity variance of one mode; negative means antibunched."""
    m = Mode(mode)
    b, c, xi = float(np.real(nt.B[m])), complex(nt.C[m]), complex(nt.xi_t[m])
    return float(b**2 + abs(c) ** 2 + 2 * b * abs(xi) ** 2 + 2 * (c * xi.conjugate() ** 2).real)


def wave_covariance(nt: NoiseTerms, pair) -> float:
    """Integrated-intensity covariance of two modes."""
    i, j, d, db = _D(nt, pair)
    xi, xj = complex(nt.xi_t[i]), complex(nt.xi_t[j])
    cross = d * xi.conjugate() * xj.conjugate() - db * xi * xj.conjugate()
    return float(abs(d) ** 2 - abs(db) ** 2 + 2 * cross.real)


def sum_diff_variance(nt: NoiseTerms, pair) -> tuple[float, float]:
    """Sum and difference variances of the two integrated intensities."""
    i, j = _pair(pair)
    base = wave_variance(nt, i) + wave_variance(nt, j)
    cov = wave_covariance(nt, (i, j))
    return base + 2 * cov, base - 2 * cov


@dataclass(frozen=True)
class WitnessReport:
    """Every scalar witness at one configuration."""

    K_plus: Mapping[tuple, float]
    K_minus: Mapping[tuple, float]
    C_shot: Mapping[tuple, float]
    lambda_single: Mapping[Mode, float]
    lambda_pair: Mapping[tuple, float]
    varW: Mapping[Mode, float]
    covW: Mapping[tuple, float]
    sumvar: Mapping[tuple, float]
    diffvar: Mapping[tuple, float]

    def entangled(self, pair) -> bool:
        p = _pair(pair)
        return min(self.K_plus[p], self.K_minus[p]) < 0

    def rows(self) -> list[tuple[str, float, bool | None]]:
        """``(name, value, nonclassical)`` triples in a fixed order.

        The flag is ``None`` for the covariance, which has no sign criterion.
        """
        out: list[tuple[str, float, bool | None]] = []
        for i, j in PAIRS:
            out.append((f"K_plus_{i}{j}", self.K_plus[(i, j)], self.K_plus[(i, j)] < 0))
            out.append((f"K_minus_{i}{j}", self.K_minus[(i, j)], self.K_minus[(i, j)] < 0))
        for i, j in PAIRS:
            out.append((f"C_shot_{i}{j}", self.C_shot[(i, j)], self.C_shot[(i, j)] < 0))
        for m in Mode:
            out.append((f"lambda_{m}", self.lambda_single[m], self.lambda_single[m] < 1))
        for i, j in PAIRS:
            out.append((f"lambda_{i}{j}", self.lambda_pair[(i, j)], self.lambda_pair[(i, j)] < 1))
        for m in Mode:
            out.append((f"varW_{m}", self.varW[m], self.varW[m] < 0))
        for i, j in PAIRS:
            out.append((f"covW_{i}{j}", self.covW[(i, j)], None))
        for i, j in PAIRS:
            out.append((f"sumvar_{i}{j}", self.sumvar[(i, j)], self.sumvar[(i, j)] < 0))
            out.append((f"diffvar_{i}{j}", self.diffvar[(i, j)], self.diffvar[(i, j)] < 0))
        return out

    def as_dict(self) -> dict[str, float]:
        return {name: value for name, value, _ in self.rows()}


def witness_report(nt: NoiseTerms, dbar_mode: str = "re") -> WitnessReport:
    kp, km, cs, lp, cov, sv, dv = {}, {}, {}, {}, {}, {}, {}
    for p in PAIRS:
        kp[p], km[p] = entanglement(nt, p)
        cs[p] = sub_shot(nt, p)
        lp[p] = squeezing_pair(nt, p, dbar_mode)
        cov[p] = wave_covariance(nt, p)
        sv[p], dv[p] = sum_diff_variance(nt, p)
    return WitnessReport(
        K_plus=kp,
        K_minus=km,
        C_shot=cs,
        lambda_single={m: squeezing_single(nt, m) for m in Mode},
        lambda_pair=lp,
        varW={m: wave_variance(nt, m) for m in Mode},
        covW=cov,
        sumvar=sv,
        diffvar=dv,
    )


def closed_forms(cfg: RamanConfig, coeffs: CoeffSet | None = None) -> dict[str, float]:
    """Specialised expressions evaluated directly from coefficients and initial intensities.

    These keep only the leading order in the couplings (products such as
    ``B_S B_V`` and ``|C|^2`` are dropped, and wave variances use the initial
    amplitudes), so they agree with the generic pipeline up to terms of
    relative order ``(|g| t)^2``.
    """
    c = coeffs if coeffs is not None else eval_coeffs(cfg)
    x = cfg.xi0
    il, is_, ia = cfg.intensity(L), cfg.intensity(S), cfg.intensity(A)
    xs, xa, xl = abs(x[S]), abs(x[A]), x[L]
    a2 = lambda z: abs(z) ** 2  # noqa: E731
    out: dict[str, float] = {}
    if not cfg.chaotic:
        out["K_plus_LV"] = out["K_minus_LV"] = -a2(c.h3) * ia
        out["K_plus_SV"] = out["K_minus_SV"] = -a2(c.h2) * il
        out["lambda_L"] = 1 + 2 * a2(c.f3) * ia - 2 * abs(c.f2 * c.f3 + c.f1 * c.f4) * xs * xa
        out["lambda_V"] = (
            1 + 2 * a2(c.h2) * il + 2 * a2(c.h3) * ia - 2 * abs(c.h2 * c.h3 + c.h1 * c.h4) * xs * xa
        )
        out["varW_L"] = 2 * a2(c.f3) * ia * il + 2 * (
            (c.f2 * c.f3 + c.f1 * c.f4) * x[S] * x[A] * xl.conjugate() ** 2
        ).real
        out["varW_V"] = 2 * (a2(c.h2) * il + a2(c.h3) * ia) * cfg.intensity(V) + 2 * (
            (c.h2 * c.h3 + c.h1 * c.h4) * x[S].conjugate() * x[A] * x[V].conjugate() ** 2
        ).real
        return {k: float(v) for k, v in out.items()}
    n = cfg.n_mean
    mix = (abs(c.f2) * abs(c.f3) - abs(c.f1) * abs(c.f4)) * n * xs * xa
    out["K_plus_LV"] = -a2(c.h3) * ia * (n + 1) - mix
    out["K_minus_LV"] = -a2(c.h3) * ia * (n + 1) + mix
    out["K_plus_SV"] = out["K_minus_SV"] = -a2(c.h2) * il * (n + 1)
    out["C_shot_LV"] = n**2 - 2 * (a2(c.h3) * ia * (n + 1) ** 2 + a2(c.f2) * n**2 * is_)
    out["C_shot_SV"] = n**2 - 2 * a2(c.h2) * il * (n + 1) ** 2
    out["C_shot_VA"] = n**2 - 2 * a2(c.l2) * n**2 * il
    pump_b = a2(c.f3) * ia * (n + 1) + a2(c.f2) * n * is_
    pump_c = c.f2 * c.f3 * (2 * n + 1) + c.f1 * c.f4
    out["lambda_L"] = 1 + 2 * pump_b - 2 * abs(pump_c) * xs * xa
    out["varW_L"] = 2 * pump_b * il + 2 * (pump_c * x[S] * x[A] * xl.conjugate() ** 2).real
    return {k: float(v) for k, v in out.items()}


def closed_form_checks(
    cfg: RamanConfig, coeffs: CoeffSet | None = None, dbar_mode: str = "re"
) -> dict[str, tuple[float, float]]:
    """``name -> (closed form, generic pipeline)`` for every closed form at ``cfg``."""
    c = coeffs if coeffs is not None else eval_coeffs(cfg)
    pipe = witness_report(noise_terms(cfg, c), dbar_mode).as_dict()
    return {k: (v, pipe[k]) for k, v in closed_forms(cfg, c).items()}
