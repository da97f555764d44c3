"""Photon-phonon number and integrated-intensity distributions with a vacuum phonon.

Two regimes are covered.  In the spontaneous Stokes-phonon regime (only the
pump is seeded) photons and phonons are created in pairs and the joint
number distribution is diagonal.  In the pump-phonon regime (pump and
anti-Stokes seeded, ``B_V > B_L``) the pump count given the phonon count is
binomial and the phonon count given the pump count is negative binomial.

All inputs are noise terms from :mod:`offraman.charfun`; only the ``B``
entries (and ``D_SV`` for the Stokes-phonon quasidistribution) are used.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import stats
from scipy.special import gammaln

from .charfun import NoiseTerms, RegimeError
from .config import Mode
from .witnesses import entanglement

__all__ = [
    "JointNumberDist",
    "QuasiDistGrid",
    "joint_sv",
    "joint_lv",
    "pair_probability",
    "pump_phonon_probability",
    "conditional_pump_probability",
    "conditional_phonon_probability",
    "sth_sv",
    "sth_lv",
    "quasi_sv",
    "quasi_lv",
    "fano_conditional",
    "fano_factor",
    "conditional_numbers",
    "difference_dist",
    "difference_probability",
    "poisson_probability",
]

L, S, V, A = Mode.L, Mode.S, Mode.V, Mode.A


def _b(nt: NoiseTerms, m: Mode) -> float:
    return float(np.real(nt.B[m]))


def _pump_phonon(nt: NoiseTerms, strict: bool = False) -> tuple[float, float]:
    bl, bv = _b(nt, L), _b(nt, V)
    if bv < bl or (strict and not bv > bl) or bl < 0:
        raise RegimeError(f"pump-phonon formulas need 0 <= B_L < B_V, got B_L={bl:.6g}, B_V={bv:.6g}")
    return bl, bv


@dataclass(frozen=True)
class JointNumberDist:
    """Joint probabilities ``probs[n_row, n_col]`` up to the stated cutoffs."""

    probs: np.ndarray
    labels: tuple[Mode, Mode]
    tail_bound: float

    @property
    def cutoffs(self) -> tuple[int, int]:
        return self.probs.shape[0] - 1, self.probs.shape[1] - 1

    @property
    def total(self) -> float:
        return float(self.probs.sum())

    def marginal(self, axis: int) -> np.ndarray:
        """Marginal of the row (``axis=0``) or column (``axis=1``) mode."""
        return self.probs.sum(axis=1 - axis)


@dataclass(frozen=True)
class QuasiDistGrid:
    """Quasidistribution values on the grid ``rows x cols``; may be negative."""

    values: np.ndarray
    rows: np.ndarray
    cols: np.ndarray
    labels: tuple[Mode, Mode]
    s: float

    @property
    def minimum(self) -> float:
        return float(self.values.min())


def _geometric_log(b: float, n):
    """log of ``b^n / (1+b)^(n+1)``, valid for real ``n``."""
    n = np.asarray(n, float)
    if b == 0:
        return np.where(n == 0, 0.0, -np.inf)
    return n * np.log(b) - (n + 1) * np.log1p(b)


def pair_probability(b_s: float, n):
    """Diagonal Stokes-phonon probability ``p(n, n)``; ``n`` may be fractional."""
    return np.exp(_geometric_log(float(b_s), n))


def joint_sv(nt: NoiseTerms, cutoff: int) -> JointNumberDist:
    """Stokes-phonon joint number distribution, nonzero only on the diagonal."""
    if int(cutoff) < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff!r}")
    n = int(cutoff)
    b = _b(nt, S)
    probs = np.zeros((n + 1, n + 1))
    k = np.arange(n + 1)
    probs[k, k] = pair_probability(b, k)
    tail = (b / (1 + b)) ** (n + 1)
    return JointNumberDist(probs, (S, V), float(tail))


def pump_phonon_probability(b_l: float, b_v: float, n_l, n_v):
    """``p(n_L, n_V)`` in the pump-phonon regime; accepts fractional counts.

    Zero for ``n_V < n_L``.
    """
    n_l, n_v = np.broadcast_arrays(np.asarray(n_l, float), np.asarray(n_v, float))
    ok = n_v >= n_l
    k = np.where(ok, n_v - n_l, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        logc = gammaln(n_v + 1) - gammaln(n_l + 1) - gammaln(k + 1)
        logp = (
            logc
            + np.where(n_l > 0, n_l * np.log(b_l) if b_l > 0 else -np.inf, 0.0)
            + np.where(k > 0, k * np.log(b_v - b_l) if b_v > b_l else -np.inf, 0.0)
            - (n_v + 1) * np.log1p(b_v)
        )
    out = np.where(ok, np.exp(logp), 0.0)
    return out if out.ndim else float(out)


def conditional_pump_probability(b_l: float, b_v: float, n_l, n_v):
    """``p(n_L | n_V)`` from the joint law and the phonon marginal; fractional counts allowed."""
    return pump_phonon_probability(b_l, b_v, n_l, n_v) / np.exp(_geometric_log(b_v, n_v))


def conditional_phonon_probability(b_l: float, b_v: float, n_v, n_l):
    """``p(n_V | n_L)`` from the joint law and the pump marginal; fractional counts allowed."""
    return pump_phonon_probability(b_l, b_v, n_l, n_v) / np.exp(_geometric_log(b_l, n_l))


def joint_lv(nt: NoiseTerms, cutoff) -> JointNumberDist:
    """Pump-phonon joint number distribution; ``cutoff`` is an int or ``(N_L, N_V)``."""
    nl, nv = (cutoff, cutoff) if np.isscalar(cutoff) else cutoff
    nl, nv = int(nl), int(nv)
    if min(nl, nv) < 1:
        raise ValueError(f"cutoffs must be >= 1, got {cutoff!r}")
    bl, bv = _pump_phonon(nt)
    grid_l, grid_v = np.meshgrid(np.arange(nl + 1), np.arange(nv + 1), indexing="ij")
    probs = pump_phonon_probability(bl, bv, grid_l, grid_v)
    tail = (bv / (1 + bv)) ** (nv + 1) + (bl / (1 + bl)) ** (nl + 1)
    return JointNumberDist(probs, (L, V), float(tail))


def sth_sv(nt: NoiseTerms) -> float:
    """Ordering threshold above which the Stokes-phonon quasidistribution can go negative."""
    b = _b(nt, S)
    return float(1 + 2 * b - 2 * np.sqrt(b))


def sth_lv(nt: NoiseTerms) -> float:
    """Ordering threshold for the pump-phonon quasidistribution."""
    bl = _b(nt, L)
    return float(1 + 2 * bl + _b(nt, S) - 2 * np.sqrt(bl))


def _sin_kernel(x: np.ndarray, k: float) -> np.ndarray:
    """``sin(x / sqrt(-k)) / x`` continued to ``sinh(x / sqrt(k)) / x`` for ``k > 0``.

    Returned as a (sign, log-magnitude) pair so the caller can fold in a
    decaying exponential before anything overflows.
    """
    if k < 0:
        r = np.sqrt(-k)
        val = np.sinc(x / (np.pi * r)) / r
        with np.errstate(divide="ignore"):
            return np.sign(val), np.log(np.abs(val))
    if k == 0:
        raise ValueError("ordering parameter sits exactly on the threshold; kernel is singular")
    r = np.sqrt(k)
    y = np.abs(x) / r
    # log(sinh(y)/y) = y + log1p(-exp(-2y)) - log(2y), with the series near 0
    small = y < 1e-4
    ys = np.where(small, 1.0, y)
    log_shc = np.where(small, y * y / 6, ys + np.log1p(-np.exp(-2 * ys)) - np.log(2 * ys))
    return np.ones_like(x), log_shc - np.log(r)


def quasi_sv(nt: NoiseTerms, s: float, w_s, w_v) -> QuasiDistGrid:
    """s-ordered Stokes-phonon integrated-intensity quasidistribution on a grid.

    Below the threshold ordering the oscillating kernel turns into its
    hyperbolic continuation, which is real and positive.
    """
    if not 0 < s <= 1:
        raise ValueError(f"ordering parameter must lie in (0, 1], got {s!r}")
    w_s, w_v = np.atleast_1d(np.asarray(w_s, float)), np.atleast_1d(np.asarray(w_v, float))
    b = _b(nt, S)
    b_ord = b + (1 - s) / 2
    k_sv = entanglement(nt, (S, V))[0]
    k_ord = k_sv + (1 - s) * b + (1 - s) ** 2 / 4
    ws, wv = np.meshgrid(w_s, w_v, indexing="ij")
    sign, logk = _sin_kernel(ws - wv, k_ord)
    logv = -np.log(np.pi * b_ord) - (ws + wv) / (2 * b_ord) + logk
    return QuasiDistGrid(sign * np.exp(logv), w_s, w_v, (S, V), float(s))


def quasi_lv(nt: NoiseTerms, w_l, w_v) -> QuasiDistGrid:
    """Normally ordered (s = 1) pump-phonon integrated-intensity quasidistribution."""
    bl, bv = _pump_phonon(nt, strict=True)
    if bl <= 0:
        raise RegimeError("pump-phonon quasidistribution needs B_L > 0")
    w_l, w_v = np.atleast_1d(np.asarray(w_l, float)), np.atleast_1d(np.asarray(w_v, float))
    wl, wv = np.meshgrid(w_l, w_v, indexing="ij")
    x = np.sqrt(bv / bl) * wl - np.sqrt(bl / bv) * wv
    sign, logk = _sin_kernel(x, -bl)
    logv = -np.log(np.pi * np.sqrt(bl * bv)) - wl / (2 * bl) - wv / (2 * bv) + logk
    return QuasiDistGrid(sign * np.exp(logv), w_l, w_v, (L, V), 1.0)


def fano_conditional(nt: NoiseTerms) -> tuple[float, Callable]:
    """Conditional Fano factors ``(F_L, F_V)``; ``F_V`` is a function of the pump count.

    ``F_L`` is the Fano factor of the pump count at fixed phonon count and does
    not depend on that count.
    """
    bl, bv = _b(nt, L), _b(nt, V)
    if bv == 0:
        raise RegimeError("conditional Fano factors need B_V > 0")
    if bv < bl:
        raise RegimeError(f"pump-phonon formulas need B_L <= B_V, got B_L={bl:.6g}, B_V={bv:.6g}")
    rho = (1 + bv) / (1 + bl)

    def f_v(n_l):
        m = np.asarray(n_l, float) + 1
        return ((m * rho**2 - 1) / (m * rho - 1)) - 1

    return 1 - bl / bv, f_v


def fano_factor(probs, start: int = 0) -> float:
    """Variance over mean of a number distribution given on ``start, start+1, ...``."""
    p = np.asarray(probs, float)
    n = start + np.arange(p.size)
    mass = p.sum()
    mean = (n * p).sum() / mass
    var = ((n - mean) ** 2 * p).sum() / mass
    return float(var / mean)


def conditional_numbers(nt: NoiseTerms, n_given: int, given: str = "V", cutoff: int | None = None):
    """Conditional count distribution in the pump-phonon regime.

    ``given="V"`` returns ``p(n_L | n_V = n_given)`` on ``n_L = 0..n_given``;
    ``given="L"`` returns ``p(n_V | n_L = n_given)`` on
    ``n_V = n_given..n_given + cutoff`` (default cutoff: tail below 1e-16).
    Returns ``(counts, probabilities)``.
    """
    bl, bv = _pump_phonon(nt)
    n_given = int(n_given)
    if n_given < 0:
        raise ValueError("conditioning count must be >= 0")
    if Mode(given) is V:
        counts = np.arange(n_given + 1)
        if bv == 0:
            return counts, (counts == 0).astype(float)
        return counts, stats.binom.pmf(counts, n_given, bl / bv)
    if Mode(given) is not L:
        raise ValueError(f"can condition on L or V only, got {given!r}")
    p_stop = (1 + bl) / (1 + bv)
    if cutoff is None:
        cutoff = int(stats.nbinom.isf(1e-16, n_given + 1, p_stop)) + 1 if p_stop < 1 else 0
    extra = np.arange(int(cutoff) + 1)
    return n_given + extra, stats.nbinom.pmf(extra, n_given + 1, p_stop)


def difference_probability(b_l: float, b_v: float, n):
    """Geometric difference-count probability; accepts fractional ``n``."""
    return np.exp(_geometric_log(b_v - b_l, n))


def poisson_probability(mean: float, n):
    """Poisson probability continued to fractional ``n`` through the gamma function."""
    n = np.asarray(n, float)
    if mean == 0:
        return np.where(n == 0, 1.0, 0.0)
    return np.exp(n * np.log(mean) - mean - gammaln(n + 1))


def difference_dist(nt: NoiseTerms, cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """``(p_minus, p_poisson)`` on ``n = 0..cutoff``.

    ``p_minus`` is the distribution of the phonon-minus-pump count and
    ``p_poisson`` the Poisson law with the combined mean ``B_L + B_V``.
    """
    bl, bv = _pump_phonon(nt)
    n = np.arange(int(cutoff) + 1)
    return difference_probability(bl, bv, n), stats.poisson.pmf(n, bl + bv)
