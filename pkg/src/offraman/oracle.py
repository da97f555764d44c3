"""Exact evolution of the four-mode Raman Hamiltonian in a truncated Fock basis.

Used as ground truth for the perturbative mean fields, noise terms and
joint photon-phonon number probabilities at small coupling.

The free part is split as ``omega_L N_ph + omega_V M + dw1 n_S - dw2 n_A`` with
``N_ph = n_L + n_S + n_A`` and ``M = n_V - n_S + n_A`` both conserved, so the
large optical frequencies enter only through an exact diagonal phase.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply
from scipy.stats import poisson

from .charfun import noise_terms
from .config import PAIRS, Chaotic, Mode, RamanConfig

__all__ = [
    "FockBasis",
    "OracleResult",
    "OracleError",
    "DimensionError",
    "LeakageError",
    "NormDriftError",
    "UnconvergedError",
    "cutoff_sensitivity",
    "build_hamiltonian",
    "evolve",
    "compare",
    "exact_cumulants",
    "fit_exponent",
]

MODES = (Mode.L, Mode.S, Mode.V, Mode.A)
DIM_CAP = 20000
LEAKAGE_TOL = 1e-8
NORM_TOL = 1e-10
MIXTURE_TOL = 1e-8


class OracleError(RuntimeError):
    """Numerical contract of the exact simulation was violated."""


class DimensionError(OracleError, ValueError):
    pass


class LeakageError(OracleError):
    pass


class NormDriftError(OracleError):
    pass


class UnconvergedError(OracleError):
    """Raising the cutoffs changed the moments by more than the tolerance."""


@dataclass(frozen=True)
class FockBasis:
    """Product basis with per-mode photon/phonon cutoffs, ordered (L, S, V, A)."""

    cutoffs: tuple[int, int, int, int]
    cap: int = DIM_CAP

    def __post_init__(self):
        if len(self.cutoffs) != 4 or any(int(n) < 1 for n in self.cutoffs):
            raise ValueError(f"need four cutoffs >= 1, got {self.cutoffs!r}")
        object.__setattr__(self, "cutoffs", tuple(int(n) for n in self.cutoffs))
        if self.dim > self.cap:
            raise DimensionError(f"basis dimension {self.dim} exceeds cap {self.cap}")

    @classmethod
    def uniform(cls, n: int, cap: int = DIM_CAP) -> "FockBasis":
        return cls((n, n, n, n), cap)

    @classmethod
    def for_config(cls, cfg: RamanConfig, tail: float = 1e-12, extra: int = 1, cap: int = DIM_CAP) -> "FockBasis":
        """Smallest per-mode cutoffs whose initial leakage is below ``tail``, plus ``extra``."""
        cuts = []
        for m in MODES:
            if m is Mode.V and cfg.chaotic:
                ratio, n = cfg.n_mean / (1 + cfg.n_mean), 2
                while ratio ** (n - 1) > tail:
                    n += 1
            else:
                n = 1
                while coherent_tail(cfg.intensity(m), n) > tail:
                    n += 1
            cuts.append(n + extra)
        return cls(tuple(cuts), cap)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(n + 1 for n in self.cutoffs)

    @property
    def dim(self) -> int:
        return math.prod(self.shape)

    def index(self, occupation: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(occupation), self.shape))

    def occupation(self, index: int) -> tuple[int, ...]:
        return tuple(int(k) for k in np.unravel_index(index, self.shape))

    def numbers(self) -> dict[Mode, np.ndarray]:
        """Occupation of each mode for every flat basis index."""
        grids = np.indices(self.shape).reshape(4, -1)
        return {m: grids[k] for k, m in enumerate(MODES)}

    def lowering(self, mode: Mode) -> sp.csr_matrix:
        k = MODES.index(mode)
        mats = []
        for j, n in enumerate(self.cutoffs):
            if j == k:
                mats.append(sp.diags(np.sqrt(np.arange(1, n + 1, dtype=float)), 1, format="csr"))
            else:
                mats.append(sp.identity(n + 1, format="csr"))
        out = mats[0]
        for m in mats[1:]:
            out = sp.kron(out, m, format="csr")
        return out


def _interaction(cfg: RamanConfig, basis: FockBasis) -> sp.csr_matrix:
    a = {m: basis.lowering(m) for m in MODES}
    ad = {m: a[m].conj().T for m in MODES}
    v = cfg.g * (a[Mode.L] @ ad[Mode.S] @ ad[Mode.V]) + cfg.chi.conjugate() * (
        a[Mode.L] @ a[Mode.V] @ ad[Mode.A]
    )
    return -(v + v.conj().T)


def build_hamiltonian(
    cfg: RamanConfig, basis: FockBasis, *, rotating: bool = False, interaction: bool = True
) -> sp.csr_matrix:
    """Sparse ``H / hbar`` in the truncated basis.

    With ``rotating=True`` the conserved ``omega_L N_ph + omega_V M`` part is
    left out; the omitted piece commutes with the rest.  ``interaction=False``
    keeps only the free part.
    """
    num = basis.numbers()
    if rotating:
        diag = cfg.dw1 * num[Mode.S] - cfg.dw2 * num[Mode.A]
    else:
        diag = sum(cfg.omega[m] * num[m] for m in MODES)
    h = sp.diags(diag.astype(complex), 0, format="csr")
    if interaction:
        h = h + _interaction(cfg, basis)
    return h.tocsr()


def _conserved_phase(cfg: RamanConfig, basis: FockBasis, t: float) -> np.ndarray:
    num = basis.numbers()
    nph = num[Mode.L] + num[Mode.S] + num[Mode.A]
    mm = num[Mode.V] - num[Mode.S] + num[Mode.A]
    return np.exp(-1j * t * (cfg.omega[Mode.L] * nph + cfg.omega[Mode.V] * mm))


def coherent_tail(intensity: float, cutoff: int) -> float:
    """Poisson weight on levels ``>= cutoff``.

    The top kept level counts as leaked: the ladder operators connect it to
    the discarded part, so moments are wrong at that order.
    """
    return float(poisson.sf(cutoff - 1, intensity)) if intensity > 0 else 0.0


def coherent_vector(alpha: complex, cutoff: int) -> tuple[np.ndarray, float]:
    """Truncated coherent state and its leakage (see :func:`coherent_tail`)."""
    n = np.arange(cutoff + 1)
    logamp = -0.5 * abs(alpha) ** 2 - 0.5 * np.array([math.lgamma(k + 1) for k in n])
    vec = np.zeros(cutoff + 1, complex)
    vec[0] = math.exp(-0.5 * abs(alpha) ** 2)
    if alpha != 0:
        vec[1:] = np.exp(logamp[1:]) * np.power(complex(alpha), n[1:])
    return vec, coherent_tail(abs(alpha) ** 2, cutoff)


def fock_vector(n: int, cutoff: int) -> np.ndarray:
    if n > cutoff:
        raise LeakageError(f"Fock state {n} exceeds cutoff {cutoff}")
    v = np.zeros(cutoff + 1, complex)
    v[n] = 1.0
    return v


def _product_state(factors: Sequence[np.ndarray]) -> np.ndarray:
    psi = factors[0]
    for f in factors[1:]:
        psi = np.kron(psi, f)
    return psi


@dataclass
class OracleResult:
    """Moments of the exactly evolved state at one time."""

    t: float
    means: dict[Mode, complex]
    normal: dict[tuple[Mode, Mode], complex]  # <a_i^+ a_j>
    anomalous: dict[tuple[Mode, Mode], complex]  # <a_i a_j>
    joint_probs: dict[tuple[Mode, Mode], np.ndarray] = field(default_factory=dict)
    norm_error: float = 0.0
    energy_drift: float = 0.0
    leakage: float = 0.0


def _initial_components(cfg: RamanConfig, basis: FockBasis, fock: dict | None, mixture_tol: float = MIXTURE_TOL):
    """(weight, state vector, leakage) triples; more than one for a thermal phonon."""
    fock = {Mode(k): v for k, v in (fock or {}).items()}
    leak_total = 0.0
    base: dict[Mode, np.ndarray] = {}
    for k, m in enumerate(MODES):
        nc = basis.cutoffs[k]
        if m in fock:
            base[m] = fock_vector(fock[m], nc)
        elif m is Mode.V and cfg.chaotic:
            continue
        else:
            vec, leak = coherent_vector(cfg.xi0[m], nc)
            if leak > LEAKAGE_TOL:
                raise LeakageError(f"mode {m}: coherent truncation leaks {leak:.2e} > {LEAKAGE_TOL:g}")
            leak_total += leak
            base[m] = vec / np.linalg.norm(vec)
    if not cfg.chaotic or Mode.V in fock:
        return [(1.0, _product_state([base[m] for m in MODES]), leak_total)]
    nbar = cfg.n_mean
    ratio = nbar / (1 + nbar)
    weights, cum = [], 0.0
    # keep every component two levels below the top so the ladder operators stay exact
    for n in range(basis.cutoffs[2] - 1):
        w = ratio**n / (1 + nbar)
        weights.append(w)
        cum += w
        if cum >= 1 - mixture_tol or nbar == 0:
            break
    else:
        raise LeakageError(f"thermal phonon weight {1 - cum:.2e} beyond cutoff {basis.cutoffs[2]}")
    comps = []
    for n, w in enumerate(weights):
        factors = [base[Mode.L], base[Mode.S], fock_vector(n, basis.cutoffs[2]), base[Mode.A]]
        comps.append((w / cum, _product_state(factors), leak_total + (1 - cum)))
    return comps


def _moments(psi, ops, basis, joint_pairs):
    a, ad = ops
    means = {m: complex(np.vdot(psi, a[m] @ psi)) for m in MODES}
    normal, anomalous = {}, {}
    apsi = {m: a[m] @ psi for m in MODES}
    for i in MODES:
        for j in MODES:
            normal[(i, j)] = complex(np.vdot(apsi[i], apsi[j]))
            anomalous[(i, j)] = complex(np.vdot(psi, a[i] @ apsi[j]))
    probs = np.abs(psi.reshape(basis.shape)) ** 2
    joints = {}
    for i, j in joint_pairs:
        ki, kj = MODES.index(i), MODES.index(j)
        other = tuple(k for k in range(4) if k not in (ki, kj))
        pj = probs.sum(axis=other)
        joints[(i, j)] = pj if ki < kj else pj.T
    return means, normal, anomalous, joints


def evolve(
    cfg: RamanConfig,
    basis: FockBasis,
    fock: dict | None = None,
    *,
    times: Iterable[float] | None = None,
    joint_pairs: Sequence[tuple[Mode, Mode]] = (),
    mixture_tol: float = MIXTURE_TOL,
    interaction: bool = True,
) -> list[OracleResult] | OracleResult:
    """Exact moments at ``cfg.t`` (or at each of ``times``).

    The initial state is a product of truncated coherent states with the
    amplitudes of ``cfg``; modes listed in ``fock`` start in that number
    state instead, and a chaotic phonon is realized as a thermal mixture of
    phonon number states, dropped once the kept weight reaches
    ``1 - mixture_tol``.
    """
    single = times is None
    ts = [cfg.t] if single else [float(t) for t in times]
    comps = _initial_components(cfg, basis, fock, mixture_tol)
    hrot = build_hamiltonian(cfg, basis, rotating=True, interaction=interaction)
    hfull = build_hamiltonian(cfg, basis, interaction=interaction)
    a = {m: basis.lowering(m) for m in MODES}
    ad = {m: a[m].conj().T.tocsr() for m in MODES}
    results = []
    for t in ts:
        acc = None
        norm_err = energy_drift = leak = 0.0
        for w, psi0, lk in comps:
            psi = expm_multiply(-1j * t * hrot, psi0) if t > 0 else psi0.copy()
            psi = psi * _conserved_phase(cfg, basis, t)
            norm_err = max(norm_err, abs(np.vdot(psi, psi).real - np.vdot(psi0, psi0).real))
            e0 = np.vdot(psi0, hfull @ psi0).real
            e1 = np.vdot(psi, hfull @ psi).real
            energy_drift = max(energy_drift, abs(e1 - e0) / max(1.0, abs(e0)))
            leak = max(leak, lk)
            mom = _moments(psi, (a, ad), basis, joint_pairs)
            if acc is None:
                acc = [{k: w * v for k, v in d.items()} for d in mom]
            else:
                for d_acc, d in zip(acc, mom):
                    for k, v in d.items():
                        d_acc[k] = d_acc[k] + w * v
        if norm_err > NORM_TOL:
            raise NormDriftError(f"norm drift {norm_err:.2e} exceeds {NORM_TOL:g}")
        means, normal, anomalous, joints = acc
        results.append(OracleResult(t, means, normal, anomalous, joints, norm_err, energy_drift, leak))
    return results[0] if single else results


def exact_cumulants(res: OracleResult) -> dict[str, complex]:
    """Oracle counterpart of :meth:`NoiseTerms.entries`."""
    mu = res.means
    out: dict[str, complex] = {}
    for m in MODES:
        out[f"B_{m}"] = res.normal[(m, m)] - abs(mu[m]) ** 2
    for m in MODES:
        out[f"C_{m}"] = res.anomalous[(m, m)] - mu[m] ** 2
    for i, j in PAIRS:
        out[f"D_{i}{j}"] = res.anomalous[(i, j)] - mu[i] * mu[j]
    for i, j in PAIRS:
        out[f"Dbar_{i}{j}"] = res.normal[(i, j)] - mu[i].conjugate() * mu[j]
    for m in MODES:
        out[f"xi_{m}"] = mu[m]
    return out


def cutoff_sensitivity(
    cfg: RamanConfig, basis: FockBasis, *, rtol: float = 1e-6, atol: float = 1e-13, strict: bool = False
) -> float:
    """Largest change of any first or second moment when every cutoff grows by one.

    The change is measured as ``|delta| / (rtol |value| + atol)`` so a return
    value above 1 means unconverged; with ``strict`` that raises instead.
    """
    # the enlarged basis is a one-off check, so it may use twice the usual cap
    bigger = FockBasis(tuple(n + 1 for n in basis.cutoffs), 2 * basis.cap)
    lo = exact_cumulants(evolve(cfg, basis))
    hi = exact_cumulants(evolve(cfg, bigger))
    worst = max(abs(hi[k] - lo[k]) / (rtol * abs(hi[k]) + atol) for k in lo)
    if strict and worst > 1.0:
        raise UnconvergedError(f"moments move by {worst:.2f}x the tolerance when cutoffs grow by one")
    return float(worst)


def fit_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log(y) against log(x)."""
    lx, ly = np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float))
    return float(np.polyfit(lx, ly, 1)[0])


def compare(
    cfg: RamanConfig,
    basis: FockBasis,
    gts: Sequence[float] = (0.01, 0.02, 0.04),
    *,
    floor: float = 1e-12,
    min_exponent: float = 2.5,
    mixture_tol: float = 1e-13,
) -> dict:
    """Perturbative versus exact moments over a sweep of ``|g| t``.

    Returns a JSON-friendly report with per-quantity absolute discrepancies,
    the fitted power-law exponent of each discrepancy against ``gt`` and an
    overall pass flag.  Discrepancies that never exceed ``floor`` are treated
    as exact agreement.
    """
    times = [gt / abs(cfg.g) for gt in gts]
    exact = evolve(cfg, basis, times=times, mixture_tol=mixture_tol)
    disc: dict[str, list[float]] = {}
    diagnostics = []
    for gt, res in zip(gts, exact):
        pert = noise_terms(cfg.replace(gt=gt)).entries()
        ex = exact_cumulants(res)
        for key, v in pert.items():
            disc.setdefault(key, []).append(abs(v - ex[key]))
        diagnostics.append(
            {"gt": gt, "norm_error": res.norm_error, "energy_drift": res.energy_drift, "leakage": res.leakage}
        )
    quantities = {}
    ok = True
    for key, d in disc.items():
        if max(d) <= floor:
            quantities[key] = {"discrepancy": d, "exponent": None, "pass": True}
            continue
        p = fit_exponent(gts, [max(x, 1e-300) for x in d])
        passed = p >= min_exponent
        ok &= passed
        quantities[key] = {"discrepancy": d, "exponent": p, "pass": passed}
    return {
        "gt": list(gts),
        "cutoffs": list(basis.cutoffs),
        "regime": "chaotic" if isinstance(cfg.phonon, Chaotic) else "coherent",
        "quantities": quantities,
        "diagnostics": diagnostics,
        "pass": ok,
    }
