"""Parameter files, sweep descriptions, named quantities and figure presets.

A parameter set is a flat ``dict`` of dimensionless values.  Physical keys
build a :class:`~offraman.config.RamanConfig`; the remaining keys (``s``,
``W_S``, ``W_V``, ``W_L``, ``n``, ``n_L``, ``n_V``) are evaluation points
for distribution quantities.

Distribution quantities are evaluated in the regime their formulas assume,
projected from the given parameters: Stokes-phonon quantities keep only the
pump amplitude, pump-phonon quantities keep pump and anti-Stokes.  In both
the phonon starts in vacuum.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable

import numpy as np

from . import distributions as dist
from .charfun import noise_terms
from .config import Chaotic, Coherent, ConfigError, Mode, RamanConfig, make_config
from .witnesses import closed_forms, witness_report

__all__ = [
    "DEFAULTS",
    "Axis",
    "SweepSpec",
    "Point",
    "QUANTITIES",
    "FIGURES",
    "parse_params",
    "build_config",
    "parse_sweep",
    "evaluate",
    "figure_panels",
]

REAL_KEYS = {"dw1", "dw2", "omega_V", "omega_L", "gt", "n_mean", "s", "W_S", "W_V", "W_L", "n", "n_L", "n_V"}
COMPLEX_KEYS = {"g", "chi", "xi_L", "xi_S", "xi_V", "xi_A"}
INTENSITY_KEYS = {"I_L", "I_S", "I_V", "I_A"}
WORD_KEYS = {"phonon", "dbar"}

#: values used for any key a parameter file leaves out
DEFAULTS: dict[str, object] = {
    "g": 1.0, "chi": 1.0, "dw1": 0.0, "dw2": 0.0, "omega_V": 1.0, "omega_L": 100.0, "gt": 0.1,
    "phonon": "coherent", "n_mean": 0.0, "dbar": "re",
    "s": 1.0, "W_S": 1.0, "W_V": 0.5, "W_L": 1.0, "n": 1.0, "n_L": 1.0, "n_V": 2.0,
}

SWEEP_NAMES = REAL_KEYS - {"omega_V", "omega_L"} | INTENSITY_KEYS | {"dw_locked+", "dw_locked-"}


def _parse_value(key: str, text: str):
    if key in REAL_KEYS or key in INTENSITY_KEYS:
        v = float(text)
        if not math.isfinite(v):
            raise ValueError("not finite")
        return v
    if key in COMPLEX_KEYS:
        return complex(text.replace(" ", ""))
    if key == "phonon":
        if text not in ("coherent", "chaotic"):
            raise ValueError("expected 'coherent' or 'chaotic'")
        return text
    if key == "dbar":
        if text not in ("re", "abs"):
            raise ValueError("expected 're' or 'abs'")
        return text
    raise KeyError(key)


def parse_params(text: str, source: str = "<config>") -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    params: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (p.strip() for p in line.split("=", 1))
        try:
            params[key] = _parse_value(key, value)
        except KeyError:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}") from None
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {value!r} ({exc})") from None
    for m in "LSVA":
        if f"I_{m}" in params and f"xi_{m}" in params:
            raise ConfigError(f"{source}: give either I_{m} or xi_{m}, not both")
    return params


def _amplitude(params: dict, m: str) -> complex:
    if f"I_{m}" in params:
        i = params[f"I_{m}"]
        if i < 0:
            raise ConfigError(f"I_{m} must be >= 0, got {i!r}")
        return complex(math.sqrt(i))
    return complex(params.get(f"xi_{m}", 0.0))


def build_config(params: dict) -> RamanConfig:
    p = {**DEFAULTS, **params}
    if p["phonon"] == "chaotic":
        phonon = Chaotic(p["n_mean"])
    else:
        if p.get("n_mean", 0.0) and "n_mean" in params:
            raise ConfigError("n_mean is only meaningful with phonon = chaotic")
        phonon = Coherent()
    return make_config(
        g=p["g"], chi=p["chi"], dw1=p["dw1"], dw2=p["dw2"], omega_V=p["omega_V"], omega_L=p["omega_L"],
        gt=p["gt"], amplitudes={m: _amplitude(p, m) for m in "LSVA"}, phonon=phonon,
    )


@dataclass(frozen=True)
class Axis:
    name: str
    values: tuple[float, ...]

    def apply(self, params: dict, value: float) -> dict:
        out = dict(params)
        if self.name in ("dw_locked+", "dw_locked-"):
            out["dw1"] = value
            out["dw2"] = value if self.name.endswith("+") else -value
        elif self.name in INTENSITY_KEYS:
            m = self.name[2:]
            if value < 0:
                raise ConfigError(f"{self.name} must be >= 0")
            old = complex(out.pop(f"xi_{m}", math.sqrt(out.get(self.name, 0.0))))
            phase = cmath.phase(old) if old else 0.0
            out.pop(self.name, None)
            out[f"xi_{m}"] = cmath.rect(math.sqrt(value), phase)
        else:
            out[self.name] = value
        return out


@dataclass(frozen=True)
class SweepSpec:
    """One or two axes; 2D grids are traversed row-major (first axis outer)."""

    axes: tuple[Axis, ...]

    def points(self, params: dict) -> Iterable[tuple[tuple[float, ...], dict]]:
        if len(self.axes) == 1:
            (ax,) = self.axes
            for v in ax.values:
                yield (v,), ax.apply(params, v)
            return
        a, b = self.axes
        for u in a.values:
            pu = a.apply(params, u)
            for v in b.values:
                yield (u, v), b.apply(pu, v)


def _parse_axis(text: str) -> Axis:
    if "=" not in text:
        raise ConfigError(f"sweep axis {text!r}: expected name=start:stop:count or name=value")
    name, rng = (p.strip() for p in text.split("=", 1))
    if name not in SWEEP_NAMES:
        raise ConfigError(f"cannot sweep {name!r}; choose from {', '.join(sorted(SWEEP_NAMES))}")
    parts = rng.split(":")
    try:
        if len(parts) == 1:
            return Axis(name, (float(parts[0]),))
        if len(parts) != 3:
            raise ValueError
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"sweep axis {text!r}: range must be start:stop:count") from None
    if count < 2 or not start < stop:
        raise ConfigError(f"sweep axis {text!r}: need count >= 2 and start < stop")
    return Axis(name, tuple(float(v) for v in np.linspace(start, stop, count)))


def parse_sweep(text: str) -> SweepSpec:
    """``"dw1=0:50:101"`` or ``"dw1=0:50:51,n_mean=0:10:21"``; a bare value gives one point."""
    axes = tuple(_parse_axis(t) for t in text.split(",") if t.strip())
    if not 1 <= len(axes) <= 2:
        raise ConfigError("a sweep has one or two axes")
    if len(axes) == 2 and axes[0].name == axes[1].name:
        raise ConfigError("the two sweep axes must differ")
    return SweepSpec(axes)


class Point:
    """One parameter set with lazily computed noise terms in each regime."""

    def __init__(self, params: dict):
        self.params = {**DEFAULTS, **params}
        self.cfg = build_config(params)

    def __getitem__(self, key: str) -> float:
        return self.params[key]

    @cached_property
    def nt(self):
        return noise_terms(self.cfg)

    @cached_property
    def report(self) -> dict[str, float]:
        return witness_report(self.nt, self.params["dbar"]).as_dict()

    @cached_property
    def nt_sv(self):
        x = self.cfg.xi0
        return noise_terms(self.cfg.replace(amplitudes={"L": x[Mode.L]}, phonon=Coherent()))

    @cached_property
    def nt_lv(self):
        x = self.cfg.xi0
        return noise_terms(self.cfg.replace(amplitudes={"L": x[Mode.L], "A": x[Mode.A]}, phonon=Coherent()))

    def b(self, which: str, m: str) -> float:
        nt = self.nt_sv if which == "sv" else self.nt_lv
        return float(np.real(nt.B[Mode(m)]))


def _scalar(grid) -> float:
    return float(grid.values[0, 0])


def _build_registry() -> dict[str, Callable[[Point], float]]:
    reg: dict[str, Callable[[Point], float]] = {}
    probe = Point({"dw1": 1.0, "gt": 0.1, "I_L": 1.0})
    for name in probe.report:
        reg[name] = lambda p, k=name: p.report[k]
    for m in "LSVA":
        reg[f"B_{m}"] = lambda p, m=m: float(np.real(p.nt.B[Mode(m)]))
    reg["s_th_SV"] = lambda p: dist.sth_sv(p.nt_sv)
    reg["s_th_LV"] = lambda p: dist.sth_lv(p.nt_lv)
    reg["p_SV"] = lambda p: float(dist.pair_probability(p.b("sv", "S"), p["n"]))
    reg["p_LV"] = lambda p: float(dist.pump_phonon_probability(p.b("lv", "L"), p.b("lv", "V"), p["n_L"], p["n_V"]))
    reg["pc_L"] = lambda p: float(
        dist.conditional_pump_probability(p.b("lv", "L"), p.b("lv", "V"), p["n_L"], p["n_V"])
    )
    reg["pc_V"] = lambda p: float(
        dist.conditional_phonon_probability(p.b("lv", "L"), p.b("lv", "V"), p["n_V"], p["n_L"])
    )
    reg["F_L"] = lambda p: dist.fano_conditional(p.nt_lv)[0]
    reg["F_V"] = lambda p: float(dist.fano_conditional(p.nt_lv)[1](p["n_L"]))
    reg["p_minus"] = lambda p: float(dist.difference_probability(p.b("lv", "L"), p.b("lv", "V"), p["n"]))
    reg["p_poisson"] = lambda p: float(dist.poisson_probability(p.b("lv", "L") + p.b("lv", "V"), p["n"]))
    reg["P_SV"] = lambda p: _scalar(dist.quasi_sv(p.nt_sv, p["s"], p["W_S"], p["W_V"]))
    reg["P_LV"] = lambda p: _scalar(dist.quasi_lv(p.nt_lv, p["W_L"], p["W_V"]))
    for name in ("K_plus_LV", "K_minus_LV", "K_plus_SV", "K_minus_SV", "lambda_L", "lambda_V",
                 "varW_L", "varW_V", "C_shot_LV", "C_shot_SV", "C_shot_VA"):
        reg[f"closed_{name}"] = lambda p, k=name: _closed(p, k)
    return reg


def _closed(p: Point, key: str) -> float:
    forms = closed_forms(p.cfg)
    if key not in forms:
        regime = "chaotic" if p.cfg.chaotic else "coherent"
        raise ConfigError(f"closed form {key!r} is not defined for a {regime} phonon")
    return forms[key]


QUANTITIES: dict[str, Callable[[Point], float]] = _build_registry()


def evaluate(params: dict, quantities: Iterable[str]) -> list[float]:
    names = list(quantities)
    unknown = [q for q in names if q not in QUANTITIES]
    if unknown:
        raise ConfigError(f"unknown quantity {unknown[0]!r}")
    pt = Point(params)
    return [QUANTITIES[q](pt) for q in names]


@dataclass(frozen=True)
class Panel:
    """A figure panel: fixed parameters, a sweep and the quantities to tabulate."""

    name: str
    params: dict
    sweep: str
    quantities: tuple[str, ...]


def _p(**kw) -> dict:
    return kw


# fixed values quoted with each figure; axis ranges are this package's choice
_FIG1 = _p(I_L=10.0, I_A=1.0, I_S=9.0, I_V=0.01, chi=1.0, g=1.0, gt=0.1, dw2=10.0)
_FIG2 = _p(I_L=10.0, I_A=1.0, I_S=9.0, chi=1.0, g=1.0, gt=0.1, dw2=10.0, phonon="chaotic")
_FIG3 = _p(I_L=10.0, I_A=1.0, chi=1.0, g=1.0)
_DW = "-100:100:401"
_DW2D = "-50:50:51"
_GT = "0.01:1:51"

FIGURES: dict[str, tuple[Panel, ...]] = {
    "1": (
        Panel("1a", _FIG1, f"dw1={_DW}", ("lambda_V",)),
        Panel("1b", _FIG1, f"gt={_GT},dw1={_DW2D}", ("lambda_LS",)),
        Panel("1c", _FIG1, f"gt={_GT},dw1={_DW2D}", ("lambda_SA",)),
        Panel("1d", _FIG1, f"gt={_GT},dw1={_DW2D}", ("lambda_VA",)),
    ),
    "2": (Panel("2", _FIG2, f"dw1=0:50:51,n_mean=0:10:51", ("lambda_L",)),),
    "3": (
        Panel("3a", {**_FIG3, "gt": 0.1}, f"n=0:10:11,dw1={_DW2D}", ("p_SV",)),
        Panel("3b", {**_FIG3, "n": 0.1}, f"dw1={_DW2D},gt={_GT}", ("p_SV",)),
        Panel("3c", {**_FIG3, "gt": 0.1, "n_V": 0.12, "n_L": 0.06}, f"dw1={_DW2D},dw2={_DW2D}", ("p_LV",)),
        Panel("3d_plus", {**_FIG3, "gt": 0.1, "n_V": 2.0}, f"n_L=0:2:21,dw_locked+={_DW2D}", ("p_LV",)),
        Panel("3d_minus", {**_FIG3, "gt": 0.1, "n_V": 2.0}, f"n_L=0:2:21,dw_locked-={_DW2D}", ("p_LV",)),
    ),
    "4": (Panel("4", {**_FIG3, "gt": 0.1}, f"dw1={_DW2D},dw2={_DW2D}", ("s_th_SV", "s_th_LV")),),
    "5": (
        Panel("5a", {**_FIG3, "dw1": 1.0, "dw2": 1.0, "s": 0.8, "W_S": 1.0, "W_V": 0.5}, f"gt={_GT}", ("P_SV",)),
        Panel("5b_plus", {**_FIG3, "dw1": 1.0, "dw2": 1.0, "W_L": 1.0, "W_V": 0.5}, f"gt={_GT}", ("P_LV",)),
        Panel("5b_minus", {**_FIG3, "dw1": 1.0, "dw2": -1.0, "W_L": 1.0, "W_V": 0.5}, f"gt={_GT}", ("P_LV",)),
    ),
    "6": (
    Panel("6a", {**_FIG3, "gt": 0.1, "W_L": 0.1, "W_V": 0.05}, f"dw1={_DW2D},dw2={_DW2D}", ("P_LV",)),
    Panel("6b", {**_FIG3, "W_L": 0.1, "W_V": 0.05}, f"dw_locked+={_DW2D},gt={_GT}", ("P_LV",)),
    Panel("6c", {**_FIG3, "gt": 0.1, "W_V": 0.05}, f"dw_locked+={_DW2D},W_L=0.01:2:51", ("P_LV",)),
    Panel("6d", {**_FIG3, "gt": 0.1, "W_L": 1.0}, f"dw_locked+={_DW2D},W_V=0.001:0.2:51", ("P_LV",)),
    ),
    "7": (
        Panel("7_plus", {**_FIG3, "gt": 0.1}, f"n_L=0:10:11,dw_locked+={_DW2D}", ("F_V",)),
        Panel("7_minus", {**_FIG3, "gt": 0.1}, f"n_L=0:10:11,dw_locked-={_DW2D}", ("F_V",)),
    ),
    "8": (
        Panel("8a", {**_FIG3, "gt": 0.1, "n_V": 2.0, "n_L": 1.0}, f"dw1={_DW2D},dw2={_DW2D}", ("pc_L",)),
        Panel("8b", {**_FIG3, "n_V": 2.0, "n_L": 1.0}, f"dw_locked+={_DW2D},gt={_GT}", ("pc_V",)),
    ),
    "9": (
        Panel("9a", {**_FIG3, "gt": 0.1, "n": 1.6}, f"dw1={_DW2D},dw2={_DW2D}", ("p_minus", "p_poisson")),
        Panel("9b", {**_FIG3, "gt": 0.1}, f"n=0:5:51,dw_locked+={_DW2D}", ("p_minus", "p_poisson")),
    ),
}


def figure_panels(fig_id: str) -> tuple[Panel, ...]:
    """Panels for ``"4"`` (whole figure) or ``"3b"`` (one panel)."""
    key = str(fig_id).strip()
    if key in FIGURES:
        return FIGURES[key]
    for panels in FIGURES.values():
        for p in panels:
            if p.name == key:
                return (p,)
    raise ConfigError(f"unknown figure {fig_id!r}; choose from {', '.join(FIGURES)}")
