"""Value types shared by every other module.

All rates are measured in units of ``|g|`` so that ``|g| t`` is the
dimensionless (rescaled) time used for scans.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Union

__all__ = [
    "Mode",
    "PAIRS",
    "Coherent",
    "Chaotic",
    "RamanConfig",
    "ConfigError",
    "make_config",
    "DEFAULT_OMEGA_L",
    "DEFAULT_OMEGA_V",
]

#: base (pump) frequency used when deriving the absolute frequencies, units of |g|
DEFAULT_OMEGA_L = 100.0
#: default phonon frequency, units of |g|
DEFAULT_OMEGA_V = 1.0


class ConfigError(ValueError):
    """Invalid physical parameters."""


class Mode(str, enum.Enum):
    L = "L"  # pump (laser)
    S = "S"  # Stokes
    V = "V"  # vibration (phonon)
    A = "A"  # anti-Stokes

    def __str__(self) -> str:
        return self.value


#: two-mode index pairs, in the order the noise terms are subscripted
PAIRS: tuple[tuple[Mode, Mode], ...] = (
    (Mode.L, Mode.S),
    (Mode.L, Mode.V),
    (Mode.L, Mode.A),
    (Mode.S, Mode.V),
    (Mode.S, Mode.A),
    (Mode.V, Mode.A),
)


@dataclass(frozen=True)
class Coherent:
    """Phonon mode starts in the coherent state with amplitude ``xi0[V]``."""

    name = "coherent"


@dataclass(frozen=True)
class Chaotic:
    """Phonon mode starts in a thermal state with mean occupation ``n_mean``."""

    n_mean: float = 0.0
    name = "chaotic"

    def __post_init__(self):
        if not math.isfinite(self.n_mean) or self.n_mean < 0:
            raise ConfigError(f"n_mean must be finite and >= 0, got {self.n_mean!r}")


PhononState = Union[Coherent, Chaotic]


def _check_finite(name: str, value: complex) -> complex:
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ConfigError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class RamanConfig:
    """Couplings, detunings, frequencies, time and initial state of the four modes."""

    g: complex
    chi: complex
    dw1: float
    dw2: float
    omega: Mapping[Mode, float]
    t: float
    xi0: Mapping[Mode, complex]
    phonon: PhononState = field(default_factory=Coherent)

    def __post_init__(self):
        _check_finite("g", self.g)
        _check_finite("chi", self.chi)
        if self.g == 0:
            raise ConfigError("|g| must be > 0")
        for name in ("dw1", "dw2", "t"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ConfigError(f"{name} must be finite, got {v!r}")
        if self.t < 0:
            raise ConfigError(f"time must be >= 0, got {self.t!r}")
        missing = set(Mode) - set(self.omega)
        if missing or set(Mode) - set(self.xi0):
            raise ConfigError("omega and xi0 need an entry for every mode")
        for m in Mode:
            _check_finite(f"omega[{m}]", self.omega[m])
            _check_finite(f"xi0[{m}]", self.xi0[m])
        w = self.omega
        scale = max(1.0, *(abs(w[m]) for m in Mode))
        if abs(w[Mode.S] + w[Mode.V] - w[Mode.L] - self.dw1) > 1e-12 * scale:
            raise ConfigError("omega_S + omega_V - omega_L != dw1")
        if abs(w[Mode.L] + w[Mode.V] - w[Mode.A] - self.dw2) > 1e-12 * scale:
            raise ConfigError("omega_L + omega_V - omega_A != dw2")
        if not isinstance(self.phonon, (Coherent, Chaotic)):
            raise ConfigError(f"unknown phonon state {self.phonon!r}")

    @property
    def gt(self) -> float:
        return abs(self.g) * self.t

    @property
    def chaotic(self) -> bool:
        return isinstance(self.phonon, Chaotic)

    @property
    def n_mean(self) -> float:
        return self.phonon.n_mean if self.chaotic else 0.0

    def intensity(self, mode: Mode) -> float:
        return abs(self.xi0[mode]) ** 2

    @property
    def intensities(self) -> dict[Mode, float]:
        return {m: self.intensity(m) for m in Mode}

    def replace(self, **changes) -> "RamanConfig":
        """Copy with some fields changed.

        Besides the dataclass fields this accepts ``gt``, ``dw1``/``dw2``
        (frequencies are re-derived), ``n_mean`` and per-mode intensities
        ``I_L``.. ``I_A`` (phase of the old amplitude is kept).
        """
        kw = dict(
            g=self.g, chi=self.chi, dw1=self.dw1 / abs(self.g), dw2=self.dw2 / abs(self.g),
            omega_V=self.omega[Mode.V] / abs(self.g), omega_L=self.omega[Mode.L] / abs(self.g),
            gt=self.gt, amplitudes=dict(self.xi0), phonon=self.phonon,
        )
        for key, value in changes.items():
            if key in ("g", "chi", "dw1", "dw2", "gt", "omega_V", "omega_L", "phonon"):
                kw[key] = value
            elif key == "t":
                kw["gt"] = abs(kw["g"]) * value
            elif key == "n_mean":
                kw["phonon"] = Chaotic(value)
            elif key.startswith("I_") and key[2:] in Mode.__members__:
                m = Mode(key[2:])
                old = kw["amplitudes"][m]
                phase = cmath.phase(old) if old != 0 else 0.0
                kw["amplitudes"][m] = cmath.rect(math.sqrt(value), phase) if value > 0 else 0j
            elif key == "amplitudes":
                kw["amplitudes"] = {Mode(k): complex(v) for k, v in value.items()}
            else:
                raise TypeError(f"unknown field {key!r}")
        return make_config(**kw)


def make_config(
    g: complex = 1.0,
    chi: complex = 1.0,
    dw1: float = 0.0,
    dw2: float = 0.0,
    omega_V: float = DEFAULT_OMEGA_V,
    gt: float = 0.1,
    amplitudes: Mapping | None = None,
    phonon: PhononState | None = None,
    omega_L: float = DEFAULT_OMEGA_L,
) -> RamanConfig:
    """Build a validated :class:`RamanConfig` from dimensionless inputs.

    ``dw1``, ``dw2``, ``omega_V`` and ``omega_L`` are in units of ``|g|``;
    ``gt`` is the rescaled time ``|g| t``. The Stokes and anti-Stokes
    frequencies follow from ``omega_S = omega_L - omega_V + dw1`` and
    ``omega_A = omega_L + omega_V - dw2``. Missing amplitudes are zero.
    """
    g = _check_finite("g", g)
    if g == 0:
        raise ConfigError("|g| must be > 0")
    for name, v in (("dw1", dw1), ("dw2", dw2), ("omega_V", omega_V), ("omega_L", omega_L), ("gt", gt)):
        if not math.isfinite(v):
            raise ConfigError(f"{name} must be finite, got {v!r}")
    if gt < 0:
        raise ConfigError(f"gt must be >= 0, got {gt!r}")
    unit = abs(g)
    w_l, w_v = omega_L * unit, omega_V * unit
    d1, d2 = dw1 * unit, dw2 * unit
    omega = {
        Mode.L: w_l,
        Mode.V: w_v,
        Mode.S: w_l - w_v + d1,
        Mode.A: w_l + w_v - d2,
    }
    amps = {m: 0j for m in Mode}
    for k, v in (amplitudes or {}).items():
        amps[Mode(k)] = complex(v)
    return RamanConfig(
        g=g,
        chi=_check_finite("chi", chi),
        dw1=d1,
        dw2=d2,
        omega=omega,
        t=gt / unit,
        xi0=amps,
        phonon=Coherent() if phonon is None else phonon,
    )
