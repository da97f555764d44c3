import numpy as np
import pytest
from hypothesis import given, strategies as st

from offraman.charfun import (
    NoiseTerms,
    RegimeError,
    mean_fields,
    noise_terms,
    noise_terms_chaotic,
    noise_terms_coherent,
)
from offraman.coefficients import eval_coeffs
from offraman.config import PAIRS, Chaotic, Coherent, Mode, make_config

from conftest import random_config

L, S, V, A = Mode.L, Mode.S, Mode.V, Mode.A


def test_zero_time_noise_vanishes(fig1_config):
    nt = noise_terms(fig1_config.replace(gt=0))
    for name, value in nt.entries().items():
        if not name.startswith("xi_"):
            assert value == 0, name


def test_zero_time_mean_fields_are_initial_amplitudes(fig1_config):
    cfg = fig1_config.replace(gt=0)
    xi = mean_fields(cfg)
    for m in Mode:
        assert xi[m] == cfg.xi0[m]


def test_zero_time_chaotic_keeps_thermal_phonon_number():
    cfg = make_config(dw1=2, dw2=3, gt=0, amplitudes={"L": 2, "S": 1, "A": 0.5}, phonon=Chaotic(1.7))
    nt = noise_terms(cfg)
    for name, value in nt.entries().items():
        if name == "B_V":
            assert value == 1.7
        elif not name.startswith("xi_"):
            assert value == 0, name


def test_pump_noise_at_zero_detuning_short_time():
    cfg = make_config(g=1, chi=1, gt=0.1, amplitudes={"A": 1.0})
    assert noise_terms(cfg).B[L] == pytest.approx(0.01, rel=1e-15)


def test_stokes_noise_chaotic_zero_detuning():
    cfg = make_config(g=1, chi=1, gt=0.1, amplitudes={"L": np.sqrt(10)}, phonon=Chaotic(1))
    assert noise_terms(cfg).B[S] == pytest.approx(0.2, rel=1e-14)


def test_phonon_noise_on_fig1_parameters(fig1_config):
    for dw1 in (-56.0, 0.0, 13.0):
        cfg = fig1_config.replace(dw1=dw1)
        co = eval_coeffs(cfg)
        assert abs(co.h3) ** 2 == pytest.approx(4 * np.sin(0.5) ** 2 / 100, rel=1e-13)
        expected = abs(co.h2) ** 2 * 10 + abs(co.h3) ** 2 * 1
        assert noise_terms(cfg).B[V] == pytest.approx(expected, rel=1e-13)


def test_spontaneous_mean_fields():
    cfg = make_config(g=0.9, chi=1.3, dw1=4, dw2=-3, gt=0.2, amplitudes={"L": 0.8 - 0.3j})
    co = eval_coeffs(cfg)
    xi = mean_fields(cfg)
    assert xi[S] == 0 and xi[V] == 0 and xi[A] == 0
    assert xi[L] == pytest.approx(co.f1 * cfg.xi0[L] + co.f5 * cfg.xi0[L], rel=1e-15)


def test_chaotic_phonon_mean_field_vanishes_without_seeded_sidebands():
    cfg = make_config(dw1=2, dw2=1, gt=0.3, amplitudes={"L": 1.5}, phonon=Chaotic(0.7))
    assert mean_fields(cfg)[V] == 0


def test_chaotic_phonon_mean_field_is_driven_by_seeded_sidebands():
    # a_V(t) picks up h2 a_L a_S^+ + h3 a_L^+ a_A, whose expectation does not
    # involve the phonon state
    cfg = make_config(dw1=2, dw2=1, gt=0.3, amplitudes={"L": 1.5, "S": 0.4j, "A": 0.2}, phonon=Chaotic(0.7))
    co, x = eval_coeffs(cfg), cfg.xi0
    expected = co.h2 * x[L] * x[S].conjugate() + co.h3 * x[L].conjugate() * x[A]
    assert mean_fields(cfg)[V] == pytest.approx(expected, rel=1e-15)


def test_regime_dispatch_and_errors():
    coherent = make_config(amplitudes={"L": 1})
    chaotic = make_config(amplitudes={"L": 1}, phonon=Chaotic(0.5))
    assert noise_terms(coherent).regime == "coherent"
    assert noise_terms(chaotic).regime == "chaotic"
    with pytest.raises(RegimeError):
        noise_terms_coherent(chaotic)
    with pytest.raises(RegimeError):
        noise_terms_chaotic(coherent)


def test_coherent_structural_zeros_are_exact(rng):
    for _ in range(20):
        nt = noise_terms(random_config(rng))
        assert nt.B[A] == 0 and nt.C[S] == 0 and nt.C[A] == 0
        for p in PAIRS:
            if p != (L, S):
                assert nt.Dbar[p] == 0


def test_vacuum_phonon_consistency(rng):
    for _ in range(200):
        chaotic = random_config(rng, chaotic=True).replace(n_mean=0)
        coherent = chaotic.replace(phonon=Coherent())
        a, b = noise_terms(chaotic).entries(), noise_terms(coherent).entries()
        for name in a:
            assert abs(a[name] - b[name]) <= 1e-12 * max(1.0, abs(b[name])), name


def test_short_time_reduction_at_resonance(rng):
    for _ in range(50):
        cfg = random_config(rng, chaotic=bool(rng.integers(2))).replace(dw1=0, dw2=0)
        nt = noise_terms(cfg)
        t = cfg.t
        n = cfg.n_mean
        assert nt.B[L] == pytest.approx(
            abs(cfg.chi) ** 2 * t**2 * cfg.intensity(A) * (n + 1) + abs(cfg.g) ** 2 * t**2 * cfg.intensity(S) * n,
            rel=1e-13,
        )
        assert nt.B[S] == pytest.approx(abs(cfg.g) ** 2 * t**2 * cfg.intensity(L) * (n + 1), rel=1e-13)


@given(st.floats(-1e-3, 1e-3), st.floats(-1e-3, 1e-3), st.floats(0.01, 1), st.floats(0, 5))
def test_short_time_reduction_near_resonance(a, b, gt, n):
    cfg = make_config(g=1.0, chi=0.8j, dw1=a / gt, dw2=b / gt, gt=gt,
                      amplitudes={"L": 2.0, "S": 0.5, "A": 1.0}, phonon=Chaotic(n))
    nt = noise_terms(cfg)
    t = cfg.t
    assert nt.B[S] == pytest.approx(t**2 * 4.0 * (n + 1), rel=1e-6)
    assert nt.B[L] == pytest.approx(0.64 * t**2 * 1.0 * (n + 1) + t**2 * 0.25 * n, rel=1e-6)


@given(st.integers(0, 2**32 - 1), st.booleans())
def test_noise_terms_are_finite_and_numbers_nonnegative(seed, chaotic):
    nt = noise_terms(random_config(np.random.default_rng(seed), chaotic=chaotic))
    for name, value in nt.entries().items():
        assert np.isfinite(value), name
    for m in Mode:
        assert np.isreal(nt.B[m]) and nt.B[m] >= 0


def test_entries_layout():
    names = list(NoiseTerms.zero().entries())
    assert names[:4] == ["B_L", "B_S", "B_V", "B_A"]
    assert "Dbar_VA" in names and "xi_A" in names and len(names) == 4 + 4 + 6 + 6 + 4
