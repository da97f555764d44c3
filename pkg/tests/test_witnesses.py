import numpy as np
import pytest
from hypothesis import given, strategies as st

from offraman.charfun import NoiseTerms, noise_terms
from offraman.coefficients import eval_coeffs
from offraman.config import PAIRS, Chaotic, Mode, make_config
from offraman.witnesses import (
    closed_form_checks,
    closed_forms,
    entanglement,
    squeezing_pair,
    squeezing_single,
    sub_shot,
    sum_diff_variance,
    wave_covariance,
    wave_variance,
    witness_report,
)

from conftest import random_config

L, S, V, A = Mode.L, Mode.S, Mode.V, Mode.A


def test_zero_noise_is_classical_boundary():
    nt = NoiseTerms.zero()
    for p in PAIRS:
        assert entanglement(nt, p) == (0, 0)
        assert sub_shot(nt, p) == 0
        assert squeezing_pair(nt, p) == 1
        assert wave_covariance(nt, p) == 0
    for m in Mode:
        assert squeezing_single(nt, m) == 1
        assert wave_variance(nt, m) == 0


def test_pair_order_does_not_matter(rng):
    nt = noise_terms(random_config(rng))
    for i, j in PAIRS:
        assert entanglement(nt, (j, i)) == entanglement(nt, (i, j))
        assert sub_shot(nt, ("V", "S")) == sub_shot(nt, (S, V))
    with pytest.raises(ValueError):
        entanglement(nt, (L, L))


def test_stokes_phonon_entanglement_example():
    cfg = make_config(g=1, dw1=10, gt=0.1, amplitudes={"L": np.sqrt(10)})
    kp, km = entanglement(noise_terms(cfg), (S, V))
    expected = -4 * np.sin(0.5) ** 2 / 100 * 10
    assert expected == pytest.approx(-9.19395e-2, rel=1e-5)
    # spontaneous case: K = B_S B_V - |D_SV|^2 = |g2|^2 |h2|^2 I_L^2 - |h2|^2 I_L
    co = eval_coeffs(cfg)
    assert kp == km
    assert kp == pytest.approx(expected + abs(co.g2) ** 2 * abs(co.h2) ** 2 * 100, rel=1e-12)
    assert kp == pytest.approx(expected, rel=0.1)  # B_S ~ 0.09 here


def test_stokes_phonon_entanglement_chaotic_leading_order():
    for n in (0.0, 0.5, 3.0):
        cfg = make_config(g=1, dw1=10, gt=1e-3, amplitudes={"L": np.sqrt(10)}, phonon=Chaotic(n))
        kp, km = entanglement(noise_terms(cfg), (S, V))
        h2 = eval_coeffs(cfg).h2
        assert kp == pytest.approx(-abs(h2) ** 2 * 10 * (n + 1), rel=1e-4)
        assert km == pytest.approx(kp, rel=1e-4)


def test_sub_shot_anti_stokes_phonon_chaotic_leading_order():
    n = 1.3
    cfg = make_config(g=1, chi=0.7, dw1=3, dw2=-5, gt=1e-3, amplitudes={"L": 2.0}, phonon=Chaotic(n))
    l2 = eval_coeffs(cfg).l2
    assert sub_shot(noise_terms(cfg), (V, A)) == pytest.approx(n**2 - 2 * abs(l2) ** 2 * n**2 * 4, rel=1e-4)


def test_stokes_squeezing_absent_chaotic():
    n = 0.8
    cfg = make_config(g=1, dw1=6, dw2=2, gt=0.2, amplitudes={"L": 3, "S": 1, "A": 0.5j}, phonon=Chaotic(n))
    g2 = eval_coeffs(cfg).g2
    assert squeezing_single(noise_terms(cfg), S) == pytest.approx(1 + 2 * abs(g2) ** 2 * 9 * (n + 1), rel=1e-14)


def test_phonon_squeezing_on_fig1_curve(fig1_config):
    values = [squeezing_single(noise_terms(fig1_config.replace(dw1=d)), V) for d in np.linspace(-100, 100, 401)]
    assert min(values) < 1


def test_intermodal_pump_stokes_squeezing_exists(fig1_config):
    best = min(
        squeezing_pair(noise_terms(fig1_config.replace(dw1=d1, dw2=d2)), (L, S))
        for d1 in np.linspace(-50, 50, 41)
        for d2 in np.linspace(-50, 50, 41)
    )
    assert best < 1


def test_intermodal_squeezing_spontaneous_stokes_phonon():
    cfg = make_config(g=1.2, dw1=5, gt=0.3, amplitudes={"L": 1.5})
    nt = noise_terms(cfg)
    co = eval_coeffs(cfg)
    d_sv = co.g1 * co.h2 * cfg.xi0[L]
    assert nt.D[(S, V)] == pytest.approx(d_sv, rel=1e-15)
    expected = 1 + nt.B[S] + nt.B[V] - abs(2 * d_sv)
    assert squeezing_pair(nt, (S, V)) == pytest.approx(expected, rel=1e-14)


def test_dbar_modes():
    nt = noise_terms(make_config(dw1=3, dw2=-2, gt=0.3, amplitudes={"L": 1.2, "S": 0.5, "A": 0.7j}))
    db = nt.Dbar[(L, S)]
    base = squeezing_pair(nt, (L, S), "re") + 2 * db.real
    assert squeezing_pair(nt, (L, S), "abs") == pytest.approx(base - 2 * abs(db), rel=1e-14)
    with pytest.raises(ValueError):
        squeezing_pair(nt, (L, S), "modulus")


def test_pump_anti_stokes_covariance_single_term():
    cfg = make_config(dw1=3, dw2=-2, gt=0.3, amplitudes={"L": 1.2, "A": 0.7j})
    nt = noise_terms(cfg)
    co = eval_coeffs(cfg)
    d = co.f1 * co.l6 * cfg.xi0[L] * cfg.xi0[A]
    xl, xa = nt.xi_t[L], nt.xi_t[A]
    manual = abs(d) ** 2 + 2 * (d * xl.conjugate() * xa.conjugate()).real
    assert wave_covariance(nt, (L, A)) == pytest.approx(manual, rel=1e-13)


@given(st.integers(0, 2**32 - 1), st.booleans())
def test_sum_minus_difference_is_four_covariances(seed, chaotic):
    rep = witness_report(noise_terms(random_config(np.random.default_rng(seed), chaotic=chaotic)))
    for p in PAIRS:
        plus, minus = rep.sumvar[p], rep.diffvar[p]
        assert plus - minus == pytest.approx(4 * rep.covW[p], rel=1e-12, abs=1e-12)
        assert plus + minus == pytest.approx(2 * (rep.varW[p[0]] + rep.varW[p[1]]), rel=1e-12, abs=1e-12)


@given(st.integers(0, 2**32 - 1), st.booleans())
def test_witnesses_are_finite_and_real(seed, chaotic):
    rep = witness_report(noise_terms(random_config(np.random.default_rng(seed), chaotic=chaotic)))
    for name, value, flag in rep.rows():
        assert isinstance(value, float) and np.isfinite(value), name


def test_report_flags_follow_signs(rng):
    rep = witness_report(noise_terms(random_config(rng)))
    rows = {name: (value, flag) for name, value, flag in rep.rows()}
    assert rows["covW_LS"][1] is None
    assert rows["lambda_V"][1] == (rows["lambda_V"][0] < 1)
    assert rows["K_plus_SV"][1] == (rows["K_plus_SV"][0] < 0)
    assert rep.entangled((S, V)) == (min(rep.K_plus[(S, V)], rep.K_minus[(S, V)]) < 0)
    assert len(rows) == 2 * 6 + 6 + 4 + 6 + 4 + 6 + 2 * 6


def test_squeezing_closed_forms_match_pipeline_exactly(rng):
    for chaotic in (False, True):
        for _ in range(100):
            checks = closed_form_checks(random_config(rng, chaotic=chaotic))
            for name in ("lambda_L", "lambda_V"):
                if name in checks:
                    closed, pipe = checks[name]
                    assert closed == pytest.approx(pipe, rel=1e-12)


def test_closed_forms_converge_to_pipeline_as_time_shrinks(rng):
    # The closed forms keep only the leading order in the coupling, so the
    # relative gap must shrink at least linearly with gt.  The chaotic
    # pump-phonon entanglement form is the exception, see below.
    for chaotic in (False, True):
        for _ in range(30):
            cfg = random_config(rng, chaotic=chaotic, amp_max=1.0)
            gaps = []
            for gt in (2e-5, 1e-5):
                checks = closed_form_checks(cfg.replace(gt=gt))
                gaps.append({k: abs(a - b) / abs(b) for k, (a, b) in checks.items()})
            for key in gaps[0]:
                if chaotic and key.endswith("_LV") and key.startswith("K_"):
                    continue
                assert gaps[1][key] <= 0.6 * gaps[0][key] + 1e-9, key


def test_closed_form_keys_by_regime():
    coh = closed_forms(make_config(amplitudes={"L": 1}))
    cha = closed_forms(make_config(amplitudes={"L": 1}, phonon=Chaotic(1)))
    assert {"K_plus_LV", "K_minus_LV", "K_plus_SV", "K_minus_SV", "lambda_L", "lambda_V", "varW_L", "varW_V"} == set(coh)
    assert {"C_shot_LV", "C_shot_SV", "C_shot_VA", "lambda_L", "varW_L"} <= set(cha)


def test_chaotic_pump_phonon_closed_form_misses_thermal_product():
    # (B_L + |C_L|)(B_V + |C_V|) with B_V ~ n is of the same order as |D_LV|^2,
    # so the closed form, which drops it, does not approach the pipeline value
    cfg = make_config(g=1, chi=0.9, dw1=2, dw2=-3, gt=1e-5,
                      amplitudes={"L": 0.6, "S": 0.2, "A": 0.35}, phonon=Chaotic(1.0))
    nt = noise_terms(cfg)
    closed, pipe = closed_form_checks(cfg)["K_plus_LV"]
    product = (nt.B[L] + abs(nt.C[L])) * (nt.B[V] + abs(nt.C[V]))
    assert abs(product) > 0.1 * abs(closed)
    assert abs(pipe - closed) > 0.1 * abs(closed)
