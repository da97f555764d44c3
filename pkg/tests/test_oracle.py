import numpy as np
import pytest
from hypothesis import given, strategies as st

from offraman import oracle
from offraman.charfun import noise_terms
from offraman.config import Chaotic, Mode, make_config
from offraman.oracle import FockBasis

L, S, V, A = Mode.L, Mode.S, Mode.V, Mode.A

SMALL = {"L": 0.5, "S": 0.3j, "V": 0.25, "A": 0.4 - 0.1j}


def small_config(**kw):
    base = dict(g=1.0, chi=0.8, dw1=3.0, dw2=-2.0, gt=0.02, amplitudes=SMALL)
    base.update(kw)
    return make_config(**base)


def test_basis_index_roundtrip():
    basis = FockBasis((2, 3, 1, 2))
    assert basis.dim == 3 * 4 * 2 * 3
    for k in range(basis.dim):
        assert basis.index(basis.occupation(k)) == k


@given(st.tuples(*[st.integers(1, 4)] * 4), st.data())
def test_basis_index_is_bijective(cutoffs, data):
    basis = FockBasis(cutoffs)
    occ = tuple(data.draw(st.integers(0, n)) for n in cutoffs)
    assert basis.occupation(basis.index(occ)) == occ


def test_basis_limits():
    with pytest.raises(oracle.DimensionError):
        FockBasis((30, 30, 30, 30))
    with pytest.raises(ValueError):
        FockBasis((0, 2, 2, 2))
    assert FockBasis.uniform(3).cutoffs == (3, 3, 3, 3)


def test_hamiltonian_is_hermitian():
    h = oracle.build_hamiltonian(small_config(g=0.7 + 0.4j, chi=1.1 - 0.3j), FockBasis.uniform(3))
    assert abs(h - h.conj().T).max() <= 1e-14


def test_free_hamiltonian_is_diagonal_number_energy():
    cfg = small_config()
    basis = FockBasis((2, 2, 2, 2))
    h = oracle.build_hamiltonian(cfg, basis, interaction=False).toarray()
    num = basis.numbers()
    expected = sum(cfg.omega[m] * num[m] for m in Mode)
    assert np.array_equal(h, np.diag(expected.astype(complex)))


def test_single_excitation_couplings():
    g, chi = 0.7 + 0.2j, 1.3 - 0.5j
    cfg = small_config(g=g, chi=chi)
    basis = FockBasis((1, 1, 1, 1))
    h = oracle.build_hamiltonian(cfg, basis).toarray()
    i = basis.index
    # a_L a_S^+ a_V^+ takes one pump photon into a Stokes photon and a phonon
    assert h[i((0, 1, 1, 0)), i((1, 0, 0, 0))] == pytest.approx(-g)
    assert h[i((1, 0, 0, 0)), i((0, 1, 1, 0))] == pytest.approx(-np.conj(g))
    # a_L a_V a_A^+ absorbs a pump photon and a phonon into anti-Stokes
    assert h[i((0, 0, 0, 1)), i((1, 0, 1, 0))] == pytest.approx(-np.conj(chi))
    assert h[i((1, 0, 1, 0)), i((0, 0, 0, 1))] == pytest.approx(-chi)
    # the same two processes with the spectator mode occupied: 2 x 2 x 2 entries
    off = h - np.diag(np.diag(h))
    assert np.count_nonzero(np.abs(off) > 0) == 8


def test_photon_number_commutes_with_hamiltonian():
    cfg = small_config(g=0.9j, chi=1.2)
    basis = FockBasis.uniform(3)
    h = oracle.build_hamiltonian(cfg, basis)
    num = basis.numbers()
    n_photon = np.diag((num[L] + num[S] + num[A]).astype(float))
    comm = h @ n_photon - n_photon @ h
    assert np.abs(comm).max() == 0


def test_free_evolution_rotates_amplitudes():
    cfg = small_config(gt=0.7)
    res = oracle.evolve(cfg, FockBasis.for_config(cfg), interaction=False)
    for m in Mode:
        expected = cfg.xi0[m] * np.exp(-1j * cfg.omega[m] * cfg.t)
        assert abs(res.means[m] - expected) <= 1e-10


def test_norm_and_energy_conserved():
    cfg = small_config(gt=0.3)
    results = oracle.evolve(cfg, FockBasis.for_config(cfg), times=[0.1, 0.2, 0.3])
    for r in results:
        assert r.norm_error <= 1e-10
        assert r.energy_drift <= 1e-9
        for m in Mode:
            n = r.normal[(m, m)]
            assert abs(n.imag) <= 1e-10 and n.real >= -1e-10


def test_zero_time_returns_initial_moments():
    cfg = small_config(gt=0.0)
    res = oracle.evolve(cfg, FockBasis.for_config(cfg))
    for m in Mode:
        assert res.means[m] == pytest.approx(cfg.xi0[m], abs=1e-12)


def test_spontaneous_pair_probability_matches_geometric_law():
    gt = 0.05
    cfg = make_config(g=1, dw1=10, gt=gt, amplitudes={"L": 0.5})
    res = oracle.evolve(cfg, FockBasis.for_config(cfg), joint_pairs=[(S, V)])
    b_s = 4 * 0.25 * np.sin(10 * gt / 2) ** 2 / 100
    assert noise_terms(cfg).B[S] == pytest.approx(b_s, rel=1e-12)
    predicted = b_s / (1 + b_s) ** 2
    assert res.joint_probs[(S, V)][1, 1] == pytest.approx(predicted, rel=0.05)


def test_leakage_is_reported():
    cfg = small_config(amplitudes={"L": 2.0})
    with pytest.raises(oracle.LeakageError):
        oracle.evolve(cfg, FockBasis.uniform(3))
    assert oracle.coherent_tail(0.0, 3) == 0
    assert oracle.coherent_vector(0.5, 3)[1] == pytest.approx(oracle.coherent_tail(0.25, 3))


def test_fock_input_state():
    cfg = small_config(amplitudes={})
    res = oracle.evolve(cfg, FockBasis((2, 2, 2, 2)), {"L": 1}, joint_pairs=[(L, S)])
    assert res.normal[(L, L)].real == pytest.approx(1, abs=1e-3)
    with pytest.raises(oracle.LeakageError):
        oracle.evolve(cfg, FockBasis((2, 2, 2, 2)), {"L": 3})


def test_coherent_preset_converges_at_third_order():
    cfg = small_config()
    report = oracle.compare(cfg, FockBasis.for_config(cfg))
    assert report["pass"]
    exps = [q["exponent"] for q in report["quantities"].values() if q["exponent"] is not None]
    assert min(exps) >= 2.5
    assert report["quantities"]["xi_S"]["exponent"] >= 2.5


def test_vacuum_input_has_zero_discrepancy():
    cfg = small_config(amplitudes={})
    report = oracle.compare(cfg, FockBasis.uniform(2))
    for name, q in report["quantities"].items():
        assert max(q["discrepancy"]) == 0, name


def test_thermal_phonon_mixture_converges():
    cfg = small_config(amplitudes={"L": 0.4, "S": 0.2j, "A": 0.25 - 0.1j}, phonon=Chaotic(0.2))
    report = oracle.compare(cfg, FockBasis.for_config(cfg))
    assert report["regime"] == "chaotic" and report["pass"]
    assert report["quantities"]["B_S"]["exponent"] >= 2.5


def test_thermal_mixture_needs_room():
    cfg = small_config(amplitudes={"L": 0.3}, phonon=Chaotic(2.0))
    with pytest.raises(oracle.LeakageError):
        oracle.evolve(cfg, FockBasis((4, 3, 3, 2)))


def test_cutoffs_are_converged():
    cfg = small_config(gt=0.04)
    assert oracle.cutoff_sensitivity(cfg, FockBasis.for_config(cfg)) <= 1.0
    with pytest.raises(oracle.UnconvergedError):
        # passes the 1e-8 leakage bound but not the 1e-6 moment stability
        oracle.cutoff_sensitivity(cfg, FockBasis.for_config(cfg, tail=1e-8, extra=0), strict=True)


def test_fit_exponent():
    x = np.array([0.01, 0.02, 0.04])
    assert oracle.fit_exponent(x, 5 * x**3) == pytest.approx(3)
