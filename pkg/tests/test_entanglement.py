import math

import numpy as np
import pytest

from kerrcat import (
    CoherentSuperposition,
    DimensionError,
    SchmidtSpectrum,
    TwoModeFock,
    ZeroNormError,
    balanced_splitter,
    entanglement_after_kerr,
    entanglement_of_cat,
    entropy,
    fidelity,
    gram_spectrum,
    make_coherent_state,
    make_entangled_cat,
    phase_shifts,
    schmidt_decomposition,
    schmidt_fock,
    tensor,
    to_fock,
    transform_coherent,
    transform_fock,
)

SINGLE_PHOTON = TwoModeFock(np.array([[0, 1], [1, 0]]) / math.sqrt(2))

# E(|alpha|^2 = 1, M = 2), frozen from the closed-form eigenvalues below and
# confirmed against the truncated-Fock oracle in test_m2_closed_form_*.
E_ALPHA1_M2 = 0.8094109483704466


def m2_closed_form(alpha_squared):
    """Two-term reduction: per-mode overlap s = exp(-|alpha|^2), p = (1 +- s sqrt(2 - s^2))/2."""
    s = math.exp(-alpha_squared)
    r = s * math.sqrt(2 - s * s)
    return np.array([(1 + r) / 2, (1 - r) / 2])


def test_entropy_examples():
    assert entropy([1.0]) == 0.0
    assert entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-15)
    for M in (3, 7, 64):
        assert entropy(np.full(M, 1 / M)) == pytest.approx(math.log2(M), abs=1e-12)
    assert entropy([0.7, 0.3, 0.0]) == entropy([0.7, 0.3])


def test_spectrum_validation():
    with pytest.raises(ValueError):
        SchmidtSpectrum([0.6, 0.6])
    with pytest.raises(ValueError):
        SchmidtSpectrum([0.3, 0.7])
    with pytest.raises(ValueError):
        SchmidtSpectrum([1.1, -0.1])


def test_schmidt_fock_product_state():
    s = tensor(make_coherent_state(0.6 - 0.2j, 30), make_coherent_state(1.1j, 30))
    spec = schmidt_fock(s)
    assert spec.rank == 1
    assert spec.probs[0] == pytest.approx(1.0)


def test_schmidt_fock_single_photon():
    spec = schmidt_fock(SINGLE_PHOTON)
    np.testing.assert_allclose(spec.probs, [0.5, 0.5], atol=1e-15)
    assert entropy(spec) == pytest.approx(1.0, abs=1e-12)


def test_schmidt_reconstruction():
    state = to_fock(make_entangled_cat(1.4 + 0.3j, 4), 25)
    spec, left, right = schmidt_decomposition(state)
    rebuilt = (left * np.sqrt(spec.probs)) @ right.T
    assert fidelity(rebuilt, state.amps) > 1 - 1e-10
    np.testing.assert_allclose(left.conj().T @ left, np.eye(spec.rank), atol=1e-12)
    np.testing.assert_allclose(right.conj().T @ right, np.eye(spec.rank), atol=1e-12)


def test_schmidt_fock_renormalizes_and_rejects():
    scaled = TwoModeFock(SINGLE_PHOTON.amps * (1 + 1e-7))
    spec = schmidt_fock(scaled)
    assert spec.renormalization == pytest.approx(1 + 1e-7)
    with pytest.raises(ZeroNormError):
        schmidt_fock(TwoModeFock(np.zeros((2, 2))))
    with pytest.raises(ValueError):
        schmidt_fock(TwoModeFock(SINGLE_PHOTON.amps * 2))


def test_mode_redefinition_removes_entanglement():
    assert entropy(schmidt_fock(SINGLE_PHOTON)) == pytest.approx(1.0, abs=1e-12)
    out = transform_fock(SINGLE_PHOTON, balanced_splitter())
    assert entropy(schmidt_fock(out)) < 1e-10


def test_gram_single_term():
    s = CoherentSuperposition.from_terms([(1.0, [0.4, -1.0j])])
    spec = gram_spectrum(s)
    np.testing.assert_allclose(spec.probs, [1.0])


def test_gram_requires_two_modes_and_normalization():
    with pytest.raises(DimensionError):
        gram_spectrum(CoherentSuperposition.from_terms([(1.0, [0.4])]))
    with pytest.raises(ValueError):
        gram_spectrum(CoherentSuperposition.from_terms([(2.0, [0.4, 0.1])]))


def test_m2_closed_form_confirmed_by_fock_oracle():
    expected = m2_closed_form(1.0)
    fock = schmidt_fock(to_fock(make_entangled_cat(1.0, 2), 30))
    np.testing.assert_allclose(fock.probs, expected, atol=1e-12)
    assert entropy(fock) == pytest.approx(E_ALPHA1_M2, abs=1e-12)
    gram = gram_spectrum(make_entangled_cat(1.0, 2))
    np.testing.assert_allclose(gram.probs, expected, atol=1e-12)


@pytest.mark.parametrize("alpha_squared", [0.05, 0.5, 2.0, 5.0])
def test_m2_closed_form_other_amplitudes(alpha_squared):
    gram = gram_spectrum(make_entangled_cat(math.sqrt(alpha_squared), 2))
    np.testing.assert_allclose(gram.probs, m2_closed_form(alpha_squared), atol=1e-12)


@pytest.mark.parametrize("M", [2, 3, 4, 5])
def test_large_amplitude_spectrum_is_uniform(M):
    spec = gram_spectrum(make_entangled_cat(math.sqrt(100 * M * M), M))
    np.testing.assert_allclose(spec.probs, np.full(M, 1 / M), atol=1e-12)


def test_cat_entanglement_trivial_cases():
    for alpha in (0.3, 2.0, 5.0j):
        assert entanglement_of_cat(alpha, 1).entropy_bits == 0.0
    for M in range(1, 9):
        for method in ("gram", "fock"):
            assert entanglement_of_cat(0.0, M, method).entropy_bits == pytest.approx(0.0, abs=1e-12)


def test_cat_entanglement_value():
    res = entanglement_of_cat(1.0, 2)
    assert res.method == "gram"
    assert res.entropy_bits == pytest.approx(E_ALPHA1_M2, abs=1e-12)
    assert res.entropy_bits == pytest.approx(0.809, abs=1e-3)
    res = entanglement_of_cat(1.0, 2, "fock", cutoff=30)
    assert res.cutoff == 30
    assert res.entropy_bits == pytest.approx(E_ALPHA1_M2, abs=1e-12)
    with pytest.raises(ValueError):
        entanglement_of_cat(1.0, 2, "svd")


@pytest.mark.parametrize("alpha_squared", [0.5, 1.0, 2.0, 4.0])
@pytest.mark.parametrize("M", [1, 2, 3, 4, 5])
def test_engines_agree(alpha_squared, M):
    g = entanglement_of_cat(math.sqrt(alpha_squared), M, "gram")
    f = entanglement_of_cat(math.sqrt(alpha_squared), M, "fock")
    assert abs(g.entropy_bits - f.entropy_bits) < 1e-6
    assert f.certified_error < 1e-20


def test_local_phase_invariance():
    s = make_entangled_cat(1.2 + 0.5j, 5)
    base = gram_spectrum(s).probs
    for phis in [(0.3, -1.1), (2.0, 0.0), (-0.7, 3.1)]:
        rotated = gram_spectrum(transform_coherent(s, phase_shifts(*phis))).probs
        np.testing.assert_allclose(rotated, base, atol=1e-10)


@pytest.mark.parametrize("M", range(1, 13))
def test_entropy_bounded_by_log_m(M):
    for a2 in (0.1, 1.0, 10.0, 100.0):
        res = entanglement_of_cat(math.sqrt(a2), M)
        assert res.entropy_bits <= math.log2(M) + 1e-9
        assert res.entropy_bits <= math.log2(res.spectrum.rank) + 1e-9


@pytest.mark.parametrize("M", range(1, 9))
def test_entropy_nondecreasing_in_amplitude(M):
    grid = np.linspace(0.0, 25.0, 201)
    values = [entanglement_of_cat(math.sqrt(a2), M).entropy_bits for a2 in grid]
    assert np.all(np.diff(values) >= -1e-9)


def test_ill_conditioned_gram_drops_null_space():
    res = entanglement_of_cat(1.0, 20)
    assert res.spectrum.dropped_dims > 0
    assert 0.0 <= res.entropy_bits <= math.log2(20)
    assert res.certified_error < 1e-9


@pytest.mark.parametrize("M", [2, 3, 5, 8])
def test_arbitrary_tau_route_matches_cat(M):
    alpha = 1.5
    direct = entanglement_after_kerr(alpha, math.pi / M)
    assert direct.entropy_bits == pytest.approx(entanglement_of_cat(alpha, M).entropy_bits, abs=1e-9)


def test_arbitrary_tau_route_trivial_times():
    assert entanglement_after_kerr(2.0, 0.0).entropy_bits < 1e-10
    assert entanglement_after_kerr(2.0, math.pi).entropy_bits < 1e-10
