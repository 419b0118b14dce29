import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hamlocality.coupling import (
    CouplingVector,
    SpectrumVector,
    couplings_to_spectrum,
    diagonal_hamiltonian,
    hadamard_matrix,
    spectrum_to_couplings,
    zstring_label,
    zstring_labels,
)
from hamlocality.pauli import pauli_decompose


def brute_hadamard(n):
    dim = 2**n
    return np.array([[(-1) ** bin(j & k).count("1") for k in range(dim)] for j in range(dim)])


def test_hadamard_small():
    assert np.array_equal(hadamard_matrix(1), [[1, 1], [1, -1]])
    displayed = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]]
    assert np.array_equal(hadamard_matrix(2), displayed)
    with pytest.raises(ValueError):
        hadamard_matrix(0)
    with pytest.raises(ValueError):
        hadamard_matrix(7)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_hadamard_matches_bit_formula(n):
    m = hadamard_matrix(n)
    assert np.array_equal(m, brute_hadamard(n))
    assert np.array_equal(m, m.T)
    assert np.array_equal(m @ m, 2**n * np.eye(2**n, dtype=int))


def test_transform_examples():
    e = couplings_to_spectrum(CouplingVector(3, [2.5] + [0] * 7)).epsilon
    assert np.array_equal(e, [2.5] * 8)
    assert np.array_equal(couplings_to_spectrum(CouplingVector(2, [0, 0, 0, 1])).epsilon, [1, -1, -1, 1])
    assert np.array_equal(couplings_to_spectrum(CouplingVector(2, [0, 1, 0, 0])).epsilon, [1, -1, 1, -1])
    assert np.array_equal(spectrum_to_couplings(SpectrumVector(2, [1, 1, 1, 1])).alpha, [1, 0, 0, 0])
    assert np.array_equal(spectrum_to_couplings(SpectrumVector(2, [1, -1, -1, 1])).alpha, [0, 0, 0, 1])


def test_length_validation():
    with pytest.raises(ValueError):
        CouplingVector(2, [1, 2, 3])
    with pytest.raises(ValueError):
        SpectrumVector(0, [1])


def test_labels():
    assert zstring_labels(2) == ["II", "IZ", "ZI", "ZZ"]
    assert zstring_label(3, 4) == "ZII"


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_roundtrip_random(n):
    rng = np.random.default_rng(n)
    m = hadamard_matrix(n)
    for _ in range(100):
        e = rng.normal(size=2**n)
        a = spectrum_to_couplings(SpectrumVector(n, e))
        assert np.abs(a.alpha - m @ e / 2**n).max() < 1e-12
        assert np.abs(couplings_to_spectrum(a).epsilon - e).max() < 1e-12


@settings(max_examples=50, deadline=None)
@given(arrays(float, 8, elements=st.floats(-10, 10)))
def test_consistent_with_pauli_decomposition(alpha):
    a = CouplingVector(3, alpha)
    h = diagonal_hamiltonian(a)
    assert np.abs(np.diag(h).real - couplings_to_spectrum(a).epsilon).max() < 1e-12
    # drop_tol=0 so tiny couplings are compared rather than filtered
    d = pauli_decompose(h, drop_tol=0.0)
    for k, label in enumerate(zstring_labels(3)):
        assert abs(d[label] - alpha[k]) < 1e-12
    assert all(abs(c) < 1e-12 for s, c in d.coeffs.items() if not set(s) <= {"I", "Z"})
