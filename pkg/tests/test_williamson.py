import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscontrol import (
    ChainSpec,
    DefinitenessError,
    QuadraticHamiltonian,
    build_chain,
    is_symplectic,
    spectrum_certificate,
    symplectic_eigenvalues,
    symplectic_form,
    williamson_decompose,
)
from oracles import random_positive_definite, random_symplectic


def test_symplectic_eigenvalues_of_identity():
    for n in (1, 2, 3):
        nu = symplectic_eigenvalues(QuadraticHamiltonian(n, np.eye(2 * n)))
        assert np.allclose(nu, np.ones(n), atol=1e-12)


@pytest.mark.parametrize("a,b", [(4.0, 1.0), (2.5, 0.3), (1.0, 1.0), (9.0, 0.25)])
def test_symplectic_eigenvalue_single_mode_analytic(a, b):
    # 2x2 characteristic polynomial of A Omega gives nu = sqrt(ab) exactly
    nu = symplectic_eigenvalues(QuadraticHamiltonian(1, np.diag([a, b])))
    assert nu[0] == pytest.approx(np.sqrt(a * b), abs=1e-12)


def test_symplectic_eigenvalues_chain_drift_against_dense_eigensolve():
    drift = build_chain(ChainSpec(n=3, omega=1.0, g1=0.2, g2=0.2)).drift
    nu = symplectic_eigenvalues(drift)
    # oracle: the full 6x6 spectrum of A Omega must be exactly the pairs +/- i nu
    ev = np.linalg.eigvals(drift.A @ symplectic_form(3))
    assert np.max(np.abs(ev.real)) < 1e-12
    paired = np.sort(np.concatenate([nu, -nu]))
    assert np.allclose(np.sort(ev.imag), paired, atol=1e-10)


def test_symplectic_eigenvalues_rejects_indefinite():
    with pytest.raises(DefinitenessError) as info:
        symplectic_eigenvalues(QuadraticHamiltonian(1, np.diag([1.0, -1.0])))
    assert info.value.smallest_eigenvalue == pytest.approx(-1.0)
    assert "smallest eigenvalue" in str(info.value)


def test_williamson_identity_matrix():
    dec = williamson_decompose(QuadraticHamiltonian(2, np.eye(4)))
    assert np.allclose(dec.nu, [1.0, 1.0], atol=1e-12)
    assert dec.residual <= 1e-12
    assert is_symplectic(dec.V, 1e-8)


def test_williamson_single_mode_analytic_case():
    dec = williamson_decompose(QuadraticHamiltonian(1, np.diag([4.0, 1.0])))
    assert dec.nu[0] == pytest.approx(2.0, abs=1e-12)
    assert np.allclose(dec.V, np.diag([np.sqrt(2.0), 1 / np.sqrt(2.0)]), atol=1e-12)


def test_williamson_round_trip_known_eigenvalues():
    rng = np.random.default_rng(42)
    V0 = random_symplectic(rng, 2, strength=0.7)
    D0 = np.diag([1.0, 1.0, 2.0, 2.0])
    A = V0 @ D0 @ V0.T
    dec = williamson_decompose(QuadraticHamiltonian(2, 0.5 * (A + A.T)))
    assert np.allclose(dec.nu, [1.0, 2.0], atol=1e-8)
    assert np.linalg.norm(A - dec.V @ dec.D @ dec.V.T) <= 1e-8 * np.linalg.norm(A)


def test_williamson_properties_random_sample():
    rng = np.random.default_rng(2024)
    for _ in range(40):
        n = int(rng.integers(1, 5))
        A = random_positive_definite(rng, n, cond=200.0)
        H = QuadraticHamiltonian(n, A)
        dec = williamson_decompose(H)
        assert dec.residual <= 1e-8 * np.linalg.norm(A)
        assert is_symplectic(dec.V, 1e-8)
        assert np.all(np.diff(dec.nu) >= 0)
        assert np.allclose(dec.nu, symplectic_eigenvalues(H), atol=1e-8)


def test_symplectic_eigenvalues_congruence_invariant():
    rng = np.random.default_rng(11)
    for _ in range(10):
        n = int(rng.integers(1, 4))
        A = random_positive_definite(rng, n, cond=50.0)
        S = random_symplectic(rng, n, strength=0.5)
        nu_a = symplectic_eigenvalues(QuadraticHamiltonian(n, A))
        congruent = S.T @ A @ S
        nu_b = symplectic_eigenvalues(QuadraticHamiltonian(n, 0.5 * (congruent + congruent.T)))
        assert np.allclose(nu_a, nu_b, atol=1e-7 * max(1.0, np.max(nu_a)))


def test_symplectic_eigenvalues_scale_linearly():
    rng = np.random.default_rng(5)
    A = random_positive_definite(rng, 2, cond=30.0)
    nu = symplectic_eigenvalues(QuadraticHamiltonian(2, A))
    for c in (0.5, 2.0, 7.5):
        nu_c = symplectic_eigenvalues(QuadraticHamiltonian(2, c * A))
        assert np.allclose(nu_c, c * nu, atol=1e-9 * c)


def test_spectrum_certificate_positive_definite():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = int(rng.integers(1, 5))
        A = random_positive_definite(rng, n, cond=100.0)
        cert = spectrum_certificate(QuadraticHamiltonian(n, A))
        assert cert.max_real_part < 1e-10
        assert cert.diagonalizable
        assert cert.diagonalizer_condition < 1e8


def test_spectrum_certificate_free_particle_jordan_block():
    # A = diag(0, 2) makes A Omega nilpotent: double zero eigenvalue, defective
    cert = spectrum_certificate(QuadraticHamiltonian(1, np.diag([0.0, 2.0])))
    assert np.allclose(cert.eigenvalues, [0.0, 0.0], atol=1e-12)
    assert not cert.diagonalizable


def test_spectrum_certificate_hyperbolic():
    cert = spectrum_certificate(QuadraticHamiltonian(1, np.diag([1.0, -1.0])))
    assert np.allclose(np.sort(cert.eigenvalues.real), [-1.0, 1.0], atol=1e-12)
    assert np.allclose(cert.eigenvalues.imag, [0.0, 0.0], atol=1e-12)
    assert cert.max_real_part == pytest.approx(1.0, abs=1e-12)


def test_williamson_rejects_indefinite_with_offender():
    A = np.diag([2.0, 1.0, 1.0, -0.5])
    with pytest.raises(DefinitenessError) as info:
        williamson_decompose(QuadraticHamiltonian(2, A))
    assert info.value.smallest_eigenvalue == pytest.approx(-0.5)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 4))
def test_williamson_reconstruction_property(seed, n):
    rng = np.random.default_rng(seed)
    A = random_positive_definite(rng, n, cond=float(rng.uniform(2, 500)))
    dec = williamson_decompose(QuadraticHamiltonian(n, A))
    assert np.linalg.norm(A - dec.V @ dec.D @ dec.V.T) <= 1e-8 * np.linalg.norm(A)
