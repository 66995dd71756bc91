"""Williamson normal form and spectral certificates for A Omega.

A positive-definite symmetric A factors as A = V D V^T with V symplectic and
D = diag(nu_1, nu_1, ..., nu_n, nu_n); the nu_j are the symplectic eigenvalues
and coincide with the positive imaginary parts of the spectrum of A Omega.
That spectrum being purely imaginary (with a well-conditioned diagonaliser)
is exactly what makes the propagator exp(-A Omega t) quasi-periodic, so the
spectrum certificate produced here doubles as the recurrence precondition.

The decomposition is built through the symmetric square root of A:
M = A^{1/2} Omega A^{1/2} is antisymmetric, its real Schur form is block
diagonal with blocks [[0, nu], [-nu, 0]], and V = A^{1/2} Q D^{-1/2} for the
canonicalised Schur basis Q. Postconditions (reconstruction residual and
symplecticity of V) validate the route; no uniqueness of V is claimed when
symplectic eigenvalues are degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .hamiltonians import QuadraticHamiltonian
from .symplectic import is_symplectic, symplectic_form

__all__ = [
    "DefinitenessError",
    "WilliamsonDecomposition",
    "SpectrumCertificate",
    "symplectic_eigenvalues",
    "williamson_decompose",
    "spectrum_certificate",
    "DIAGONALIZER_CONDITION_CAP",
]

DEFAULT_DEFINITENESS_TOL = 1e-10
DEFAULT_RESIDUAL_TOL = 1e-8

# eigenvector bases with condition number beyond this cap carry no numerical
# rank information in double precision; the matrix is reported
# non-diagonalisable-within-precision
DIAGONALIZER_CONDITION_CAP = 1e8


class DefinitenessError(ValueError):
    """Raised when an operation requires a positive-definite matrix."""

    def __init__(self, message: str, smallest_eigenvalue: float):
        super().__init__(message)
        self.smallest_eigenvalue = float(smallest_eigenvalue)


def _coerce_symmetric(H, name: str = "A") -> np.ndarray:
    """Accept a QuadraticHamiltonian or a plain symmetric matrix."""
    if isinstance(H, QuadraticHamiltonian):
        return np.asarray(H.A, dtype=float)
    A = np.asarray(H, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] % 2:
        raise ValueError(f"{name} must be square with even dimension, got shape {A.shape}")
    if np.linalg.norm(A - A.T) > 1e-12 * max(1.0, np.linalg.norm(A)):
        raise ValueError(f"{name} must be symmetric")
    return A


def _require_positive_definite(A: np.ndarray, tol: float = DEFAULT_DEFINITENESS_TOL) -> np.ndarray:
    """Return eigvalsh(A) after checking min eigenvalue > tol * ||A||_2."""
    w = np.linalg.eigvalsh(A)
    scale = max(abs(w[0]), abs(w[-1]))
    if scale == 0.0 or w[0] <= tol * scale:
        raise DefinitenessError(
            f"matrix is not positive definite: smallest eigenvalue {w[0]:.6e} "
            f"(threshold {tol:.1e} * ||A||_2 = {tol * scale:.6e})",
            smallest_eigenvalue=w[0],
        )
    return w


def symplectic_eigenvalues(H, tol: float = DEFAULT_DEFINITENESS_TOL) -> np.ndarray:
    """Symplectic eigenvalues nu_1 <= ... <= nu_n of a positive-definite A.

    Computed directly as the positive imaginary parts of the eigenvalues of
    A Omega, which pair as +/- i nu_j. This route is independent of
    :func:`williamson_decompose` and cross-checks it in the tests.
    """
    A = _coerce_symmetric(H)
    _require_positive_definite(A, tol)
    n = A.shape[0] // 2
    ev = np.linalg.eigvals(A @ symplectic_form(n))
    nu = np.sort(ev.imag[ev.imag > 0.0])
    if nu.size != n:
        raise ValueError(
            f"spectrum of A Omega did not split into +/- i nu pairs "
            f"(found {nu.size} positive imaginary parts, expected {n})"
        )
    return nu


@dataclass(frozen=True, eq=False)
class WilliamsonDecomposition:
    """A = V D V^T with V symplectic and D the paired diagonal of nu."""

    n: int
    V: np.ndarray
    nu: np.ndarray  # ascending, length n
    residual: float  # ||A - V D V^T||_F actually achieved

    @property
    def D(self) -> np.ndarray:
        return np.diag(np.repeat(self.nu, 2))


def williamson_decompose(H, tol: float = DEFAULT_RESIDUAL_TOL) -> WilliamsonDecomposition:
    """Williamson normal form of a positive-definite quadratic Hamiltonian.

    Args:
        H: QuadraticHamiltonian (or plain symmetric matrix), positive definite.
        tol: relative reconstruction tolerance; the decomposition fails if
            ``||A - V D V^T||_F > tol * ||A||_F``, which signals
            ill-conditioning rather than an algorithmic error.

    Returns:
        WilliamsonDecomposition with nu sorted ascending. V is canonicalised
        (per-block sign convention) for reproducibility, but is unique only
        up to symplectic-orthogonal freedom when eigenvalues are degenerate.
    """
    A = _coerce_symmetric(H)
    w = _require_positive_definite(A)
    n = A.shape[0] // 2
    omega = symplectic_form(n)

    # symmetric square root through the eigendecomposition of A
    lam, Q = np.linalg.eigh(A)
    root = (Q * np.sqrt(lam)) @ Q.T

    M = root @ omega @ root
    M = 0.5 * (M - M.T)  # exact antisymmetry before the Schur step
    T, Z = scipy.linalg.schur(M, output="real")

    # walk the block diagonal; positive-definite input yields n 2x2 blocks
    mus = np.empty(n)
    i = 0
    for b in range(n):
        if i + 1 >= 2 * n or T[i + 1, i] == 0.0:
            raise DefinitenessError(
                "Schur form of A^(1/2) Omega A^(1/2) has a 1x1 block; "
                f"input is numerically singular (smallest eigenvalue {w[0]:.6e})",
                smallest_eigenvalue=w[0],
            )
        mu = 0.5 * (T[i, i + 1] - T[i + 1, i])
        if mu < 0.0:
            Z[:, [i, i + 1]] = Z[:, [i + 1, i]]  # transposes the block, flipping its sign
            mu = -mu
        mus[b] = mu
        i += 2

    order = np.argsort(mus, kind="stable")
    nu = mus[order]
    col_order = np.ravel(np.column_stack((2 * order, 2 * order + 1)))
    Z = Z[:, col_order]

    # per-block sign convention: largest-magnitude entry of each first column
    # positive, so diagonal inputs reproduce the hand-computed V exactly
    for b in range(n):
        c = Z[:, 2 * b]
        if c[np.argmax(np.abs(c))] < 0.0:
            Z[:, 2 * b: 2 * b + 2] = -Z[:, 2 * b: 2 * b + 2]

    V = root @ Z / np.sqrt(np.repeat(nu, 2))

    D = np.diag(np.repeat(nu, 2))
    residual = float(np.linalg.norm(A - V @ D @ V.T))
    scale = max(np.linalg.norm(A), np.finfo(float).tiny)
    if residual > tol * scale:
        raise ValueError(
            f"Williamson reconstruction residual {residual:.3e} exceeds "
            f"{tol:.1e} * ||A||_F = {tol * scale:.3e}; input is too ill-conditioned"
        )
    if not is_symplectic(V, 1e-8 * max(1.0, np.linalg.norm(V) ** 2)):
        raise ValueError("Williamson basis V failed the symplecticity audit")
    V.setflags(write=False)
    nu.setflags(write=False)
    return WilliamsonDecomposition(n=n, V=V, nu=nu, residual=residual)


@dataclass(frozen=True, eq=False)
class SpectrumCertificate:
    """Spectral facts about A Omega used by the recurrence argument.

    ``diagonalizable`` is a within-precision verdict: the eigenvector matrix
    must have finite condition number below DIAGONALIZER_CONDITION_CAP.
    """

    eigenvalues: np.ndarray  # complex, sorted by (real, imag)
    max_real_part: float
    diagonalizable: bool
    diagonalizer_condition: float


def spectrum_certificate(H, tol: float = 1e-12) -> SpectrumCertificate:
    """Certify the spectrum of A Omega for any symmetric A.

    Definiteness is deliberately not required: the certificate also covers
    semi-definite extensions and detects non-recurring counterexamples such
    as the free-particle Hamiltonian p^2, whose A Omega is a nilpotent
    Jordan block. Verdicts are data, not exceptions.

    ``tol`` is the symmetry-validation tolerance for plain-matrix input.
    """
    if isinstance(H, QuadraticHamiltonian):
        A = np.asarray(H.A, dtype=float)
    else:
        A = np.asarray(H, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] % 2:
            raise ValueError(f"A must be square with even dimension, got shape {A.shape}")
        if np.linalg.norm(A - A.T) > tol * max(1.0, np.linalg.norm(A)):
            raise ValueError("A must be symmetric")
    n = A.shape[0] // 2
    ev, W = np.linalg.eig(A @ symplectic_form(n))
    order = np.lexsort((ev.imag, ev.real))
    ev = ev[order]
    ev.setflags(write=False)
    sing = np.linalg.svd(W, compute_uv=False)
    cond = float("inf") if sing[-1] == 0.0 else float(sing[0] / sing[-1])
    return SpectrumCertificate(
        eigenvalues=ev,
        max_real_part=float(np.max(np.abs(ev.real))) if ev.size else 0.0,
        diagonalizable=bool(np.isfinite(cond) and cond < DIAGONALIZER_CONDITION_CAP),
        diagonalizer_condition=cond,
    )
