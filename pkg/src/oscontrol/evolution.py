"""Propagation under piecewise-constant controls and covariance transport.

The evolution equation dS/dt = -A(f, t) Omega S with S(0) = 1 is integrated
exactly over segments of constant control values: later segments multiply on
the left, so S = exp(-A_N Omega d_N) ... exp(-A_1 Omega d_1). The same
machinery drives classical and quantum oscillator networks; covariance
physicality is therefore an opt-in check, not a constructor requirement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .hamiltonians import QuadraticHamiltonian, _readonly
from .symplectic import expm, is_symplectic, symplectic_form

__all__ = [
    "ControlModel",
    "Segment",
    "ControlSchedule",
    "CovarianceState",
    "propagate",
    "evolve_covariance",
    "audit_symplecticity",
]


@dataclass(frozen=True, eq=False)
class ControlModel:
    """A drift Hamiltonian plus switchable control Hamiltonians."""

    drift: QuadraticHamiltonian
    controls: tuple[QuadraticHamiltonian, ...] = ()

    def __post_init__(self):
        controls = tuple(self.controls)
        for c in controls:
            if c.n != self.drift.n:
                raise ValueError(
                    f"control {c.label!r} has {c.n} modes, drift has {self.drift.n}"
                )
        object.__setattr__(self, "controls", controls)

    @property
    def n(self) -> int:
        return self.drift.n

    @property
    def num_controls(self) -> int:
        return len(self.controls)


@dataclass(frozen=True)
class Segment:
    """One constant-control interval: duration and the control values f_k."""

    duration: float
    values: tuple[float, ...] = ()

    def __post_init__(self):
        if not (self.duration > 0.0 and np.isfinite(self.duration)):
            raise ValueError(f"segment duration must be positive and finite, got {self.duration}")
        values = tuple(float(v) for v in self.values)
        if not all(np.isfinite(v) for v in values):
            raise ValueError("segment control values must be finite")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class ControlSchedule:
    """An ordered list of constant-control segments."""

    segments: tuple[Segment, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, Sequence[float]]]) -> "ControlSchedule":
        return cls(tuple(Segment(duration=d, values=tuple(v)) for d, v in pairs))

    @property
    def total_duration(self) -> float:
        return float(sum(s.duration for s in self.segments))


def propagate(model: ControlModel, schedule: ControlSchedule) -> np.ndarray:
    """Integrate the controlled symplectic evolution over a schedule.

    Returns S = exp(-A_N Omega d_N) ... exp(-A_1 Omega d_1) with
    A_i = A_drift + sum_k f_{k,i} A_k. An empty schedule gives the identity.
    """
    omega = symplectic_form(model.n)
    S = np.eye(2 * model.n)
    for i, seg in enumerate(schedule.segments):
        if len(seg.values) != model.num_controls:
            raise ValueError(
                f"segment {i} supplies {len(seg.values)} control values, "
                f"model has {model.num_controls} controls"
            )
        A = np.array(model.drift.A)
        for f, ctrl in zip(seg.values, model.controls):
            A += f * ctrl.A
        S = expm(-A @ omega, seg.duration) @ S
    return S


@dataclass(frozen=True, eq=False)
class CovarianceState:
    """A symmetric covariance matrix sigma of a Gaussian state (vacuum = 1/2).

    ``check_physical=True`` additionally enforces the uncertainty relation
    sigma + (i/2) Omega >= 0; it is opt-in because the same carrier serves
    purely classical symplectic dynamics.
    """

    sigma: np.ndarray
    check_physical: bool = False

    def __post_init__(self):
        sigma = np.asarray(self.sigma, dtype=float)
        if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
            raise ValueError(f"sigma must be square with even dimension, got {sigma.shape}")
        if np.linalg.norm(sigma - sigma.T) > 1e-10 * max(1.0, np.linalg.norm(sigma)):
            raise ValueError("sigma must be symmetric")
        if self.check_physical:
            omega = symplectic_form(sigma.shape[0] // 2)
            w = np.linalg.eigvalsh(sigma + 0.5j * omega)
            if w[0] < -1e-10 * max(1.0, np.linalg.norm(sigma)):
                raise ValueError(
                    f"sigma violates the uncertainty relation: "
                    f"min eig(sigma + i Omega / 2) = {w[0]:.6e}"
                )
        object.__setattr__(self, "sigma", _readonly(sigma))

    @classmethod
    def vacuum(cls, n: int) -> "CovarianceState":
        return cls(sigma=0.5 * np.eye(2 * n))

    @property
    def n(self) -> int:
        return self.sigma.shape[0] // 2


def evolve_covariance(state: CovarianceState, S, tol: float = 1e-8) -> CovarianceState:
    """Transport a covariance matrix: sigma -> S sigma S^T.

    S must be symplectic to ``tol``; the transport then preserves the
    symplectic eigenvalues of sigma (purity and temperature invariants).
    """
    S = np.asarray(S, dtype=float)
    if S.shape != state.sigma.shape:
        raise ValueError(f"shape mismatch: sigma {state.sigma.shape}, S {S.shape}")
    if not is_symplectic(S, tol):
        raise ValueError(f"S is not symplectic to {tol}: audit {audit_symplecticity(S):.3e}")
    out = S @ state.sigma @ S.T
    return CovarianceState(sigma=0.5 * (out + out.T))


def audit_symplecticity(S) -> float:
    """The defect ``||S Omega S^T - Omega||_F`` for logging and acceptance."""
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] % 2:
        raise ValueError(f"S must be square with even dimension, got {S.shape}")
    omega = symplectic_form(S.shape[0] // 2)
    return float(np.linalg.norm(S @ omega @ S.T - omega))
