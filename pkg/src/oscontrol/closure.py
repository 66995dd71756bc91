"""Bracket closure of symplectic generators and the Lie algebra rank criterion.

Closure proceeds breadth first: every element of the current basis is
bracketed with every seed generator, and a candidate enters the basis when
its component orthogonal to the current span is relatively larger than the
tolerance. Bracketing against seeds only (rather than all pairs) generates
the same algebra; the recombination-invariance property test covers this.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .hamiltonians import SymplecticGenerator
from .symplectic import commutator, symplectic_form

__all__ = [
    "LieSubspace",
    "RankReport",
    "full_dimension",
    "closure",
    "rank_criterion",
    "contains",
    "passivity_check",
]

DEFAULT_TOL = 1e-9

# rejected-candidate residuals within this factor below tol are kept as
# diagnostics for borderline rank decisions
_NEAR_TOL_WINDOW = 1e-2
_MAX_REJECTED_KEPT = 32


def full_dimension(n: int) -> int:
    """Dimension n(2n+1) of the full symplectic algebra sp(2n, R)."""
    return n * (2 * n + 1)


@dataclass(frozen=True, eq=False)
class LieSubspace:
    """An orthonormalised basis of the subalgebra generated by a seed set."""

    n: int
    basis: tuple[SymplecticGenerator, ...]
    orthonormal_vectors: np.ndarray  # (dimension, (2n)^2), orthonormal rows
    closed: bool
    bracket_depth_reached: int
    tol: float
    rejected_residuals: tuple[float, ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class RankReport:
    """Outcome of the Lie algebra rank criterion."""

    dimension_found: int
    dimension_full: int
    rank_criterion_met: bool
    residual_spectrum: tuple[float, ...] = ()


def _orthogonal_residual(rows: Sequence[np.ndarray], v: np.ndarray) -> np.ndarray:
    """Component of v orthogonal to the orthonormal rows (MGS, two passes)."""
    r = v.copy()
    for q in rows:
        r -= (q @ r) * q
    for q in rows:  # reorthogonalisation guards against cancellation
        r -= (q @ r) * q
    return r


def closure(
    generators: Iterable[SymplecticGenerator],
    tol: float = DEFAULT_TOL,
    max_rounds: int | None = None,
) -> LieSubspace:
    """Generate the Lie subalgebra spanned by repeated seed brackets.

    Candidates are normalised before the independence test, so ``tol`` is a
    relative threshold. Processing order is deterministic (basis index, then
    seed index), making results reproducible bit for bit.

    An exhausted round budget is reported as ``closed=False``, not raised.
    """
    seeds = list(generators)
    if not seeds:
        raise ValueError("closure needs at least one seed generator")
    n = seeds[0].n
    if any(g.n != n for g in seeds):
        raise ValueError(f"mixed mode counts in seeds: {sorted({g.n for g in seeds})}")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    dim_full = full_dimension(n)
    if max_rounds is None:
        max_rounds = 2 * dim_full

    basis: list[SymplecticGenerator] = []
    rows: list[np.ndarray] = []
    rejected: list[float] = []

    def try_add(M: np.ndarray, source: str) -> bool:
        norm = np.linalg.norm(M)
        if norm == 0.0:
            return False
        v = np.ravel(M / norm)
        r = _orthogonal_residual(rows, v)
        res = float(np.linalg.norm(r))
        if res <= tol:
            if res >= tol * _NEAR_TOL_WINDOW:
                rejected.append(res)
            return False
        rows.append(r / res)
        basis.append(SymplecticGenerator(n=n, G=M / norm, source=source))
        return True

    for i, g in enumerate(seeds):
        try_add(np.asarray(g.G, dtype=float), g.source or f"seed{i}")

    seed_mats = [np.asarray(g.G, dtype=float) for g in seeds]
    seed_names = [g.source or f"seed{i}" for i, g in enumerate(seeds)]

    closed = len(basis) >= dim_full
    depth = 0
    frontier = 0  # basis elements before this index were bracketed already
    while not closed and depth < max_rounds:
        hi = len(basis)
        added = False
        for b_idx in range(frontier, hi):
            b = basis[b_idx]
            for s_idx, s in enumerate(seed_mats):
                cand = commutator(b.G, s)
                src = f"[{b.source},{seed_names[s_idx]}]"
                if try_add(cand, src):
                    added = True
                if len(basis) >= dim_full:
                    break
            if len(basis) >= dim_full:
                break
        frontier = hi
        depth += 1
        if len(basis) >= dim_full:
            closed = True  # nothing outside sp(2n, R) can appear
        elif not added:
            closed = True

    rejected.sort(reverse=True)
    vectors = np.array(rows) if rows else np.zeros((0, (2 * n) ** 2))
    vectors.setflags(write=False)
    return LieSubspace(
        n=n,
        basis=tuple(basis),
        orthonormal_vectors=vectors,
        closed=closed,
        bracket_depth_reached=depth,
        tol=tol,
        rejected_residuals=tuple(rejected[:_MAX_REJECTED_KEPT]),
    )


def rank_criterion(sub: LieSubspace) -> RankReport:
    """Compare the closure dimension with dim sp(2n, R) = n(2n+1)."""
    dim_full = full_dimension(sub.n)
    return RankReport(
        dimension_found=sub.dimension,
        dimension_full=dim_full,
        rank_criterion_met=sub.dimension == dim_full,
        residual_spectrum=sub.rejected_residuals,
    )


def contains(sub: LieSubspace, gen: SymplecticGenerator, tol: float = DEFAULT_TOL) -> bool:
    """True iff the generator lies in the span of the subspace, relatively to tol."""
    if gen.n != sub.n:
        raise ValueError(f"mode count mismatch: subspace has {sub.n}, generator has {gen.n}")
    norm = np.linalg.norm(gen.G)
    if norm == 0.0:
        return True
    v = np.ravel(gen.G / norm)
    res = np.linalg.norm(_orthogonal_residual(list(sub.orthonormal_vectors), v))
    return bool(res <= tol)


def passivity_check(sub: LieSubspace, tol: float = DEFAULT_TOL) -> bool:
    """True iff every basis generator commutes with the symplectic form.

    Passive (photon-number conserving) generators commute with Omega; the
    passive subalgebra has dimension at most n^2.
    """
    omega = symplectic_form(sub.n)
    return all(
        np.linalg.norm(g.G @ omega - omega @ g.G) <= tol for g in sub.basis
    )
