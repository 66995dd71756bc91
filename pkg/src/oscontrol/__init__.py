"""Controllability analysis for coupled harmonic oscillators.

Quadratic Hamiltonians H = (1/2) R^T A R generate linear symplectic dynamics
S(t) = exp(-A Omega t). This package decides which symplectic evolutions a
control setup can reach (Lie algebra bracket closure and the rank
criterion), computes Williamson normal forms and the spectral certificates
that make positive-definite dynamics recur, searches for explicit
recurrence times, and machine-verifies the bracket-identity chain proving
that a locally controlled oscillator chain is fully controllable.
"""

__version__ = "0.1.0"

from .symplectic import (
    commutator,
    expm,
    identity_distance,
    is_symplectic,
    symplectic_form,
)
from .hamiltonians import (
    HamiltonianTerm,
    QuadraticHamiltonian,
    SymplecticGenerator,
    bracket_hamiltonians,
    from_terms,
    generator,
    generic,
    hop,
    number,
    pair,
    squeeze,
)
from .closure import (
    LieSubspace,
    RankReport,
    closure,
    contains,
    full_dimension,
    passivity_check,
    rank_criterion,
)
from .williamson import (
    DefinitenessError,
    SpectrumCertificate,
    WilliamsonDecomposition,
    spectrum_certificate,
    symplectic_eigenvalues,
    williamson_decompose,
)
from .recurrence import (
    RecurrenceQuery,
    RecurrenceResult,
    conditioning_bound,
    find_recurrence,
    mode_distance,
    non_recurrence_witness,
)
from .evolution import (
    ControlModel,
    ControlSchedule,
    CovarianceState,
    Segment,
    audit_symplecticity,
    evolve_covariance,
    propagate,
)
from .chain import (
    ChainSpec,
    ControllabilityReport,
    IdentityReport,
    PositivityCheck,
    TripleParams,
    build_chain,
    controllability_report,
    positive_triple,
    positivity_condition,
    verify_bracket_identities,
)
from .documents import DocumentError, ModelDocument, ScheduleDocument

__all__ = [
    "__version__",
    # symplectic
    "symplectic_form", "is_symplectic", "commutator", "expm", "identity_distance",
    # hamiltonians
    "QuadraticHamiltonian", "HamiltonianTerm", "SymplecticGenerator",
    "number", "hop", "pair", "squeeze", "generic",
    "from_terms", "generator", "bracket_hamiltonians",
    # closure
    "LieSubspace", "RankReport", "full_dimension",
    "closure", "rank_criterion", "contains", "passivity_check",
    # williamson
    "DefinitenessError", "WilliamsonDecomposition", "SpectrumCertificate",
    "symplectic_eigenvalues", "williamson_decompose", "spectrum_certificate",
    # recurrence
    "RecurrenceQuery", "RecurrenceResult",
    "mode_distance", "conditioning_bound", "find_recurrence", "non_recurrence_witness",
    # evolution
    "ControlModel", "ControlSchedule", "Segment", "CovarianceState",
    "propagate", "evolve_covariance", "audit_symplecticity",
    # chain
    "ChainSpec", "TripleParams", "PositivityCheck", "IdentityReport",
    "ControllabilityReport", "build_chain", "positivity_condition",
    "positive_triple", "verify_bracket_identities", "controllability_report",
    # documents
    "DocumentError", "ModelDocument", "ScheduleDocument",
]
