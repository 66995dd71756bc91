import math

import numpy as np
import pytest

from oscontrol import (
    ControlModel,
    ControlSchedule,
    CovarianceState,
    QuadraticHamiltonian,
    Segment,
    audit_symplecticity,
    evolve_covariance,
    expm,
    from_terms,
    hop,
    number,
    propagate,
    squeeze,
    symplectic_eigenvalues,
    symplectic_form,
)
from oracles import random_symmetric


def _single_mode_model():
    return ControlModel(
        drift=from_terms(1, [number(1, 1.0)], label="rot"),
        controls=(from_terms(1, [squeeze(1, 1.0)], label="sq"),),
    )


def _random_model_and_schedule(rng, n, m, segments):
    # bounded total action keeps ||S|| moderate, so the absolute
    # symplecticity audit stays meaningful in double precision
    drift = QuadraticHamiltonian(n, random_symmetric(rng, 2 * n, scale=0.5), label="drift")
    controls = tuple(
        QuadraticHamiltonian(n, random_symmetric(rng, 2 * n, scale=0.5), label=f"c{k}")
        for k in range(m)
    )
    model = ControlModel(drift=drift, controls=controls)
    schedule = ControlSchedule.from_pairs(
        [
            (float(rng.uniform(0.01, 0.25)), tuple(rng.uniform(-1.0, 1.0, size=m)))
            for _ in range(segments)
        ]
    )
    return model, schedule


def test_empty_schedule_gives_identity():
    model = _single_mode_model()
    assert np.array_equal(propagate(model, ControlSchedule()), np.eye(2))


def test_single_drift_segment_matches_expm():
    model = _single_mode_model()
    t = 0.37
    S = propagate(model, ControlSchedule.from_pairs([(t, (0.0,))]))
    expected = expm(-model.drift.A @ symplectic_form(1), t)
    assert np.allclose(S, expected, atol=1e-14)


def test_constant_schedule_merges_segments():
    model = _single_mode_model()
    f = (0.8,)
    split = ControlSchedule.from_pairs([(0.4, f), (0.9, f)])
    merged = ControlSchedule.from_pairs([(1.3, f)])
    assert np.linalg.norm(propagate(model, split) - propagate(model, merged)) <= 1e-10


def test_segment_validation():
    with pytest.raises(ValueError):
        Segment(duration=0.0)
    with pytest.raises(ValueError):
        Segment(duration=-1.0)
    with pytest.raises(ValueError):
        Segment(duration=1.0, values=(math.inf,))


def test_control_count_mismatch():
    model = _single_mode_model()
    with pytest.raises(ValueError):
        propagate(model, ControlSchedule.from_pairs([(1.0, (0.5, 0.5))]))


def test_control_model_requires_matching_modes():
    with pytest.raises(ValueError):
        ControlModel(
            drift=from_terms(1, [number(1, 1.0)]),
            controls=(from_terms(2, [number(1, 1.0)]),),
        )


def test_propagate_output_symplectic_random_schedules():
    rng = np.random.default_rng(8)
    for _ in range(10):
        model, schedule = _random_model_and_schedule(rng, n=3, m=2, segments=20)
        S = propagate(model, schedule)
        assert audit_symplecticity(S) < 1e-9


def test_concatenation_convention():
    rng = np.random.default_rng(9)
    model, s_all = _random_model_and_schedule(rng, n=2, m=2, segments=8)
    first = ControlSchedule(s_all.segments[:5])
    second = ControlSchedule(s_all.segments[5:])
    S = propagate(model, s_all)
    S_cat = propagate(model, second) @ propagate(model, first)
    assert np.linalg.norm(S - S_cat) <= 1e-10


def test_vacuum_invariant_under_rotation():
    vac = CovarianceState.vacuum(1)
    theta = 0.83
    S = np.array([[np.cos(theta), np.sin(theta)], [-np.sin(theta), np.cos(theta)]])
    out = evolve_covariance(vac, S)
    assert np.allclose(out.sigma, vac.sigma, atol=1e-14)


def test_squeezing_action_on_vacuum():
    r = 0.6
    S = np.diag([math.exp(r), math.exp(-r)])
    out = evolve_covariance(CovarianceState.vacuum(1), S)
    assert np.allclose(out.sigma, 0.5 * np.diag([math.exp(2 * r), math.exp(-2 * r)]), atol=1e-14)


def test_evolve_covariance_rejects_non_symplectic():
    with pytest.raises(ValueError):
        evolve_covariance(CovarianceState.vacuum(1), np.diag([2.0, 2.0]))


def test_covariance_symplectic_eigenvalues_preserved():
    rng = np.random.default_rng(10)
    sigma = 0.5 * np.eye(6) + 0.4 * np.diag([1.0, 1.0, 0.0, 0.0, 2.0, 2.0])
    nu_before = symplectic_eigenvalues(sigma)
    model, schedule = _random_model_and_schedule(rng, n=3, m=1, segments=12)
    S = propagate(model, schedule)
    out = evolve_covariance(CovarianceState(sigma), S)
    nu_after = symplectic_eigenvalues(out.sigma)
    assert np.allclose(nu_before, nu_after, atol=1e-7)


def test_passive_schedule_preserves_trace():
    # number and hop generators commute with Omega: photon-number conserving
    n = 3
    model = ControlModel(
        drift=from_terms(n, [number(j, 1.0) for j in range(1, n + 1)], label="rot"),
        controls=(
            from_terms(n, [hop(1, 2, 1.0)], label="bs12"),
            from_terms(n, [hop(2, 3, 1.0)], label="bs23"),
        ),
    )
    rng = np.random.default_rng(12)
    schedule = ControlSchedule.from_pairs(
        [(float(rng.uniform(0.05, 1.0)), tuple(rng.uniform(-1.0, 1.0, size=2))) for _ in range(15)]
    )
    sigma = np.diag([3.0, 3.0, 0.5, 0.5, 1.0, 1.0])
    out = evolve_covariance(CovarianceState(sigma), propagate(model, schedule))
    assert np.trace(out.sigma) == pytest.approx(np.trace(sigma), abs=1e-8)


def test_passive_swap_moves_hot_mode_down_the_chain():
    # beam-splitter pulses at quarter period swap neighbouring sites exactly
    n = 3
    zero = QuadraticHamiltonian(n, np.zeros((2 * n, 2 * n)), label="zero")
    model = ControlModel(
        drift=zero,
        controls=(
            from_terms(n, [hop(1, 2, 1.0)], label="bs12"),
            from_terms(n, [hop(2, 3, 1.0)], label="bs23"),
        ),
    )
    schedule = ControlSchedule.from_pairs(
        [(math.pi / 2, (1.0, 0.0)), (math.pi / 2, (0.0, 1.0))]
    )
    hot = np.diag([5.0, 5.0, 0.5, 0.5, 0.5, 0.5])
    out = evolve_covariance(CovarianceState(hot), propagate(model, schedule))
    assert np.allclose(out.sigma[4:, 4:], 5.0 * np.eye(2), atol=1e-12)
    assert np.allclose(out.sigma[:2, :2], 0.5 * np.eye(2), atol=1e-12)


def test_audit_symplecticity_examples():
    assert audit_symplecticity(np.eye(4)) == 0.0
    rng = np.random.default_rng(13)
    model, schedule = _random_model_and_schedule(rng, n=3, m=2, segments=20)
    S = propagate(model, schedule)
    assert audit_symplecticity(S) < 1e-9
    noisy = S + 1e-3 * rng.standard_normal(S.shape)
    assert audit_symplecticity(noisy) >= 1e-4


def test_covariance_state_validation_and_physicality():
    with pytest.raises(ValueError):
        CovarianceState(np.array([[1.0, 0.5], [0.0, 1.0]]))  # not symmetric
    CovarianceState.vacuum(2)
    CovarianceState(0.5 * np.eye(2), check_physical=True)  # vacuum is physical
    with pytest.raises(ValueError):
        CovarianceState(0.1 * np.eye(2), check_physical=True)  # below vacuum noise
    # classical carrier: the same matrix passes without the opt-in check
    CovarianceState(0.1 * np.eye(2))
