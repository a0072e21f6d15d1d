import math

import numpy as np
import pytest

from mbb_sdp import (
    ALPHA_DEFAULT,
    RoundingParams,
    VectorSolution,
    analysis_size_target,
    default_tau,
    default_trials,
    diagnostics,
    empty_bipartite,
    gaussian_threshold,
    gram_to_vectors,
    heavy_sets,
    planted_instance,
    round_many,
    round_once,
    shift_vectors,
    verify_biclique,
    weak_gap_solution,
)


def indicator_solution(n, left, right, dim=2):
    """Members sit exactly on the anchor, everyone else at the origin."""
    anchor = np.zeros(dim)
    anchor[0] = 1.0
    rows = np.zeros((2 * n, dim))
    for i in left:
        rows[i, 0] = 1.0
    for j in right:
        rows[n + j, 0] = 1.0
    return VectorSolution(dim=dim, anchor=anchor, vectors=rows, sides=(n, n))


def test_default_tau_values():
    assert default_tau(12) == (0.5, True)
    tau13, clamped13 = default_tau(13)
    assert not clamped13
    assert tau13 == pytest.approx(0.50645329078420813, abs=1e-15)
    tau100, clamped100 = default_tau(100)
    assert not clamped100
    assert tau100 == pytest.approx(0.6786140424415112, abs=1e-15)


def test_default_trials_values():
    assert default_trials(10) == 1000
    assert default_trials(21) == 9261
    assert default_trials(33) == 10_000


def test_params_validation():
    with pytest.raises(ValueError):
        RoundingParams(ratio=0.0, tau=0.5, trials=1, heavy_threshold=0.1)
    with pytest.raises(ValueError):
        RoundingParams(ratio=2.0, tau=0.0, trials=1, heavy_threshold=0.1)
    with pytest.raises(ValueError):
        RoundingParams(ratio=2.0, tau=0.5, trials=0, heavy_threshold=0.1)


def test_params_for_instance():
    params = RoundingParams.for_instance(16, 4, seed=9)
    assert params.ratio == 4.0
    assert params.heavy_threshold == pytest.approx(1.0 / 32.0)
    assert params.tau == pytest.approx(0.52655376954683187, abs=1e-15)
    assert not params.tau_clamped
    assert params.trials == 4096
    assert params.seed == 9
    small = RoundingParams.for_instance(8, 2)
    assert small.tau == 0.5 and small.tau_clamped
    explicit = RoundingParams.for_instance(16, 4, trials=7, tau=1.25)
    assert explicit.trials == 7
    assert explicit.tau == 1.25 and not explicit.tau_clamped
    with pytest.raises(ValueError):
        RoundingParams.for_instance(8, 0)
    with pytest.raises(ValueError):
        RoundingParams.for_instance(8, 9)


def test_heavy_sets_boundary_inclusive():
    n = 3
    sol = indicator_solution(n, [0], [1])
    thr = 1.0 / (8.0 * 4.0)
    vecs = sol.vectors.copy()
    vecs[1, 0] = thr  # exactly at the threshold: must be kept
    vecs[2, 0] = thr - 1e-9  # just below: must be dropped
    sol = VectorSolution(dim=sol.dim, anchor=sol.anchor, vectors=vecs, sides=(n, n))
    left, right = heavy_sets(sol, 4.0)
    assert list(left) == [0, 1]
    assert list(right) == [1]


def test_heavy_sets_input_checks():
    sol = indicator_solution(3, [0], [0])
    with pytest.raises(ValueError):
        heavy_sets(sol, 0.0)
    no_sides = VectorSolution(dim=sol.dim, anchor=sol.anchor, vectors=sol.vectors)
    with pytest.raises(ValueError):
        heavy_sets(no_sides, 4.0)


def test_shift_identities_on_indicator():
    n, k = 8, 2
    sol = indicator_solution(n, range(k), range(k))
    unit = shift_vectors(sol, range(k), range(k))
    # members all sit on the anchor, so after shifting they still do
    assert np.abs(np.linalg.norm(unit, axis=1) - 1.0).max() < 1e-12
    prods = unit @ unit.T
    assert np.abs(prods - 1.0).max() < 1e-12
    # raw shifted products follow <u_i,u_j> - c_i c_j / 2 by direct algebra
    shifted = sol.vectors[[0, 1, n, n + 1]] - ALPHA_DEFAULT * np.outer(
        np.ones(4), sol.anchor
    )
    raw = shifted @ shifted.T
    assert np.abs(raw - 0.5).max() < 1e-12


def test_shift_rejects_degenerate_member():
    sol = indicator_solution(4, [0], [0])
    # member U1 has the zero vector, whose shift stays at the origin
    with pytest.raises(ValueError):
        shift_vectors(sol, [0, 1], [0])


def test_shift_rejects_norm_link_violation():
    n = 4
    sol = indicator_solution(n, [0], [0])
    vecs = sol.vectors.copy()
    vecs[0, 0] = 0.9  # mass 0.9 but squared norm 0.81: not a valid relaxation point
    bad = VectorSolution(dim=sol.dim, anchor=sol.anchor, vectors=vecs, sides=(n, n))
    with pytest.raises(ArithmeticError):
        shift_vectors(bad, [0], [0])


def test_gaussian_threshold_matches_manual_draw():
    rng = np.random.default_rng(17)
    unit = np.array([[1.0, 0.0], [0.6, 0.8], [0.0, -1.0]])
    mask = gaussian_threshold(unit, 0.5, rng)
    g = np.random.default_rng(17).standard_normal(2)
    assert list(mask) == list((unit @ g) >= 0.5)
    with pytest.raises(ValueError):
        gaussian_threshold(np.ones(3), 0.5, rng)


def test_analysis_size_target_frozen_values():
    assert analysis_size_target(2.0, 0.5) == pytest.approx(0.0044423013851123964, rel=1e-12)
    assert analysis_size_target(4.0, 0.5) == pytest.approx(0.0011062456233273645, rel=1e-12)
    assert analysis_size_target(2.0, 1.0) == pytest.approx(0.0022738237633010224, rel=1e-12)
    with pytest.raises(ValueError):
        analysis_size_target(0.0, 0.5)
    with pytest.raises(ValueError):
        analysis_size_target(2.0, 0.0)


def test_round_once_is_first_trial_of_round_many():
    n, k = 8, 2
    graph, _ = planted_instance(n, k, 0.0, seed=3)
    sol = indicator_solution(n, range(k), range(k))
    params = RoundingParams.for_instance(n, k, trials=16, seed=11)
    single = round_once(sol, graph, params)
    run = round_many(sol, graph, params)
    assert single == run.outcomes[0]


def test_round_many_reproducible():
    n, k = 8, 2
    graph, _ = planted_instance(n, k, 0.2, seed=5)
    sol = indicator_solution(n, range(k), range(k))
    params = RoundingParams.for_instance(n, k, trials=24, seed=2)
    first = round_many(sol, graph, params)
    second = round_many(sol, graph, params)
    assert first.outcomes == second.outcomes
    assert first.best == second.best


def test_round_many_on_indicator_planted():
    n, k = 8, 2
    graph, planted = planted_instance(n, k, 0.0, seed=3)
    left = planted.biclique.left
    right = planted.biclique.right
    sol = indicator_solution(n, left, right)
    params = RoundingParams.for_instance(n, k, trials=32, seed=0)
    run = round_many(sol, graph, params)
    # all member unit vectors coincide with the anchor, so each trial keeps
    # either every planted vertex or none of them
    for outcome in run.outcomes:
        assert outcome.left_survivors in ((), left)
        assert outcome.right_survivors in ((), right)
    assert run.extraction_count >= 1
    assert run.best is not None
    assert verify_biclique(graph, run.best.left, run.best.right)


def test_round_many_best_is_largest_then_earliest(solved_planted):
    case = next(c for c in solved_planted if (c.n, c.p) == (16, 0.2))
    sol = gram_to_vectors(case.outcome.gram, sides=(case.n, case.n))
    params = RoundingParams.for_instance(case.n, case.k, trials=40, seed=7)
    run = round_many(sol, case.graph, params)
    found = [o.biclique for o in run.outcomes if o.biclique is not None]
    assert found, "expected at least one extraction on a solved planted instance"
    best_size = max(b.size for b in found)
    assert run.best.size == best_size
    assert run.best == next(b for b in found if b.size == best_size)
    for outcome in run.outcomes:
        assert outcome.potential == outcome.edges - 2 * outcome.r_target * outcome.non_edges
        assert outcome.event_held == (outcome.potential >= 2 * case.n * outcome.r_target)


def test_rounding_requires_matching_sides():
    graph, _ = planted_instance(8, 2, 0.0, seed=3)
    params = RoundingParams.for_instance(8, 2, trials=1)
    off = indicator_solution(6, [0], [0])
    with pytest.raises(ValueError):
        round_once(off, graph, params)
    bare = indicator_solution(8, [0], [0])
    bare = VectorSolution(dim=bare.dim, anchor=bare.anchor, vectors=bare.vectors)
    with pytest.raises(ValueError):
        round_once(bare, graph, params)


def test_zero_threshold_drops_degenerate_members():
    n, k = 8, 2
    graph, _ = planted_instance(n, k, 0.0, seed=3)
    sol = indicator_solution(n, range(k), range(k))
    params = RoundingParams(ratio=4.0, tau=0.5, trials=1, heavy_threshold=0.0, seed=0)
    outcome = round_once(sol, graph, params)
    dropped = set(outcome.dropped_members)
    expected = {("U", i) for i in range(k, n)} | {("V", j) for j in range(k, n)}
    assert dropped == expected
    assert set(outcome.left_survivors) <= set(range(k))
    assert set(outcome.right_survivors) <= set(range(k))


def test_diagnostics_on_indicator():
    n, k = 16, 4
    graph, planted = planted_instance(n, k, 0.0, seed=9)
    sol = indicator_solution(n, planted.biclique.left, planted.biclique.right)
    diag = diagnostics(sol, graph, ratio=n / k, tau=0.5)
    assert diag.left_heavy == planted.biclique.left
    assert diag.right_heavy == planted.biclique.right
    assert diag.pair_mass == float(k * k)
    assert diag.pair_mass_floor == 0.75 * k * k
    assert diag.pair_mass_ok
    assert diag.positive_pairs == k * k
    assert diag.positive_pairs_ok
    assert diag.positive_pairs_within_edges
    assert diag.analysis_r == pytest.approx(0.0011062456233273645, rel=1e-12)
    assert diag.guarantee_value == pytest.approx(n ** (1.0 / (1000.0 * 4.0)), rel=1e-12)
    assert diag.guarantee_value < 2.0  # vacuous at desk scale, by design


def test_weak_gap_solution_defeats_rounding():
    # the half-half certificate is feasible on the empty graph, where no
    # biclique exists; rounding must come back empty-handed rather than
    # inventing one
    n = 4
    sol = gram_to_vectors(weak_gap_solution(n), sides=(n, n))
    graph = empty_bipartite(n, n)
    diag = diagnostics(sol, graph, ratio=2.0)
    assert len(diag.left_heavy) == n and len(diag.right_heavy) == n
    assert abs(diag.pair_mass) < 1e-7
    assert not diag.pair_mass_ok
    assert diag.positive_pairs == 0
    assert not diag.positive_pairs_ok
    params = RoundingParams.for_instance(2 * n, n, trials=64, seed=1)
    params = RoundingParams(
        ratio=2.0,
        tau=params.tau,
        trials=64,
        heavy_threshold=1.0 / 16.0,
        seed=1,
    )
    run = round_many(sol, graph, params)
    assert run.best is None
    assert run.event_count == 0
    assert run.extraction_count == 0


def test_rounding_solved_instance_end_to_end(solved_planted):
    case = next(c for c in solved_planted if (c.n, c.k, c.p) == (8, 2, 0.0))
    sol = gram_to_vectors(case.outcome.gram, sides=(case.n, case.n))
    params = RoundingParams.for_instance(case.n, case.k, trials=48, seed=5)
    run = round_many(sol, case.graph, params)
    assert run.best is not None
    assert verify_biclique(case.graph, run.best.left, run.best.right)
    diag = diagnostics(sol, case.graph, ratio=case.n / case.k)
    assert diag.pair_mass_ok
    assert diag.positive_pairs_ok
    assert diag.positive_pairs_within_edges
