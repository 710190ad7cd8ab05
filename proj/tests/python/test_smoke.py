"""Smoke tests for the Python bindings: each main operation is exercised
once against small, independently checkable cases."""

import pytest

import liginf as lig


def coordination_pair():
    return lig.InfluenceGame(2, [(0, 1, 1.0), (1, 0, 1.0)], [0.0, 0.0])


def test_game_surface():
    g = coordination_pair()
    assert g.n == 2
    assert g.weight(0, 1) == 1.0
    assert g.influence(0, [1, 1]) == pytest.approx(1.0)
    assert g.payoff(0, [-1, 1]) == pytest.approx(-1.0)
    assert g.best_responses(0, [1, 1]) == [1]
    assert g.is_psne([1, 1])
    assert not g.is_psne([1, -1])
    back = lig.InfluenceGame.from_json(g.to_json())
    assert back.n == 2 and back.weight(1, 0) == 1.0


def test_enumeration_matches_brute_force():
    g = lig.gen_uniform_random(10, 0.5, 0.5, seed=7)
    psne, stats, complete = lig.enumerate_psne(g)
    assert complete
    assert psne == lig.brute_force_psne(g)
    assert stats["psne_found"] == len(psne)


def test_structured_solvers():
    chain = lig.InfluenceGame(3, [(0, 1, 1.0), (1, 0, 1.0), (1, 2, 1.0), (2, 1, 1.0)],
                              [0.0, 0.0, 0.0])
    witness = lig.solve_tree(chain)
    assert witness is not None and chain.is_psne(witness)

    fp, rounds = lig.solve_supermodular(chain, "plus")
    assert fp == [1, 1, 1] and rounds <= 3

    psne, exact = lig.solve_divide_conquer(chain)
    assert exact
    assert psne == lig.brute_force_psne(chain)


def test_propagation_forces_a_follower():
    g = lig.InfluenceGame(2, [(0, 1, 5.0)], [0.0, 1.0])
    domains, ok = lig.propagate(g, {0: 1})
    assert ok and domains[1] == [1]


def test_counting_gadgets():
    g = lig.gadget_knapsack_star_game([1, 2], 2)
    assert len(lig.brute_force_psne(g)) == 3
    sat = lig.gadget_3sat_game(3, [[1, 2, 3]])
    assert len(lig.brute_force_psne(sat)) == 7  # satisfying assignments


def test_most_influential_supreme_court():
    g = lig.supreme_court()
    psne = lig.brute_force_psne(g)
    assert [1] * 9 in psne
    selected, actions, goal = lig.exact_most_influential(
        g, psne, goal=("target", [1] * 9))
    assert len(selected) == 2
    assert selected[0] in (0, 1)          # Scalia or Thomas
    assert selected[1] in (5, 6, 7, 8)    # one of the liberal justices
    greedy_sel, _, _ = lig.greedy_most_influential(g, psne, goal=("target", [1] * 9))
    assert lig.count_psne_extensions(g, dict(zip(greedy_sel, [1] * len(greedy_sel)))) == 1


def test_scenarios():
    g = coordination_pair()
    psne = lig.brute_force_psne(g)
    cloture = lig.stable_cloture_set(psne, quota=2)
    assert cloture == [[1, 1]]
    players, cover = lig.filibuster_breakers(g, psne, cloture, exact=True)
    assert len(players) == 1 and cover == [[1, 1]]

    out = lig.best_response_dynamics(g, {0: 1}, [1, -1])
    assert out["kind"] == "fixed-point" and out["state"] == [1, 1] and out["stable"]

    anti = lig.InfluenceGame(2, [(0, 1, -1.0), (1, 0, -1.0)], [0.0, 0.0])
    cyc = lig.best_response_dynamics(anti, {}, [1, 1])
    assert cyc["kind"] == "cycle" and cyc["period"] == 2

    assert lig.diffusion_most_influential(g) in ([0], [1])


def test_generators_and_learning():
    a = lig.gen_erdos_renyi(8, 0.4, seed=3)
    b = lig.gen_erdos_renyi(8, 0.4, seed=3)
    assert a.to_json() == b.to_json()
    assert lig.gen_pref_attach(3, 3, 0.0, seed=1).n == 3

    rows = [[s, s, -s] for s in (1, -1) for _ in range(10)]
    game, converged, grads = lig.learn_lig(rows)
    assert converged
    assert game.weight(0, 1) > 0
    assert game.weight(2, 0) < 0 or game.weight(0, 2) < 0
    assert lig.psne_representation_rate(game, rows) == pytest.approx(1.0)

    votes = lig.ingest_votes([[1, 2, 6, 1]])
    assert votes == [[1, -1, 1, 1]]


def test_error_mapping():
    g = coordination_pair()
    with pytest.raises(ValueError):
        lig.InfluenceGame(2, [(0, 0, 1.0)], [0.0, 0.0])
    with pytest.raises(lig.Infeasible):
        lig.filibuster_breakers(g, lig.brute_force_psne(g), [], exact=True)
    with pytest.raises(lig.BudgetExhausted):
        lig.count_psne_extensions(lig.gen_uniform_random(14, 0.5, 0.5, seed=1), {}, budget=3)
