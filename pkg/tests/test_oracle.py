import random
from fractions import Fraction as F

import pytest

from pasim.model import MixedAction, make_game
from pasim.oracle import (NotDegenerateError, brute_force, check_stability, classic_simulation,
                          defends, is_simulation)
from pasim.orderings import PartitionPair, initial_partition
from pasim.refine import gcpp

from _support import naive_largest_simulation, sample_dirac_game, sample_game

IDENTITY3 = {(0, 0), (1, 1), (2, 2)}


def test_brute_force_examples(ex1, pennies, lone):
    assert brute_force(ex1) == IDENTITY3
    assert naive_largest_simulation(ex1) == IDENTITY3
    assert brute_force(lone) == {(0, 0)}
    mp = brute_force(pennies)
    assert mp == {(0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (1, 0)}
    assert naive_largest_simulation(pennies) == mp


def test_naive_enumeration_on_small_random_games():
    rng = random.Random(11)
    checked = 0
    for seed in range(200):
        g = sample_game(rng, seed, max_states=4)
        same = sum(1 for s in range(g.n_states) for t in range(g.n_states)
                   if s != t and g.labels[s] == g.labels[t])
        if same > 6:
            continue
        for player in (1, 2):
            naive = naive_largest_simulation(g, player)
            assert is_simulation(g, naive, player)
            assert brute_force(g, player) == naive
        checked += 1
    assert checked >= 50


def test_brute_force_is_a_fixpoint():
    rng = random.Random(5)
    for seed in range(40):
        g = sample_game(rng, seed)
        rel = brute_force(g)
        assert all((s, s) in rel for s in range(g.n_states))
        assert all(g.labels[s] == g.labels[t] for s, t in rel)
        assert all((s, u) in rel for s, t in rel for t2, u in rel if t == t2)
        assert is_simulation(g, rel)


def test_check_stability_examples(ex1):
    assert check_stability(ex1, gcpp(ex1).pair)
    assert not check_stability(ex1, initial_partition(ex1))
    singletons = PartitionPair.build([[s] for s in range(ex1.n_states)])
    assert check_stability(ex1, singletons)


def test_stable_pairs_induce_simulations():
    rng = random.Random(8)
    for seed in range(40):
        g = sample_game(rng, seed)
        p = gcpp(g).pair
        assert check_stability(g, p)
        from pasim.orderings import induced_relation
        assert induced_relation(p) <= brute_force(g)


def test_classic_simulation_examples():
    cycle = make_game(["a", "b"], {}, ["x"], ["y"],
                      {("a", "x", "y"): {"b": "1"}, ("b", "x", "y"): {"a": "1"}})
    assert classic_simulation(cycle) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    clash = make_game(["a", "b", "x", "y"], {"x": ["p"], "y": ["q"]}, ["m"], ["n"],
                      {("a", "m", "n"): {"x": "1"}, ("b", "m", "n"): {"y": "1"},
                       ("x", "m", "n"): {"x": "1"}, ("y", "m", "n"): {"y": "1"}})
    assert classic_simulation(clash) == {(0, 0), (1, 1), (2, 2), (3, 3)}


def test_classic_simulation_rejects_real_games(ex1, pennies):
    with pytest.raises(NotDegenerateError):
        classic_simulation(ex1)
    one_opponent = make_game(["a"], {}, ["x"], ["y"], {("a", "x", "y"): {"a": "1"}})
    assert classic_simulation(one_opponent) == {(0, 0)}
    coin = make_game(["a", "b"], {}, ["x"], ["y"],
                     {("a", "x", "y"): {"a": "1/2", "b": "1/2"}, ("b", "x", "y"): {"b": "1"}})
    with pytest.raises(NotDegenerateError):
        classic_simulation(coin)


def test_classic_simulation_matches_refinement():
    rng = random.Random(2)
    for seed in range(60):
        g = sample_dirac_game(rng, seed)
        assert gcpp(g).relation == classic_simulation(g)


def correlation_gap_game():
    """Pure attacks at s can each be answered against t, one mixed attack cannot.

    t always yields {x: 1/2, y: 1/2}.  At s player 2 reaches that outcome with
    weight 1/2 on c against a, and with weight 2/3 on c against b; against the
    mix (1/3, 2/3) the x-mass is 5/9 whatever player 2 does.
    """
    delta = {}
    for a in "ab":
        for c in "cd":
            delta[("t", a, c)] = {"x": "1/2", "y": "1/2"}
            delta[("x", a, c)] = {"x": "1"}
            delta[("y", a, c)] = {"y": "1"}
    delta[("s", "a", "c")] = {"x": "1"}
    delta[("s", "a", "d")] = {"y": "1"}
    delta[("s", "b", "c")] = {"x": "1/3", "y": "2/3"}
    delta[("s", "b", "d")] = {"x": "5/6", "y": "1/6"}
    return make_game(["s", "t", "x", "y"], {"x": ["p"], "y": ["q"]}, "ab", "cd", delta)


def test_pure_attacks_do_not_cover_mixed_ones():
    g = correlation_gap_game()
    rel = brute_force(g)
    assert (0, 1) in rel and gcpp(g).relation == rel
    for a in range(2):
        assert defends(g, rel, 0, 1, MixedAction.point(1, a)) is not None
    assert defends(g, rel, 0, 1, MixedAction.of(1, {0: F(1, 3), 1: F(2, 3)})) is None


@pytest.mark.xfail(strict=True, reason="pure attacks do not cover mixed attacks in general; "
                                       "see test_pure_attacks_do_not_cover_mixed_ones")
def test_mixed_attacks_spot_check():
    rng = random.Random(5)
    for seed in range(300):
        g = sample_game(rng, 1000 + seed)
        for player in (1, 2):
            gp = g.for_player(player)
            rel = brute_force(g, player)
            for s, t in rng.sample(sorted(rel), min(20, len(rel))):
                for _ in range(5):
                    w = [rng.randint(1, 6) for _ in gp.actions1]
                    mix = MixedAction.of(1, {a: F(x, sum(w)) for a, x in enumerate(w)})
                    assert defends(gp, rel, s, t, mix) is not None
