"""Named example games used by tests, scripts and the documentation."""
from __future__ import annotations

from .model import GameStructure, make_game


def example_one() -> GameStructure:
    """Three states; s0 moves to {s1: 1/2, s2: 1/2} or {s1: 1/4, s2: 3/4}, s1 and s2 absorb."""
    half = {"s1": "1/2", "s2": "1/2"}
    skew = {"s1": "1/4", "s2": "3/4"}
    delta = {}
    for b in ("0", "1"):
        delta[("s0", "0", b)] = half
        delta[("s0", "1", b)] = skew
        for a in ("0", "1"):
            delta[("s1", a, b)] = {"s1": "1"}
            delta[("s2", a, b)] = {"s2": "1"}
    return make_game(["s0", "s1", "s2"], {"s2": ["p"]}, ["0", "1"], ["0", "1"], delta)


def matching_pennies() -> GameStructure:
    """At s every move gives {x: 1/2, y: 1/2}; at t the outcome is x iff a matches c.

    Only the uniform mix at t keeps up with s (and vice versa).
    """
    delta = {}
    for a in ("a", "b"):
        for c in ("c", "d"):
            delta[("s", a, c)] = {"x": "1/2", "y": "1/2"}
            delta[("t", a, c)] = {"x": "1"} if (a, c) in (("a", "c"), ("b", "d")) else {"y": "1"}
            delta[("x", a, c)] = {"x": "1"}
            delta[("y", a, c)] = {"y": "1"}
    return make_game(["s", "t", "x", "y"], {"x": ["p"], "y": ["q"]},
                     ["a", "b"], ["c", "d"], delta)


def single_state() -> GameStructure:
    return make_game(["s"], {}, ["a"], ["b"], {("s", "a", "b"): {"s": "1"}})
