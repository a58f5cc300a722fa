"""Print the two small instances that motivate design choices in the engine.

1. Lifting: comparing masses on single-block up-closures is not enough.
2. Mixed attacks: a pair can survive every pure attack yet lose to a mix.
"""
from fractions import Fraction as F

from pasim.model import Distribution, MixedAction, make_game
from pasim.oracle import brute_force, defends
from pasim.orderings import PartitionPair, lifted_leq, weight_witness
from pasim.refine import gcpp


def lifting():
    p = PartitionPair.build([[0], [1], [2], [3]], [(0, 2), (1, 2)])
    d1 = Distribution.from_mapping({0: F(1, 2), 1: F(1, 2)})
    d2 = Distribution.from_mapping({2: F(1, 2), 3: F(1, 2)})
    print("blocks B0,B1 below B2; d1 = B0:1/2 + B1:1/2, d2 = B2:1/2 + B3:1/2")
    print("  principal closures only:", lifted_leq(d1, d2, p, principal_only=True))
    print("  all connected up-sets:  ", lifted_leq(d1, d2, p))
    print("  weight function exists:", weight_witness(d1, d2, p.order) is not None)


def mixed_attack():
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
    g = make_game(["s", "t", "x", "y"], {"x": ["p"], "y": ["q"]}, "ab", "cd", delta)
    rel = brute_force(g)
    print("game where t always yields x:1/2, y:1/2")
    print("  (s, t) in refinement result:", (0, 1) in gcpp(g).relation)
    for name, mix in (("a", MixedAction.point(1, 0)), ("b", MixedAction.point(1, 1)),
                      ("a:1/3 b:2/3", MixedAction.of(1, {0: F(1, 3), 1: F(2, 3)}))):
        print(f"  attack {name:<12} defended:", defends(g, rel, 0, 1, mix) is not None)


if __name__ == "__main__":
    lifting()
    print()
    mixed_attack()
