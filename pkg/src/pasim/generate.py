"""Seeded random game structures for property tests and the ``gen`` command."""
from __future__ import annotations

import random
from fractions import Fraction

from .model import Distribution, GameStructure

__all__ = ["random_game"]


def _random_distribution(rng: random.Random, n: int, branch: int, denominator: int) -> Distribution:
    k = rng.randint(1, min(branch, n, denominator))
    targets = sorted(rng.sample(range(n), k))
    # Split the denominator into k positive integer parts.
    cuts = sorted(rng.sample(range(1, denominator), k - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [denominator])]
    return Distribution.from_mapping({t: Fraction(c, denominator) for t, c in zip(targets, parts)})


def random_game(states: int, actions1: int, actions2: int, labels: int = 2,
                denominator: int = 4, branch: int = 2, seed: int = 0) -> GameStructure:
    """Random total game; every transition has at most ``branch`` targets.

    Masses are multiples of ``1/denominator``, and each state is labelled with
    one of ``labels`` propositions. The result depends only on the arguments.
    """
    for name, v in (("states", states), ("actions1", actions1), ("actions2", actions2),
                    ("labels", labels), ("denominator", denominator), ("branch", branch)):
        if v < 1:
            raise ValueError(f"{name} must be >= 1, got {v}")
    rng = random.Random(seed)
    props = tuple(f"p{i}" for i in range(labels))
    state_names = tuple(f"s{i}" for i in range(states))
    state_labels = tuple(frozenset({props[rng.randrange(labels)]}) for _ in range(states))
    trans = tuple(
        tuple(tuple(_random_distribution(rng, states, branch, denominator) for _ in range(actions2))
              for _ in range(actions1))
        for _ in range(states)
    )
    return GameStructure(state_names, 0, state_labels,
                         tuple(f"a{i}" for i in range(actions1)),
                         tuple(f"b{i}" for i in range(actions2)), trans, props)
