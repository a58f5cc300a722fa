"""Independent ground truth: brute-force greatest fixpoint, stability check, classic simulation.

The brute-force path deliberately avoids partitions and up-closures. Liftings
are decided by explicit weight-function variables over the candidate relation,
so the only code shared with :mod:`pasim.refine` is the LP solver.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .lp import LinearProgram, feasible
from .model import GameStructure, MixedAction
from .orderings import PartitionPair
from .refine import FollowChecker

__all__ = [
    "NotDegenerateError",
    "defender_lp",
    "defends",
    "brute_force",
    "check_stability",
    "classic_simulation",
]

ZERO, ONE = Fraction(0), Fraction(1)


class NotDegenerateError(ValueError):
    """The game is not a plain labelled transition system."""


def defender_lp(g: GameStructure, rel: Iterable[tuple[int, int]], s: int, t: int,
                attack: MixedAction) -> LinearProgram:
    """LP for: some mix at ``t`` answers ``attack`` at ``s`` against every pure player-2 move.

    Variables: alphas (mix at ``t``), betas ``beta[j][k]`` (player-2 mix at ``s``
    for each pure ``b_j`` at ``t``), then per ``j`` one weight ``w[j][x, y]``
    for every related pair of successor states.
    """
    l, m = len(g.actions1), len(g.actions2)
    rel = set(rel)
    # Exact left coefficients: mass of s-side successor x under (attack, b_k).
    left: list[dict[int, Fraction]] = [{} for _ in range(m)]
    for k in range(m):
        acc: dict[int, Fraction] = {}
        for a, w in attack.weights.entries:
            for x, v in g.delta(s, a, k).entries:
                acc[x] = acc.get(x, ZERO) + w * v
        left[k] = acc
    lsupp = sorted(set().union(*(d.keys() for d in left)))

    n_ab = l + m * m
    weight_vars: list[tuple[int, int, int]] = []
    rsupps = []
    for j in range(m):
        rsupp = sorted(set().union(*(g.delta(t, i, j).support() for i in range(l))))
        rsupps.append(rsupp)
        rs = set(rsupp)
        weight_vars.extend((j, x, y) for x in lsupp for y in rsupp if (x, y) in rel and y in rs)
    wi = {key: n_ab + i for i, key in enumerate(weight_vars)}
    nv = n_ab + len(weight_vars)

    def row():
        return [ZERO] * nv

    rows = []
    r = row()
    for i in range(l):
        r[i] = ONE
    rows.append((tuple(r), "=", ONE))
    for j in range(m):
        r = row()
        for k in range(m):
            r[l + j * m + k] = ONE
        rows.append((tuple(r), "=", ONE))
    for j in range(m):
        for x in lsupp:
            # sum_y w[j][x, y] = sum_k beta[j][k] * left_k(x)
            r = row()
            for (jj, xx, y), idx in wi.items():
                if jj == j and xx == x:
                    r[idx] = ONE
            for k in range(m):
                r[l + j * m + k] -= left[k].get(x, ZERO)
            rows.append((tuple(r), "=", ZERO))
        for y in rsupps[j]:
            # sum_x w[j][x, y] = sum_i alpha[i] * delta(t, a_i, b_j)(y)
            r = row()
            for (jj, x, yy), idx in wi.items():
                if jj == j and yy == y:
                    r[idx] = ONE
            for i in range(l):
                r[i] -= g.delta(t, i, j)[y]
            rows.append((tuple(r), "=", ZERO))
    bounds = ((ZERO, ONE),) * nv
    return LinearProgram(nv, tuple(rows), bounds)


def defends(g: GameStructure, rel, s: int, t: int, attack: MixedAction) -> Optional[list[Fraction]]:
    return feasible(defender_lp(g, rel, s, t, attack))


def _simulates(g: GameStructure, rel, s: int, t: int) -> bool:
    return all(defends(g, rel, s, t, MixedAction.point(1, a)) is not None
               for a in range(len(g.actions1)))


def brute_force(g: GameStructure, player: int = 1) -> frozenset[tuple[int, int]]:
    """Largest PA-simulation for ``player`` as a greatest fixpoint over state relations.

    Starts from all label-respecting pairs and deletes, sweep by sweep, every
    pair whose deterministic player attacks cannot all be defended against
    the relation of the previous sweep.
    """
    gp = g.for_player(player)
    n = gp.n_states
    rel = {(s, t) for s in range(n) for t in range(n) if gp.labels[s] == gp.labels[t]}
    while True:
        frozen = frozenset(rel)
        dead = {(s, t) for s, t in sorted(frozen) if not _simulates(gp, frozen, s, t)}
        if not dead:
            return frozen
        rel -= dead


def is_simulation(g: GameStructure, rel, player: int = 1) -> bool:
    """Pointwise check that ``rel`` is label-respecting and closed under the defender test."""
    gp = g.for_player(player)
    rel = frozenset(rel)
    return all(gp.labels[s] == gp.labels[t] and _simulates(gp, rel, s, t) for s, t in rel)


def check_stability(g: GameStructure, p: PartitionPair, player: int = 1) -> bool:
    """Every ordered block pair: each state above follows every action of each state below."""
    gp = g.for_player(player)
    checker = FollowChecker(p, gp)
    for i, j in sorted(p.order):
        for s in sorted(p.blocks[i]):
            for t in sorted(p.blocks[j]):
                if not checker.can_sim(s, t):
                    return False
    return True


def classic_simulation(g: GameStructure) -> frozenset[tuple[int, int]]:
    """Largest plain simulation of a game with one player-2 action and Dirac moves."""
    if len(g.actions2) != 1:
        raise NotDegenerateError("not a degenerate PGS: player 2 has more than one action")
    succ: list[set[int]] = []
    for s in range(g.n_states):
        nxt = set()
        for a in range(len(g.actions1)):
            d = g.delta(s, a, 0)
            if len(d.entries) != 1:
                raise NotDegenerateError("not a degenerate PGS: non-Dirac transition")
            nxt.add(d.entries[0][0])
        succ.append(nxt)
    n = g.n_states
    rel = {(s, t) for s in range(n) for t in range(n) if g.labels[s] == g.labels[t]}
    changed = True
    while changed:
        changed = False
        for s, t in sorted(rel):
            if not all(any((s2, t2) in rel for t2 in succ[t]) for s2 in succ[s]):
                rel.discard((s, t))
                changed = True
    return frozenset(rel)
