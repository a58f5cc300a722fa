"""Partition-pair refinement: follow checks, block splitting and the coarsest stable pair."""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .lp import build_canfollow_lp, solve
from .model import GameStructure
from .orderings import MassTable, PartitionPair, induced_relation, initial_partition

__all__ = [
    "RefinementStats",
    "FollowWitness",
    "FollowChecker",
    "GCPPResult",
    "can_follow",
    "can_follow_witness",
    "can_sim",
    "split",
    "gcpp",
]


@dataclass
class RefinementStats:
    outer_iterations: int = 0
    lp_calls: int = 0
    lp_pivots_total: int = 0
    final_blocks: int = 0

    def lines(self) -> list[str]:
        return [f"{k}={v}" for k, v in vars(self).items()]


@dataclass(frozen=True)
class FollowWitness:
    alpha: tuple[Fraction, ...]
    beta: tuple[tuple[Fraction, ...], ...]


class FollowChecker:
    """Follow/simulation queries against one frozen partition-pair snapshot.

    ``can_sim`` answers are memoised by state pair; the coefficient table is
    shared by every LP built on this snapshot.
    """

    def __init__(self, p: PartitionPair, g: GameStructure, stats: Optional[RefinementStats] = None,
                 lp_builder: Callable = build_canfollow_lp):
        self.pair = p
        self.game = g
        self.stats = stats if stats is not None else RefinementStats()
        self.masses = MassTable(p, g)
        self._build = lp_builder
        self._sim: dict[tuple[int, int], bool] = {}

    def witness(self, s: int, t: int, a: int) -> Optional[FollowWitness]:
        flp = self._build(self.pair, self.game, s, t, a, self.masses)
        res = solve(flp.program)
        self.stats.lp_calls += 1
        self.stats.lp_pivots_total += res.pivots
        if res.assignment is None:
            return None
        x = res.assignment
        return FollowWitness(tuple(flp.alpha(x)), tuple(tuple(r) for r in flp.beta(x)))

    def can_follow(self, s: int, t: int, a: int) -> bool:
        return self.witness(s, t, a) is not None

    def _compute_sim(self, s: int, t: int) -> bool:
        return all(self.can_follow(s, t, a) for a in range(len(self.game.actions1)))

    def can_sim(self, s: int, t: int) -> bool:
        key = (s, t)
        if key not in self._sim:
            self._sim[key] = self._compute_sim(s, t)
        return self._sim[key]

    def prefetch(self, pairs: Iterable[tuple[int, int]], threads: Optional[int]) -> None:
        todo = [k for k in dict.fromkeys(pairs) if k not in self._sim]
        if not todo or not threads or threads < 2:
            return
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda k: self._compute_sim(*k), todo))
        for k, r in zip(todo, results):
            self._sim[k] = r


def can_follow(p: PartitionPair, g: GameStructure, s: int, t: int, a: int) -> bool:
    """Whether some mixed action at ``t`` follows action ``a`` at ``s`` on ``p``."""
    return FollowChecker(p, g).can_follow(s, t, a)


def can_follow_witness(p: PartitionPair, g: GameStructure, s: int, t: int, a: int) -> Optional[FollowWitness]:
    return FollowChecker(p, g).witness(s, t, a)


def can_sim(p: PartitionPair, g: GameStructure, s: int, t: int) -> bool:
    """Whether ``t`` simulates ``s`` on ``p``: every action of ``s`` can be followed."""
    return FollowChecker(p, g).can_sim(s, t)


def _pick(block: frozenset[int], policy: str) -> int:
    return max(block) if policy == "max" else min(block)


def _split_edges(p: PartitionPair, g: GameStructure, b: int, checker: FollowChecker,
                 representative: str, threads: Optional[int]):
    blocks = sorted((frozenset({s}) for s in p.blocks[b]), key=min)
    edges: set[tuple[frozenset[int], frozenset[int]]] = set()
    changed = True
    while changed:
        changed = False
        reps = [_pick(x, representative) for x in blocks]
        if threads:
            checker.prefetch(((x, y) for x in reps for y in reps if x != y), threads)
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                b1, b2 = blocks[i], blocks[j]
                s1, s2 = reps[i], reps[j]
                fwd = checker.can_sim(s1, s2)
                bwd = checker.can_sim(s2, s1)
                if fwd and bwd:
                    merged = b1 | b2
                    fused = set()
                    for x, y in edges:
                        if y in (b1, b2) and x not in (b1, b2):
                            fused.add((x, merged))
                        elif x in (b1, b2) and y not in (b1, b2):
                            fused.add((merged, y))
                        elif x not in (b1, b2) and y not in (b1, b2):
                            fused.add((x, y))
                    edges = fused
                    blocks = sorted([x for x in blocks if x not in (b1, b2)] + [merged], key=min)
                    changed = True
                    break
                if fwd and (b1, b2) not in edges:
                    edges.add((b1, b2))
                    changed = True
                elif bwd and (b2, b1) not in edges:
                    edges.add((b2, b1))
                    changed = True
            if changed and len(blocks) != len(reps):
                break
    return blocks, edges


def split(p: PartitionPair, g: GameStructure, b: int, *, checker: Optional[FollowChecker] = None,
          representative: str = "min", threads: Optional[int] = None) -> PartitionPair:
    """Refine block ``b`` of ``p`` into the partition pair of its states stable on ``p``.

    Sub-blocks hold states that simulate each other on ``p``; ``X <= Y`` when
    the representative of ``Y`` simulates the representative of ``X``.
    """
    checker = checker or FollowChecker(p, g)
    blocks, edges = _split_edges(p, g, b, checker, representative, threads)
    return PartitionPair.from_block_order(blocks, edges)


@dataclass
class GCPPResult:
    pair: PartitionPair
    relation: frozenset[tuple[int, int]]
    stats: RefinementStats
    history: list[PartitionPair] = field(default_factory=list)


def _refine_once(prev: PartitionPair, g: GameStructure, checker: FollowChecker,
                 visit: Sequence[int], representative: str, threads: Optional[int]) -> PartitionPair:
    blocks: list[frozenset[int]] = list(prev.blocks)
    edges = {(prev.blocks[i], prev.blocks[j]) for i, j in prev.order if i != j}
    origin: dict[frozenset[int], frozenset[int]] = {}
    for bi in visit:
        old = prev.blocks[bi]
        subs, inner = _split_edges(prev, g, bi, checker, representative, threads)
        blocks.remove(old)
        blocks.extend(subs)
        nxt = set(inner)
        for x, y in edges:
            if x == old and y == old:
                continue
            if x == old:
                nxt.update((sb, y) for sb in subs)
            elif y == old:
                nxt.update((x, sb) for sb in subs)
            else:
                nxt.add((x, y))
        edges = nxt
        for sb in subs:
            origin[sb] = old

    # Edges inherited across old blocks were only valid on older snapshots;
    # keep the ones that still hold on ``prev``.
    kept = {
        (x, y) for x, y in edges
        if origin[x] == origin[y]
        or checker.can_sim(_pick(x, representative), _pick(y, representative))
    }
    return PartitionPair.from_block_order(blocks, kept)


def gcpp(g: GameStructure, player: int = 1, *, representative: str = "min",
         shuffle_seed: Optional[int] = None, threads: Optional[int] = None,
         lp_builder: Callable = build_canfollow_lp) -> GCPPResult:
    """Coarsest stable partition pair below the labelling partition, and its relation.

    ``representative`` ('min' or 'max') and ``shuffle_seed`` (block visit
    order) only exist to exercise policy independence; ``threads`` enables
    concurrent simulation checks inside each split.
    """
    gp = g.for_player(player)
    stats = RefinementStats()
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    current = initial_partition(gp)
    history = [current]
    while True:
        stats.outer_iterations += 1
        checker = FollowChecker(current, gp, stats, lp_builder)
        visit = list(range(len(current.blocks)))
        if rng is not None:
            rng.shuffle(visit)
        nxt = _refine_once(current, gp, checker, visit, representative, threads)
        if nxt.same_as(current):
            break
        current = nxt
        history.append(current)
    stats.final_blocks = len(current.blocks)
    return GCPPResult(current, induced_relation(current), stats, history)
