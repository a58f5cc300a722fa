"""Partition pairs, block up-closures and the lifted order on block distributions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .lp import LinearProgram, feasible
from .model import Distribution, GameStructure, PGSError

__all__ = [
    "OrderCycleError",
    "PartitionPair",
    "MassTable",
    "initial_partition",
    "project",
    "up_closure",
    "lifted_leq",
    "weight_witness",
    "pair_leq",
    "induced_relation",
    "pair_to_document",
    "pair_from_document",
]


class OrderCycleError(AssertionError):
    """The block order stopped being antisymmetric: an internal invariant broke."""


def _close(n: int, pairs: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    up = [{i} for i in range(n)]
    for i, j in pairs:
        up[i].add(j)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            extra = set().union(*(up[j] for j in up[i])) - up[i]
            if extra:
                up[i] |= extra
                changed = True
    return frozenset((i, j) for i in range(n) for j in up[i])


@dataclass(frozen=True)
class PartitionPair:
    """Blocks of states plus a partial order on block indices.

    ``order`` is always stored reflexively and transitively closed.  Instances
    are immutable snapshots; derived tables are cached per instance.
    """

    blocks: tuple[frozenset[int], ...]
    order: frozenset[tuple[int, int]]

    def __post_init__(self):
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty block")
            if seen & b:
                raise ValueError("blocks overlap")
            seen |= b
        n = len(self.blocks)
        for i, j in self.order:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError("order refers to a missing block")
            if i != j and (j, i) in self.order:
                raise OrderCycleError(f"order cycle between blocks {i} and {j}")
        if any((i, i) not in self.order for i in range(n)):
            raise ValueError("order is not reflexive")

    @classmethod
    def build(cls, blocks: Iterable[Iterable[int]], order: Iterable[tuple[int, int]] = ()) -> "PartitionPair":
        """Create a pair, closing ``order`` reflexively and transitively."""
        blocks = tuple(frozenset(b) for b in blocks)
        return cls(blocks, _close(len(blocks), order))

    @classmethod
    def from_block_order(cls, blocks: Iterable[frozenset[int]],
                         edges: Iterable[tuple[frozenset[int], frozenset[int]]]) -> "PartitionPair":
        """Create a canonical pair from blocks and order edges named by block content."""
        blocks = sorted((frozenset(b) for b in blocks), key=min)
        idx = {b: i for i, b in enumerate(blocks)}
        return cls.build(blocks, ((idx[x], idx[y]) for x, y in edges))

    @property
    def states(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    @cached_property
    def block_of(self) -> dict[int, int]:
        return {s: i for i, b in enumerate(self.blocks) for s in b}

    @cached_property
    def up(self) -> tuple[frozenset[int], ...]:
        n = len(self.blocks)
        ups = [set() for _ in range(n)]
        for i, j in self.order:
            ups[i].add(j)
        return tuple(frozenset(u) for u in ups)

    @cached_property
    def upsets(self) -> tuple[frozenset[int], ...]:
        """Block sets whose masses must be compared to decide the lifted order.

        The principal up-closure of every block comes first, in block order.
        They are followed by each non-principal up-set whose comparability graph
        is connected, excluding the full block set. Any other up-set is a disjoint
        union of these, so its inequality is implied.
        """
        principal = list(self.up)
        full = frozenset(range(len(self.blocks)))
        seen = set(principal)
        extra = []
        frontier = list(principal)
        while frontier:
            nxt = []
            for u in frontier:
                for c in principal:
                    if c & u and not c <= u:
                        w = u | c
                        if w not in seen:
                            seen.add(w)
                            nxt.append(w)
                            if w != full:
                                extra.append(w)
            frontier = nxt
        extra.sort(key=lambda u: (len(u), sorted(u)))
        return tuple(principal) + tuple(extra)

    def key(self):
        """Representation-independent identity: blocks as sets, order by block content."""
        return (frozenset(self.blocks),
                frozenset((self.blocks[i], self.blocks[j]) for i, j in self.order))

    def canonical(self) -> "PartitionPair":
        return PartitionPair.from_block_order(
            self.blocks, ((self.blocks[i], self.blocks[j]) for i, j in self.order))

    def same_as(self, other: "PartitionPair") -> bool:
        return self.key() == other.key()


class MassTable:
    """Memoised masses ``delta(state, a1, a2)(U)`` for every up-set ``U`` of one snapshot."""

    def __init__(self, p: PartitionPair, g: GameStructure):
        self.pair = p
        self.game = g
        self._state_sets = [frozenset().union(*(p.blocks[b] for b in u)) for u in p.upsets]
        self._cache: dict[tuple[int, int, int, int], Fraction] = {}

    def get(self, s: int, a1: int, a2: int, u: int) -> Fraction:
        key = (s, a1, a2, u)
        v = self._cache.get(key)
        if v is None:
            v = self.game.delta(s, a1, a2).mass(self._state_sets[u])
            self._cache[key] = v
        return v


def initial_partition(g: GameStructure) -> PartitionPair:
    """Labelling partition with the identity order; blocks ordered by first member."""
    groups: dict[frozenset[str], list[int]] = {}
    for s in range(g.n_states):
        groups.setdefault(g.labels[s], []).append(s)
    return PartitionPair.build(groups.values())


def project(d: Distribution, p: PartitionPair) -> Distribution:
    acc: dict[int, Fraction] = {}
    for s, v in d.entries:
        b = p.block_of[s]
        acc[b] = acc.get(b, Fraction(0)) + v
    return Distribution.from_mapping(acc)


def up_closure(p: PartitionPair, b: int) -> frozenset[int]:
    return p.up[b]


def lifted_leq(d1: Distribution, d2: Distribution, p: PartitionPair,
               principal_only: bool = False) -> bool:
    """Whether block distribution ``d1`` is below ``d2`` in the lifted block order.

    Compares masses on every constraining up-set. With ``principal_only`` only
    the single-block up-closures are compared. That test is weaker: it accepts
    some pairs that admit no weight function.
    """
    sets = p.up if principal_only else p.upsets
    return all(d1.mass(u) <= d2.mass(u) for u in sets)


def weight_witness(d1: Distribution, d2: Distribution,
                   rel: Iterable[tuple[int, int]]) -> Optional[dict[tuple[int, int], Fraction]]:
    """Find a weight function coupling ``d1`` and ``d2`` inside ``rel``, or ``None``."""
    left, right = d1.support(), d2.support()
    pairs = sorted({(x, y) for x, y in rel if x in left and y in right})
    nv = len(pairs)
    rows = []
    for x in sorted(left):
        rows.append((tuple(Fraction(int(px == x)) for px, _ in pairs), "=", d1[x]))
    for y in sorted(right):
        rows.append((tuple(Fraction(int(py == y)) for _, py in pairs), "=", d2[y]))
    sol = feasible(LinearProgram(nv, tuple(rows), ((Fraction(0), Fraction(1)),) * nv))
    if sol is None:
        return None
    return {xy: v for xy, v in zip(pairs, sol) if v}


def pair_leq(p1: PartitionPair, p2: PartitionPair) -> bool:
    """``p1 <= p2``: ``p1`` is finer and its order is inside the order ``p2`` induces."""
    if p1.states != p2.states:
        return False
    owner = []
    for b in p1.blocks:
        container = p2.block_of[next(iter(b))]
        if not b <= p2.blocks[container]:
            return False
        owner.append(container)
    return all((owner[i], owner[j]) in p2.order for i, j in p1.order)


def induced_relation(p: PartitionPair) -> frozenset[tuple[int, int]]:
    return frozenset((s, t) for i, j in p.order for s in p.blocks[i] for t in p.blocks[j])


def pair_to_document(p: PartitionPair, g: GameStructure) -> dict:
    c = p.canonical()
    return {
        "blocks": [[g.states[s] for s in sorted(b)] for b in c.blocks],
        "order": [list(e) for e in sorted(c.order)],
    }


def pair_from_document(doc: Mapping, g: GameStructure) -> PartitionPair:
    try:
        blocks = [[g.state_index(s) for s in b] for b in doc["blocks"]]
        order = [(int(i), int(j)) for i, j in doc["order"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise PGSError(f"malformed partition-pair document: {exc}") from None
    p = PartitionPair.build(blocks, order)
    if p.states != frozenset(range(g.n_states)):
        raise PGSError("partition does not cover the state space")
    return p
