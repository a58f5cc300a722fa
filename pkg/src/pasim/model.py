"""Probabilistic game structures: data model, document format, mixed-action steps."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "PGSError",
    "Distribution",
    "MixedAction",
    "GameStructure",
    "parse_rational",
    "parse_pgs",
    "load_pgs",
    "dump_pgs",
    "to_document",
    "step_mixed",
    "successor_set",
]

_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class PGSError(ValueError):
    """Raised for malformed or invalid game structure documents."""


def parse_rational(text) -> Fraction:
    """Parse ``INT`` or ``INT/POSINT`` into an exact fraction.

    JSON integers are accepted as well; floats and decimals never are.
    """
    if isinstance(text, bool):
        raise PGSError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise PGSError(f"not a rational: {text!r}")
    m = _RATIONAL.match(text)
    if m is None:
        raise PGSError(f"not a rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is None:
        return Fraction(int(num))
    if int(den) == 0:
        raise PGSError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den))


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Distribution:
    """Exact probability distribution over integer ids (states, blocks, actions).

    ``entries`` holds ``(id, mass)`` pairs sorted by id; zero masses are dropped.
    """

    entries: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        total = sum(v for _, v in self.entries)
        if total != 1:
            raise PGSError(f"distribution mass {total} != 1")
        for k, v in self.entries:
            if not 0 < v <= 1:
                raise PGSError(f"mass {v} of {k} outside (0, 1]")

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Fraction]) -> "Distribution":
        acc: dict[int, Fraction] = {}
        for k, v in mapping.items():
            v = Fraction(v)
            if v < 0:
                raise PGSError(f"negative mass {v} at {k}")
            if v:
                acc[k] = acc.get(k, Fraction(0)) + v
        return cls(tuple(sorted(acc.items())))

    @classmethod
    def point(cls, k: int) -> "Distribution":
        return cls(((k, Fraction(1)),))

    def __getitem__(self, k: int) -> Fraction:
        for key, v in self.entries:
            if key == k:
                return v
        return Fraction(0)

    def support(self) -> frozenset[int]:
        return frozenset(k for k, _ in self.entries)

    def mass(self, ids: Iterable[int]) -> Fraction:
        ids = ids if isinstance(ids, (set, frozenset)) else set(ids)
        return sum((v for k, v in self.entries if k in ids), Fraction(0))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.entries)

    def __repr__(self):
        body = ", ".join(f"{k}: {format_rational(v)}" for k, v in self.entries)
        return f"Distribution({{{body}}})"


@dataclass(frozen=True)
class MixedAction:
    player: int
    weights: Distribution

    @classmethod
    def point(cls, player: int, action: int) -> "MixedAction":
        return cls(player, Distribution.point(action))

    @classmethod
    def of(cls, player: int, mapping: Mapping[int, Fraction]) -> "MixedAction":
        return cls(player, Distribution.from_mapping(mapping))


@dataclass(frozen=True)
class GameStructure:
    """A finite two-player probabilistic game structure.

    States and actions are referred to by dense integer indices in declaration
    order; ``transitions[s][a1][a2]`` is the successor distribution.
    """

    states: tuple[str, ...]
    initial: int
    labels: tuple[frozenset[str], ...]
    actions1: tuple[str, ...]
    actions2: tuple[str, ...]
    transitions: tuple[tuple[tuple[Distribution, ...], ...], ...]
    propositions: tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.states)
        if n == 0:
            raise PGSError("no states declared")
        if len(set(self.states)) != n:
            raise PGSError("duplicate state name")
        if not self.actions1 or not self.actions2:
            raise PGSError("empty action alphabet")
        if not 0 <= self.initial < n:
            raise PGSError("initial state out of range")
        if len(self.labels) != n or len(self.transitions) != n:
            raise PGSError("per-state tables have the wrong length")
        for row in self.transitions:
            if len(row) != len(self.actions1) or any(len(r) != len(self.actions2) for r in row):
                raise PGSError("transition table is not total")
            for r in row:
                for d in r:
                    if any(not 0 <= k < n for k in d.support()):
                        raise PGSError("distribution targets an unknown state")

    @property
    def n_states(self) -> int:
        return len(self.states)

    def state_index(self, name: str) -> int:
        try:
            return self.states.index(name)
        except ValueError:
            raise PGSError(f"unknown state {name!r}") from None

    def delta(self, s: int, a1: int, a2: int) -> Distribution:
        return self.transitions[s][a1][a2]

    def swapped(self) -> "GameStructure":
        """The same game seen from player 2: action alphabets and roles exchanged."""
        trans = tuple(
            tuple(tuple(self.transitions[s][a1][a2] for a1 in range(len(self.actions1)))
                  for a2 in range(len(self.actions2)))
            for s in range(self.n_states)
        )
        return GameStructure(self.states, self.initial, self.labels, self.actions2,
                             self.actions1, trans, self.propositions)

    def for_player(self, player: int) -> "GameStructure":
        if player == 1:
            return self
        if player == 2:
            return self.swapped()
        raise ValueError(f"player must be 1 or 2, got {player!r}")


def _require(doc: Mapping, key: str, kind):
    if key not in doc:
        raise PGSError(f"missing field {key!r}")
    val = doc[key]
    if not isinstance(val, kind):
        raise PGSError(f"field {key!r} has the wrong type")
    return val


def _names(doc: Mapping, key: str) -> tuple[str, ...]:
    vals = _require(doc, key, list)
    if not all(isinstance(v, str) for v in vals):
        raise PGSError(f"field {key!r} must be a list of strings")
    if len(set(vals)) != len(vals):
        raise PGSError(f"duplicate entry in {key!r}")
    return tuple(vals)


def from_document(doc) -> GameStructure:
    """Build a validated :class:`GameStructure` from a decoded document."""
    if not isinstance(doc, dict):
        raise PGSError("document must be an object")
    states = _names(doc, "states")
    actions1 = _names(doc, "actions1")
    actions2 = _names(doc, "actions2")
    if not states:
        raise PGSError("field 'states': no states declared")
    if not actions1:
        raise PGSError("field 'actions1': empty action alphabet")
    if not actions2:
        raise PGSError("field 'actions2': empty action alphabet")
    sidx = {s: i for i, s in enumerate(states)}
    a1idx = {a: i for i, a in enumerate(actions1)}
    a2idx = {a: i for i, a in enumerate(actions2)}

    initial = _require(doc, "initial", str)
    if initial not in sidx:
        raise PGSError(f"field 'initial': unknown state {initial!r}")

    raw_labels = doc.get("labels", {})
    if not isinstance(raw_labels, dict):
        raise PGSError("field 'labels' has the wrong type")
    props = _names(doc, "propositions") if "propositions" in doc else None
    labels: list[frozenset[str]] = [frozenset()] * len(states)
    for name, plist in raw_labels.items():
        if name not in sidx:
            raise PGSError(f"field 'labels': unknown state {name!r}")
        if not isinstance(plist, list) or not all(isinstance(p, str) for p in plist):
            raise PGSError(f"field 'labels': entry for {name!r} must be a list of strings")
        if props is not None:
            for p in plist:
                if p not in props:
                    raise PGSError(f"field 'labels': undeclared proposition {p!r}")
        labels[sidx[name]] = frozenset(plist)
    if props is None:
        props = tuple(sorted(set().union(*labels)))

    table: dict[tuple[int, int, int], Distribution] = {}
    for rec in _require(doc, "transitions", list):
        if not isinstance(rec, dict):
            raise PGSError("field 'transitions': records must be objects")
        try:
            src, a, b = rec["from"], rec["a1"], rec["a2"]
            dist = rec["dist"]
        except KeyError as exc:
            raise PGSError(f"field 'transitions': record missing {exc.args[0]!r}") from None
        where = f"transition ({src}, {a}, {b})"
        if src not in sidx:
            raise PGSError(f"{where}: unknown state {src!r}")
        if a not in a1idx:
            raise PGSError(f"{where}: unknown action1 {a!r}")
        if b not in a2idx:
            raise PGSError(f"{where}: unknown action2 {b!r}")
        if not isinstance(dist, dict):
            raise PGSError(f"{where}: 'dist' must be an object")
        key = (sidx[src], a1idx[a], a2idx[b])
        if key in table:
            raise PGSError(f"{where}: duplicate triple")
        masses = {}
        for tgt, val in dist.items():
            if tgt not in sidx:
                raise PGSError(f"{where}: unknown target state {tgt!r}")
            try:
                masses[sidx[tgt]] = parse_rational(val)
            except PGSError as exc:
                raise PGSError(f"{where}: {exc}") from None
        try:
            table[key] = Distribution.from_mapping(masses)
        except PGSError as exc:
            raise PGSError(f"{where}: distribution mass != 1 ({exc})") from None

    trans = []
    for s in range(len(states)):
        row = []
        for a in range(len(actions1)):
            cells = []
            for b in range(len(actions2)):
                if (s, a, b) not in table:
                    raise PGSError(
                        f"transition ({states[s]}, {actions1[a]}, {actions2[b]}): missing triple")
                cells.append(table[(s, a, b)])
            row.append(tuple(cells))
        trans.append(tuple(row))
    return GameStructure(states, sidx[initial], tuple(labels), actions1, actions2,
                         tuple(trans), tuple(props))


def parse_pgs(text: str) -> GameStructure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PGSError(f"syntax error at position {exc.pos}: {exc.msg}") from None
    return from_document(doc)


def load_pgs(path) -> GameStructure:
    with open(path, encoding="utf-8") as fh:
        return parse_pgs(fh.read())


def to_document(g: GameStructure) -> dict:
    return {
        "states": list(g.states),
        "initial": g.states[g.initial],
        "propositions": list(g.propositions),
        "labels": {g.states[s]: sorted(g.labels[s]) for s in range(g.n_states)},
        "actions1": list(g.actions1),
        "actions2": list(g.actions2),
        "transitions": [
            {
                "from": g.states[s],
                "a1": g.actions1[a],
                "a2": g.actions2[b],
                "dist": {g.states[k]: format_rational(v) for k, v in g.delta(s, a, b).entries},
            }
            for s in range(g.n_states)
            for a in range(len(g.actions1))
            for b in range(len(g.actions2))
        ],
    }


def dump_pgs(g: GameStructure) -> str:
    return json.dumps(to_document(g), indent=2) + "\n"


def step_mixed(g: GameStructure, s: int, p1: MixedAction, p2: MixedAction) -> Distribution:
    """Successor distribution of ``s`` when both players play mixed actions."""
    acc: dict[int, Fraction] = {}
    for a1, w1 in p1.weights.entries:
        for a2, w2 in p2.weights.entries:
            w = w1 * w2
            for t, v in g.delta(s, a1, a2).entries:
                acc[t] = acc.get(t, Fraction(0)) + w * v
    return Distribution.from_mapping(acc)


def successor_set(g: GameStructure, s: int, p1: MixedAction) -> list[Distribution]:
    """One successor distribution per deterministic player-2 action, in alphabet order."""
    return [step_mixed(g, s, p1, MixedAction.point(2, b)) for b in range(len(g.actions2))]


def make_game(states: Sequence[str], labels: Mapping[str, Iterable[str]],
              actions1: Sequence[str], actions2: Sequence[str],
              delta: Mapping[tuple[str, str, str], Mapping[str, str | int | Fraction]],
              initial: str | None = None) -> GameStructure:
    """Convenience constructor from names, used by fixtures and generators."""
    doc = {
        "states": list(states),
        "initial": initial if initial is not None else states[0],
        "labels": {s: sorted(labels.get(s, ())) for s in states},
        "actions1": list(actions1),
        "actions2": list(actions2),
        "transitions": [
            {"from": s, "a1": a, "a2": b,
             "dist": {k: (format_rational(v) if isinstance(v, Fraction) else v)
                      for k, v in dist.items()}}
            for (s, a, b), dist in delta.items()
        ],
    }
    return from_document(doc)
