"""Spacetime game data model, causal geometry and structural validation."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Union

Rational = Union[Fraction, int]

# Characters that would make the canonical outcome key ambiguous.
_RESERVED = frozenset(",= \t\n\r\"")


class CycleError(ValueError):
    """The contingency edges of a game do not form a DAG."""


class DuplicatePosition(ValueError):
    """Two decision points sit at the same spacetime position."""


class GameError(ValueError):
    """A game failed validation; ``report`` carries the violations."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations))


def as_fraction(value: Rational | str) -> Fraction:
    if isinstance(value, float):
        raise TypeError("payoffs must be exact rationals, not floats")
    return Fraction(value)


@dataclass(frozen=True, order=True)
class Position:
    """A point in Minkowski spacetime, light speed 1."""

    t: Fraction
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)
    z: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("t", "x", "y", "z"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    def precedes(self, other: Position) -> bool:
        """True if self lies in the past light cone of other (boundary included, tip excluded)."""
        dt = other.t - self.t
        if dt <= 0:
            return False
        return dt * dt >= (other.x - self.x) ** 2 + (other.y - self.y) ** 2 + (other.z - self.z) ** 2


@dataclass(frozen=True)
class ContingencyEdge:
    parent: str
    action: str


@dataclass(frozen=True)
class DecisionPoint:
    id: str
    player: str
    actions: tuple[str, ...]
    parents: tuple[ContingencyEdge, ...] = ()
    position: Position | None = None

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(self.actions))
        object.__setattr__(
            self,
            "parents",
            tuple(
                sorted(
                    (e if isinstance(e, ContingencyEdge) else ContingencyEdge(*e) for e in self.parents),
                    key=lambda e: (e.parent, e.action),
                )
            ),
        )


class Outcome(Mapping):
    """A partial assignment of actions to decision points.

    Points missing from the mapping are undefined. Outcomes hash and
    compare by their canonical key, ``"id=action"`` pairs sorted by point
    id and joined with commas.
    """

    __slots__ = ("_items", "_map", "_key")

    def __init__(self, assignment: Mapping[str, str] | Iterable[tuple[str, str]] = ()):
        items = dict(assignment)
        self._items = tuple(sorted(items.items()))
        self._map = dict(self._items)
        self._key = ",".join(f"{k}={v}" for k, v in self._items)

    @classmethod
    def parse(cls, key: str) -> Outcome:
        if not key:
            return cls()
        return cls(tuple(part.split("=", 1)) for part in key.split(","))

    @property
    def key(self) -> str:
        return self._key

    def __getitem__(self, point: str) -> str:
        return self._map[point]

    def __iter__(self) -> Iterator[str]:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return hash(self._key)

    def __eq__(self, other) -> bool:
        if isinstance(other, Outcome):
            return self._key == other._key
        if isinstance(other, Mapping):
            return self._map == dict(other)
        return NotImplemented

    def __lt__(self, other: Outcome) -> bool:
        return self._key < other._key

    def __repr__(self) -> str:
        return f"Outcome({self._key!r})"

    def with_action(self, point: str, action: str) -> Outcome:
        return Outcome({**self._map, point: action})


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: str
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.kind}: {self.subject}"
        return f"{text} ({self.detail})" if self.detail else text


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    warnings: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __bool__(self) -> bool:
        # Truthy when there is something to report, like a non-empty list.
        return bool(self.violations)


@dataclass(frozen=True)
class SpacetimeGame:
    """Players, decision points with contingency edges, and a payoff table.

    ``payoffs`` maps each outcome to one exact rational per player, in the
    order of ``players``. Plain dicts are accepted as keys and ints/strings
    as values; both are normalized on construction.
    """

    players: tuple[str, ...]
    points: tuple[DecisionPoint, ...]
    payoffs: Mapping[Outcome, tuple[Fraction, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "players", tuple(self.players))
        object.__setattr__(self, "points", tuple(self.points))
        table = {}
        for key, values in self.payoffs.items():
            outcome = key if isinstance(key, Outcome) else Outcome(key)
            table[outcome] = tuple(as_fraction(v) for v in values)
        object.__setattr__(self, "payoffs", table)

    # -- lookups -----------------------------------------------------------

    @cached_property
    def point_map(self) -> dict[str, DecisionPoint]:
        return {p.id: p for p in self.points}

    @cached_property
    def point_ids(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.points)

    def point(self, point_id: str) -> DecisionPoint:
        return self.point_map[point_id]

    def player_index(self, player: str) -> int:
        return self.players.index(player)

    def payoff(self, outcome: Outcome) -> tuple[Fraction, ...]:
        return self.payoffs[outcome]

    def utility(self, outcome: Outcome, player: str) -> Fraction:
        return self.payoffs[outcome][self.players.index(player)]

    def with_payoffs(self, payoffs) -> SpacetimeGame:
        return SpacetimeGame(self.players, self.points, payoffs)

    # -- causal structure --------------------------------------------------

    @cached_property
    def children(self) -> dict[str, tuple[str, ...]]:
        kids: dict[str, list[str]] = {p.id: [] for p in self.points}
        for p in self.points:
            for edge in p.parents:
                kids.setdefault(edge.parent, []).append(p.id)
        return {k: tuple(v) for k, v in kids.items()}

    @cached_property
    def topological_order(self) -> tuple[str, ...]:
        """Kahn's algorithm; ties broken by declaration order."""
        indegree = {p.id: len({e.parent for e in p.parents}) for p in self.points}
        position = {pid: i for i, pid in enumerate(self.point_ids)}
        ready = sorted((pid for pid, d in indegree.items() if d == 0), key=position.__getitem__)
        order = []
        while ready:
            current = ready.pop(0)
            order.append(current)
            released = []
            for child in dict.fromkeys(self.children.get(current, ())):
                indegree[child] -= 1
                if indegree[child] == 0:
                    released.append(child)
            ready = sorted(ready + released, key=position.__getitem__)
        if len(order) != len(self.points):
            stuck = [pid for pid in self.point_ids if pid not in order]
            raise CycleError(f"cycle among {', '.join(stuck)}")
        return tuple(order)

    @cached_property
    def ancestors(self) -> dict[str, frozenset[str]]:
        """Transitive closure of the edge relation, per point."""
        result: dict[str, frozenset[str]] = {}
        for pid in self.topological_order:
            acc: set[str] = set()
            for edge in self.point_map[pid].parents:
                acc.add(edge.parent)
                acc |= result[edge.parent]
            result[pid] = frozenset(acc)
        return result

    @cached_property
    def descendants(self) -> dict[str, frozenset[str]]:
        result: dict[str, set[str]] = {pid: set() for pid in self.point_ids}
        for pid, ups in self.ancestors.items():
            for up in ups:
                result[up].add(pid)
        return {k: frozenset(v) for k, v in result.items()}

    @cached_property
    def has_positions(self) -> bool:
        return bool(self.points) and all(p.position is not None for p in self.points)

    def causal_pairs(self) -> frozenset[tuple[str, str]]:
        """(earlier, later) pairs of the causal order: geometric if positions exist, else the DAG closure."""
        if self.has_positions:
            return causal_order_from_positions(self.points)
        return frozenset((a, pid) for pid, ups in self.ancestors.items() for a in ups)

    @property
    def outcomes(self) -> tuple[Outcome, ...]:
        from .outcomes import enumerate_outcomes

        return enumerate_outcomes(self)

    def is_root(self, point_id: str) -> bool:
        return not self.point_map[point_id].parents


def causal_order_from_positions(points: Iterable[DecisionPoint]) -> frozenset[tuple[str, str]]:
    """Return every (earlier, later) pair of points ordered by light-cone membership.

    Lightlike separation counts as ordered; a point is never ordered with
    itself. Raises ``DuplicatePosition`` if two points coincide.
    """
    points = list(points)
    seen: dict[Position, str] = {}
    for p in points:
        if p.position is None:
            raise ValueError(f"point {p.id} has no position")
        if p.position in seen:
            raise DuplicatePosition(f"{seen[p.position]} and {p.id} share position {p.position}")
        seen[p.position] = p.id
    return frozenset(
        (a.id, b.id) for a, b in itertools.permutations(points, 2) if a.position.precedes(b.position)
    )


def _bad_identifier(name: str) -> bool:
    return any(ch in _RESERVED for ch in name)


def validate_game(g: SpacetimeGame) -> ValidationReport:
    """Check every structural invariant of a spacetime game.

    Violations are collected rather than raised; an empty report means the
    game is valid. Dead points (active in no outcome) are warnings only.
    """
    from .outcomes import enumerate_outcomes

    found: list[Violation] = []
    warnings: list[Violation] = []

    if not g.players:
        found.append(Violation("no players", "game"))
    if not g.points:
        found.append(Violation("no points", "game"))
    seen_players: set[str] = set()
    for player in g.players:
        if not player:
            found.append(Violation("empty identifier", "player"))
        elif _bad_identifier(player):
            found.append(Violation("bad identifier", player))
        if player in seen_players:
            found.append(Violation("duplicate player", player))
        seen_players.add(player)

    ids: set[str] = set()
    for p in g.points:
        if not p.id:
            found.append(Violation("empty identifier", "point"))
        elif _bad_identifier(p.id):
            found.append(Violation("bad identifier", p.id))
        if p.id in ids:
            found.append(Violation("duplicate point", p.id))
        ids.add(p.id)
    for p in g.points:
        if p.player not in seen_players:
            found.append(Violation("unknown player", p.id, p.player))
        if len(p.actions) < 2:
            found.append(Violation("too few actions", p.id, f"{len(p.actions)} action(s)"))
        if len(set(p.actions)) != len(p.actions):
            found.append(Violation("duplicate action", p.id))
        for action in p.actions:
            if not action or _bad_identifier(action):
                found.append(Violation("bad identifier", p.id, repr(action)))
        parent_ids = [e.parent for e in p.parents]
        if len(set(parent_ids)) != len(parent_ids):
            found.append(Violation("duplicate edge", p.id))
        for edge in p.parents:
            if edge.parent == p.id:
                found.append(Violation("self edge", p.id))
            elif edge.parent not in ids:
                found.append(Violation("unknown parent", p.id, edge.parent))
            elif edge.action not in g.point(edge.parent).actions:
                found.append(
                    Violation("bad label", f"{edge.parent}->{p.id}", f"{edge.action!r} not an action of {edge.parent}")
                )

    structural_ok = not found
    if structural_ok:
        try:
            g.topological_order
        except CycleError as exc:
            found.append(Violation("cycle", "edges", str(exc).removeprefix("cycle among ")))
            structural_ok = False

    if structural_ok:
        outcomes = enumerate_outcomes(g)
        expected = set(outcomes)
        present = set(g.payoffs)
        for o in sorted(expected - present):
            found.append(Violation("payoff table incomplete", o.key or "<empty>"))
        for o in sorted(present - expected):
            found.append(Violation("extra payoff", o.key))
        for o in sorted(present & expected):
            if len(g.payoffs[o]) != len(g.players):
                found.append(Violation("payoff arity", o.key, f"{len(g.payoffs[o])} values"))
        reached = set().union(*(set(o) for o in outcomes)) if outcomes else set()
        for pid in g.point_ids:
            if pid not in reached:
                warnings.append(Violation("dead point", pid, "active in no outcome"))

    positioned = [p for p in g.points if p.position is not None]
    if positioned and len(positioned) != len(g.points):
        warnings.append(Violation("incomplete positions", "game", "geometry not cross-checked"))
    elif positioned and structural_ok:
        found.extend(_geometry_violations(g))

    return ValidationReport(tuple(found), tuple(warnings))


def _geometry_violations(g: SpacetimeGame) -> list[Violation]:
    try:
        geometric = causal_order_from_positions(g.points)
    except DuplicatePosition as exc:
        return [Violation("duplicate position", "points", str(exc))]
    found = []
    for p in g.points:
        for edge in p.parents:
            if (edge.parent, p.id) not in geometric:
                found.append(Violation("acausal edge", f"{edge.parent}->{p.id}", "not future-directed causal"))
    for earlier, later in sorted(geometric):
        if earlier not in g.ancestors[later]:
            found.append(Violation("missing causal edge", f"{earlier}->{later}", "causally ordered but not linked"))
    return found


def ensure_valid(g: SpacetimeGame) -> SpacetimeGame:
    report = validate_game(g)
    if not report.ok:
        raise GameError(report)
    return g


@dataclass(frozen=True)
class GenericityResult:
    generic: bool
    ties: tuple[tuple[str, Outcome, Outcome], ...] = ()

    def __bool__(self) -> bool:
        return self.generic


def genericity_check(g: SpacetimeGame) -> GenericityResult:
    """Per-player payoff distinctness; cross-player ties are allowed."""
    ties = []
    for i, player in enumerate(g.players):
        by_value: dict[Fraction, list[Outcome]] = {}
        for outcome in sorted(g.payoffs):
            by_value.setdefault(g.payoffs[outcome][i], []).append(outcome)
        for group in by_value.values():
            ties.extend((player, a, b) for a, b in itertools.combinations(group, 2))
    return GenericityResult(not ties, tuple(ties))
