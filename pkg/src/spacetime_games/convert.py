"""Conversion of spacetime games to extensive (tree) and strategic form, plus DOT export."""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .model import Outcome, SpacetimeGame
from .outcomes import induced_outcome, is_active


class BadOrder(ValueError):
    """The requested branching order is not a linear extension of the causal DAG."""


@dataclass(frozen=True)
class InformationSet:
    id: str
    point: str
    player: str
    actions: tuple[str, ...]
    known_ancestors: Mapping[str, str]
    nodes: tuple[int, ...] = ()


@dataclass(frozen=True)
class TreeNode:
    index: int
    history: Outcome
    point: str | None = None
    info_set: str | None = None
    children: tuple[tuple[str, int], ...] = ()
    payoff: tuple[Fraction, ...] | None = None

    @property
    def is_leaf(self) -> bool:
        return self.point is None


@dataclass(frozen=True)
class ExtensiveGame:
    """A game tree whose levels follow ``order``; node 0 is the root."""

    game: SpacetimeGame
    order: tuple[str, ...]
    nodes: tuple[TreeNode, ...]
    info_sets: tuple[InformationSet, ...]

    @property
    def players(self) -> tuple[str, ...]:
        return self.game.players

    @cached_property
    def info_set_map(self) -> dict[str, InformationSet]:
        return {s.id: s for s in self.info_sets}

    @property
    def leaves(self) -> list[TreeNode]:
        return [n for n in self.nodes if n.is_leaf]

    @property
    def level_players(self) -> list[str]:
        """Players in branching order, each listed once."""
        return list(dict.fromkeys(self.game.point(pid).player for pid in self.order))

    @property
    def perfect_information(self) -> bool:
        return all(len(s.nodes) <= 1 for s in self.info_sets)


def _check_order(g: SpacetimeGame, order: Sequence[str]) -> tuple[str, ...]:
    order = tuple(order)
    if sorted(order) != sorted(g.point_ids) or len(set(order)) != len(order):
        raise BadOrder("order must list every decision point exactly once")
    seen: set[str] = set()
    for pid in order:
        missing = g.ancestors[pid] - seen
        if missing:
            raise BadOrder(f"{pid} placed before its causal ancestor(s) {', '.join(sorted(missing))}")
        seen.add(pid)
    return order


def to_extensive(g: SpacetimeGame, order: Sequence[str] | None = None) -> ExtensiveGame:
    """Unfold a spacetime game into a tree with information sets.

    Points are branched in ``order`` (default: the game's topological order,
    ties broken by declaration order); a point inactive on a branch is
    skipped there. Tree nodes share an information set when they branch the
    same point and agree on the values of all its causal ancestors.
    """
    order = g.topological_order if order is None else _check_order(g, order)
    nodes: list[TreeNode | None] = []
    set_members: dict[tuple[str, tuple], list[int]] = {}

    def build(start: int, assigned: dict[str, str]) -> int:
        index = len(nodes)
        nodes.append(None)
        i = start
        while i < len(order) and not is_active(g, assigned, order[i]):
            i += 1
        history = Outcome(assigned)
        if i == len(order):
            nodes[index] = TreeNode(index, history, payoff=g.payoffs.get(history))
            return index
        pid = order[i]
        knowledge = tuple((a, assigned.get(a)) for a in sorted(g.ancestors[pid]))
        set_members.setdefault((pid, knowledge), []).append(index)
        children = []
        for action in g.point(pid).actions:
            assigned[pid] = action
            children.append((action, build(i + 1, assigned)))
        del assigned[pid]
        nodes[index] = TreeNode(index, history, pid, None, tuple(children))
        return index

    build(0, {})

    # Each point ends up with a single knowledge state: every causal ancestor
    # of an active point is pinned by the chain of contingency labels.
    info_sets = []
    by_point: dict[str, list[tuple[tuple, list[int]]]] = {}
    for (pid, knowledge), members in set_members.items():
        by_point.setdefault(pid, []).append((knowledge, members))
    for pid in g.point_ids:
        p = g.point(pid)
        variants = by_point.get(pid, [((), [])])
        for k, (knowledge, members) in enumerate(variants):
            set_id = pid if len(variants) == 1 else f"{pid}#{k}"
            known = {a: v for a, v in knowledge if v is not None}
            info_sets.append(InformationSet(set_id, pid, p.player, p.actions, known, tuple(members)))
            for m in members:
                node = nodes[m]
                nodes[m] = TreeNode(node.index, node.history, node.point, set_id, node.children)
    return ExtensiveGame(g, tuple(order), tuple(nodes), tuple(info_sets))


@dataclass(frozen=True)
class StrategicGame:
    """Strategic form: each strategy assigns an action to every information set of one player.

    Profiles are tuples of strategy indices, one per player.
    """

    game: SpacetimeGame
    info_sets: tuple[tuple[str, ...], ...]
    strategies: tuple[tuple[tuple[str, ...], ...], ...]
    outcomes: Mapping[tuple[int, ...], Outcome] = field(repr=False)

    @property
    def players(self) -> tuple[str, ...]:
        return self.game.players

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.strategies)

    def profiles(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(n) for n in self.sizes))

    def payoff(self, profile: tuple[int, ...]) -> tuple[Fraction, ...]:
        return self.game.payoffs[self.outcomes[profile]]

    def strategy(self, player: int, index: int) -> dict[str, str]:
        return dict(zip(self.info_sets[player], self.strategies[player][index]))

    def assignment(self, profile: tuple[int, ...]) -> dict[str, str]:
        """Total map from information set to action for a profile."""
        result: dict[str, str] = {}
        for player, index in enumerate(profile):
            result.update(self.strategy(player, index))
        return result

    def index_of(self, assignment: Mapping[str, str]) -> tuple[int, ...]:
        return tuple(
            strategies.index(tuple(assignment[s] for s in sets))
            for sets, strategies in zip(self.info_sets, self.strategies)
        )


def to_strategic(g: SpacetimeGame) -> StrategicGame:
    sets = tuple(tuple(p.id for p in g.points if p.player == player) for player in g.players)
    strategies = tuple(
        tuple(itertools.product(*(g.point(pid).actions for pid in player_sets))) for player_sets in sets
    )
    outcomes = {}
    for profile in itertools.product(*(range(len(s)) for s in strategies)):
        assignment = {}
        for player, index in enumerate(profile):
            assignment.update(zip(sets[player], strategies[player][index]))
        outcomes[profile] = induced_outcome(g, assignment)
    return StrategicGame(g, sets, strategies, outcomes)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _label(*lines: str) -> str:
    body = "\\n".join(_quote(line)[1:-1] for line in lines)
    return f'"{body}"'


def _fmt_payoff(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def to_dot(obj: SpacetimeGame | ExtensiveGame) -> str:
    """Graphviz text for a spacetime DAG or a game tree with dashed information-set links."""
    if isinstance(obj, SpacetimeGame):
        lines = ["digraph spacetime {"]
        for p in obj.points:
            lines.append(f"  {_quote(p.id)} [label={_label(p.id, p.player)}];")
        for p in obj.points:
            for e in p.parents:
                lines.append(f"  {_quote(e.parent)} -> {_quote(p.id)} [label={_quote(e.action)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    lines = ["digraph tree {"]
    for node in obj.nodes:
        name = _quote(f"t{node.index}")
        if node.is_leaf:
            lines.append(f"  {name} [shape=box, label={_quote(_fmt_payoff(node.payoff or ()))}];")
        else:
            player = obj.game.point(node.point).player
            lines.append(f"  {name} [label={_label(node.point, player)}];")
    for node in obj.nodes:
        for action, child in node.children:
            lines.append(f"  {_quote(f't{node.index}')} -> {_quote(f't{child}')} [label={_quote(action)}];")
    for s in obj.info_sets:
        for a, b in zip(s.nodes, s.nodes[1:]):
            lines.append(
                f"  {_quote(f't{a}')} -> {_quote(f't{b}')} [style=dashed, dir=none, constraint=false];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
