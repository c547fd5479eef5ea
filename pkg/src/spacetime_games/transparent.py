"""Perfectly Transparent Equilibrium by iterated maximin elimination.

Each round works on the outcomes that survived so far. For every point
that is active in all survivors, the point's maximin is the best payoff
its player can guarantee by picking one action. Every survivor that gives
some such player less than that guarantee is discarded, all points at once
against the round-start survivor set. Rounds repeat until nothing changes.
The Perfect Prediction Equilibrium is the same procedure on a
perfect-information tree.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from .convert import ExtensiveGame
from .model import ContingencyEdge, DecisionPoint, Outcome, SpacetimeGame, genericity_check
from .nash import ImperfectInformation


class NoSurvivors(ValueError):
    pass


class UnknownOutcome(KeyError):
    pass


@dataclass(frozen=True)
class EliminationRound:
    index: int
    certainly_active: tuple[str, ...]
    maximins: Mapping[str, Fraction]
    best_actions: Mapping[str, str]
    eliminated: tuple[Outcome, ...]
    determined: Mapping[str, str]
    # Points that the dominance shortcut would settle at round start but the
    # survivor set did not pin down by round end; expected to stay empty.
    flagged: tuple[str, ...] = ()


@dataclass(frozen=True)
class TransparentResolution:
    status: str  # "outcome", "no-equilibrium" or "non-generic"
    outcome: Outcome | None = None
    payoff: tuple[Fraction, ...] | None = None
    trace: tuple[EliminationRound, ...] = ()
    ties: tuple = field(default=(), repr=False)

    @property
    def found(self) -> bool:
        return self.status == "outcome"


def maximin(g: SpacetimeGame, surviving: Iterable[Outcome], point: str) -> tuple[Fraction, str]:
    """Best guaranteed payoff for the point's player among the survivors, and the action securing it."""
    p = g.point(point)
    who = g.player_index(p.player)
    worst: dict[str, Fraction] = {}
    for o in surviving:
        action = o.get(point)
        if action is None:
            continue
        value = g.payoffs[o][who]
        if action not in worst or value < worst[action]:
            worst[action] = value
    if not worst:
        raise NoSurvivors(f"no surviving outcome assigns {point}")
    best = max(worst.values())
    action = next(a for a in p.actions if worst.get(a) == best)
    return best, action


def _dominance_choice(g: SpacetimeGame, surviving: list[Outcome], point: str) -> str | None:
    """Action whose every survivor beats every survivor of each other action, if any."""
    who = g.player_index(g.point(point).player)
    lo: dict[str, Fraction] = {}
    hi: dict[str, Fraction] = {}
    for o in surviving:
        a = o[point]
        v = g.payoffs[o][who]
        lo[a] = min(lo.get(a, v), v)
        hi[a] = max(hi.get(a, v), v)
    if len(lo) < 2:
        return None
    for a in lo:
        if all(lo[a] > hi[b] for b in lo if b != a):
            return a
    return None


def pte(g: SpacetimeGame) -> TransparentResolution:
    ties = genericity_check(g).ties
    if ties:
        return TransparentResolution("non-generic", ties=ties[:1])

    surviving = list(g.outcomes)
    trace: list[EliminationRound] = []
    settled: dict[str, str] = {}
    while True:
        active = tuple(pid for pid in g.topological_order if surviving and all(pid in o for o in surviving))
        maximins: dict[str, Fraction] = {}
        best: dict[str, str] = {}
        shortcut: dict[str, str] = {}
        for pid in active:
            maximins[pid], best[pid] = maximin(g, surviving, pid)
            choice = _dominance_choice(g, surviving, pid)
            if choice is not None:
                shortcut[pid] = choice
        index = {pid: g.player_index(g.point(pid).player) for pid in active}
        kept, dropped = [], []
        for o in surviving:
            values = g.payoffs[o]
            if any(values[index[pid]] < maximins[pid] for pid in active):
                dropped.append(o)
            else:
                kept.append(o)
        surviving = kept

        determined = {}
        for pid in g.topological_order:
            if pid in settled or not surviving:
                continue
            actions = {o.get(pid) for o in surviving}
            if len(actions) == 1 and None not in actions:
                determined[pid] = settled[pid] = actions.pop()
        flagged = tuple(pid for pid, a in shortcut.items() if settled.get(pid) != a)
        trace.append(
            EliminationRound(len(trace) + 1, active, maximins, best, tuple(dropped), determined, flagged)
        )
        if not dropped:
            break

    if not surviving:
        return TransparentResolution("no-equilibrium", trace=tuple(trace))
    # In generic position a round that removes nothing leaves one survivor.
    assert len(surviving) == 1, "stalled with several survivors"
    winner = surviving[0]
    return TransparentResolution("outcome", winner, g.payoffs[winner], tuple(trace))


def embedding(eg: ExtensiveGame) -> SpacetimeGame:
    """Spacetime game with one point per tree decision node, contingent on its whole path."""
    points = []
    payoffs = {}
    for node in eg.nodes:
        if node.is_leaf:
            payoffs[node.history] = node.payoff
            continue
        source = eg.game.point(node.point)
        edges = tuple(ContingencyEdge(pid, action) for pid, action in node.history.items())
        points.append(DecisionPoint(node.point, source.player, source.actions, edges))
    return SpacetimeGame(eg.players, points, payoffs)


def ppe(eg: ExtensiveGame) -> TransparentResolution:
    if not eg.perfect_information:
        raise ImperfectInformation("perfect prediction needs singleton information sets")
    return pte(embedding(eg))


def pareto_optimal(g: SpacetimeGame, o: Outcome) -> bool:
    if o not in g.payoffs:
        raise UnknownOutcome(o.key)
    mine = g.payoffs[o]
    for other, values in g.payoffs.items():
        if other == o:
            continue
        if all(v >= m for v, m in zip(values, mine)) and any(v > m for v, m in zip(values, mine)):
            return False
    return True
