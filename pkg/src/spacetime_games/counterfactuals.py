"""Counterfactual semantics over finite sets of histories.

A ``Multihistory`` pairs a game with a set of its outcomes (the possible
histories) and a selector that answers "what is the closest history in
which point n takes action a?". Three selectors are provided:

* ``ExplicitTable``: a hand-written lookup table.
* ``NashDeviation``: keep every other entry of a total profile fixed and
  change only the choice at n (unilateral deviation).
* ``TransparentResolve``: re-solve the game for its transparent equilibrium
  with n forced to a.

All selectors are centered: intervening with the value a point already has
returns the history unchanged.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from .model import DecisionPoint, Outcome, SpacetimeGame
from .nash import NashResolution, NonGeneric
from .outcomes import induced_outcome
from .transparent import TransparentResolution, pte


class NoEquilibrium(ValueError):
    """The constrained re-solve has no transparent equilibrium, so no closest history exists."""


class MissingTableEntry(KeyError):
    pass


@dataclass(frozen=True)
class ExplicitTable:
    table: Mapping[tuple[Outcome, str, str], Outcome]


@dataclass(frozen=True)
class NashDeviation:
    # Supplies choices off the history's own path; on-path choices come from the history.
    profile: Mapping[str, str]


@dataclass(frozen=True)
class TransparentResolve:
    pass


Selector = ExplicitTable | NashDeviation | TransparentResolve


@dataclass(frozen=True)
class Multihistory:
    game: SpacetimeGame
    selector: Selector
    histories: tuple[Outcome, ...] = field(default=())

    def __post_init__(self):
        histories = tuple(sorted(Outcome(h) for h in self.histories)) if self.histories else self.game.outcomes
        valid = set(self.game.outcomes)
        for h in histories:
            if h not in valid:
                raise ValueError(f"history {h.key!r} is not an outcome of the game")
        object.__setattr__(self, "histories", histories)
        if isinstance(self.selector, ExplicitTable):
            self._check_table()

    def _check_table(self) -> None:
        table = self.selector.table
        for h in self.histories:
            for p in self.game.points:
                for a in p.actions:
                    if h.get(p.id) == a:
                        continue
                    target = table.get((h, p.id, a))
                    if target is None:
                        raise MissingTableEntry(f"no closest history for {h.key} with {p.id}={a}")
                    if target.get(p.id, a) != a:
                        raise ValueError(f"table maps {h.key} with {p.id}={a} to a history where it fails")

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.game.point_ids


def closest_history(m: Multihistory, history: Outcome, point: str, action: str) -> Outcome:
    g = m.game
    if action not in g.point(point).actions:
        raise ValueError(f"{action!r} is not an action of {point}")
    if history not in m.histories:
        raise ValueError(f"{history.key!r} is not a history of this model")
    if history.get(point) == action:
        return history

    selector = m.selector
    if isinstance(selector, ExplicitTable):
        return selector.table[(history, point, action)]
    if isinstance(selector, NashDeviation):
        profile = {**selector.profile, **history, point: action}
        return induced_outcome(g, profile)
    return _constrained_solution(g, point, action).outcome


def _constrained_solution(g: SpacetimeGame, point: str, action: str) -> TransparentResolution:
    points = tuple(
        DecisionPoint(p.id, p.player, (action,), p.parents, p.position) if p.id == point else p for p in g.points
    )
    payoffs = {o: v for o, v in g.payoffs.items() if o.get(point, action) == action}
    result = pte(SpacetimeGame(g.players, points, payoffs))
    if result.status == "non-generic":
        raise NonGeneric(f"constrained game {point}={action} has payoff ties")
    if result.status == "no-equilibrium":
        raise NoEquilibrium(f"no transparent equilibrium with {point}={action}")
    return result


def counterfactually_implies(
    m: Multihistory, history: Outcome, point: str, action: str, other: str, value: str | None
) -> bool:
    """Whether ``other`` takes ``value`` (None meaning undefined) in the closest history where point=action."""
    return closest_history(m, history, point, action).get(other) == value


def independence_witness(m: Multihistory, n: str, k: str) -> tuple[Outcome, str] | None:
    """First (history, action of k) under which n's value changes, or None."""
    for h in m.histories:
        if n not in h or k not in h:
            continue
        for b in m.game.point(k).actions:
            if closest_history(m, h, k, b).get(n) != h[n]:
                return h, b
    return None


def counterfactually_independent(m: Multihistory, n: str, k: str) -> bool:
    """True iff n keeps its value whenever k is counterfactually set to any of its actions."""
    return independence_witness(m, n, k) is None


def causally_dependent(g: SpacetimeGame, a: str, b: str) -> bool:
    """True iff b lies strictly in the causal past of a."""
    for pid in (a, b):
        g.point(pid)
    return (b, a) in g.causal_pairs()


@dataclass(frozen=True)
class FreeChoice:
    free: bool
    witness: tuple[str, Outcome, str] | None = None

    def __bool__(self) -> bool:
        return self.free


def nashian_free_choice(m: Multihistory, point: str) -> FreeChoice:
    """Check that everything outside the point's causal future is counterfactually independent of it."""
    future = {later for earlier, later in m.game.causal_pairs() if earlier == point}
    for other in m.parameters:
        if other == point or other in future:
            continue
        witness = independence_witness(m, other, point)
        if witness is not None:
            return FreeChoice(False, (other, witness[0], witness[1]))
    return FreeChoice(True)


def full_support(m: Multihistory, point: str) -> bool:
    realized = {h.get(point) for h in m.histories}
    return all(a in realized for a in m.game.point(point).actions)


@dataclass(frozen=True)
class Contextuality:
    kind: str  # "complete" or "partial"
    assigned: int
    total: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.assigned, self.total)


def contextuality_class(resolution: NashResolution | TransparentResolution, g: SpacetimeGame) -> Contextuality:
    total = len(g.points)
    if isinstance(resolution, NashResolution):
        assigned = sum(1 for pid in g.point_ids if pid in resolution.profile)
        return Contextuality("complete" if assigned == total else "partial", assigned, total)
    if not resolution.found:
        raise ValueError(f"no outcome to classify ({resolution.status})")
    return Contextuality("partial", len(resolution.outcome), total)


def histories_from(outcomes: Iterable[Mapping[str, str]]) -> tuple[Outcome, ...]:
    return tuple(Outcome(o) for o in outcomes)
