"""Pure-strategy Nash equilibria and subgame-perfect equilibrium by backward induction."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .convert import ExtensiveGame, StrategicGame, to_strategic
from .model import Outcome, SpacetimeGame
from .outcomes import induced_outcome, profile_key


class ImperfectInformation(ValueError):
    pass


class NonGeneric(ValueError):
    pass


@dataclass(frozen=True)
class NashResolution:
    profile: Mapping[str, str]
    outcome: Outcome
    payoff: tuple[Fraction, ...]

    @property
    def key(self) -> str:
        return profile_key(self.profile)


@dataclass(frozen=True)
class Deviation:
    player: str
    strategy: Mapping[str, str]
    gain: Fraction


@dataclass(frozen=True)
class NashCheck:
    is_nash: bool
    witness: Deviation | None = None

    def __bool__(self) -> bool:
        return self.is_nash


def _as_index(sg: StrategicGame, profile) -> tuple[int, ...]:
    if isinstance(profile, Mapping):
        return sg.index_of(profile)
    return tuple(profile)


def is_nash(sg: StrategicGame, profile) -> NashCheck:
    """Check a profile (index tuple or set-to-action mapping) for profitable unilateral deviations.

    On failure the first strictly improving deviation found, scanning players
    and then their strategies in order, is returned as the witness.
    """
    profile = _as_index(sg, profile)
    current = sg.payoff(profile)
    for i, player in enumerate(sg.players):
        for alt in range(sg.sizes[i]):
            if alt == profile[i]:
                continue
            deviated = profile[:i] + (alt,) + profile[i + 1 :]
            value = sg.payoff(deviated)[i]
            if value > current[i]:
                return NashCheck(False, Deviation(player, sg.strategy(i, alt), value - current[i]))
    return NashCheck(True)


def pure_nash(sg: StrategicGame) -> list[NashResolution]:
    """Every pure Nash equilibrium, ordered by profile key."""
    profiles = list(sg.profiles())
    best: list[dict[tuple[int, ...], Fraction]] = [{} for _ in sg.players]
    for p in profiles:
        values = sg.payoff(p)
        for i in range(len(sg.players)):
            others = p[:i] + p[i + 1 :]
            if others not in best[i] or values[i] > best[i][others]:
                best[i][others] = values[i]
    found = []
    for p in profiles:
        values = sg.payoff(p)
        if all(values[i] == best[i][p[:i] + p[i + 1 :]] for i in range(len(sg.players))):
            found.append(NashResolution(sg.assignment(p), sg.outcomes[p], values))
    return sorted(found, key=lambda r: r.key)


def nash_resolutions(g: SpacetimeGame) -> list[NashResolution]:
    return pure_nash(to_strategic(g))


def spe(eg: ExtensiveGame) -> NashResolution:
    """Backward induction on a perfect-information tree.

    Raises ``ImperfectInformation`` when an information set spans several
    nodes and ``NonGeneric`` when a mover is indifferent between the best
    continuations. Information sets never reached in the tree get the
    point's first action so the profile stays total.
    """
    if not eg.perfect_information:
        shared = [s.id for s in eg.info_sets if len(s.nodes) > 1]
        raise ImperfectInformation(f"information sets with several nodes: {', '.join(shared)}")
    choice: dict[str, str] = {}
    players = eg.players

    def solve(index: int) -> tuple[Fraction, ...]:
        node = eg.nodes[index]
        if node.is_leaf:
            return node.payoff
        mover = players.index(eg.game.point(node.point).player)
        results = [(action, solve(child)) for action, child in node.children]
        top = max(values[mover] for _, values in results)
        winners = [(a, v) for a, v in results if v[mover] == top]
        if len(winners) > 1:
            raise NonGeneric(f"tie at {node.point} between {', '.join(a for a, _ in winners)}")
        choice[node.info_set] = winners[0][0]
        return winners[0][1]

    solve(0)
    for s in eg.info_sets:
        choice.setdefault(s.id, s.actions[0])
    outcome = induced_outcome(eg.game, choice)
    return NashResolution(choice, outcome, eg.game.payoff(outcome))
