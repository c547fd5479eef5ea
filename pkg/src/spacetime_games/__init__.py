"""Equilibria of games whose decisions sit in Minkowski spacetime."""

from .bell import build_bell_game, chsh, is_local, local_deterministic_scan
from .convert import to_dot, to_extensive, to_strategic
from .gameio import parse_game, serialize_game
from .model import (
    ContingencyEdge,
    DecisionPoint,
    Outcome,
    Position,
    SpacetimeGame,
    genericity_check,
    validate_game,
)
from .nash import is_nash, nash_resolutions, pure_nash, spe
from .outcomes import enumerate_outcomes, induced_outcome, is_consistent_assignment
from .transparent import maximin, pareto_optimal, ppe, pte

__all__ = [
    "ContingencyEdge",
    "DecisionPoint",
    "Outcome",
    "Position",
    "SpacetimeGame",
    "build_bell_game",
    "chsh",
    "enumerate_outcomes",
    "genericity_check",
    "induced_outcome",
    "is_consistent_assignment",
    "is_local",
    "is_nash",
    "local_deterministic_scan",
    "maximin",
    "nash_resolutions",
    "pareto_optimal",
    "parse_game",
    "ppe",
    "pte",
    "pure_nash",
    "serialize_game",
    "spe",
    "to_dot",
    "to_extensive",
    "to_strategic",
    "validate_game",
]
