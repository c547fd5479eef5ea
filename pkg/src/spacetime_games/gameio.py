"""Canonical text format for spacetime games.

A game document is JSON::

    {
      "version": 1,
      "players": ["Alice", "Bob"],
      "nodes": [
        {"id": "n1", "player": "Alice", "actions": ["cooperates", "defects"]},
        {"id": "n2", "player": "Bob", "actions": ["cooperates", "defects"],
         "parents": [{"node": "n1", "when": "cooperates"}],
         "position": {"t": "1", "x": "0", "y": "0", "z": "0"}}
      ],
      "payoffs": [{"outcome": {"n1": "defects"}, "values": ["0", "0"]}, ...]
    }

Rationals are strings in lowest terms (``"3/2"``, ``"-1"``); plain JSON
integers are accepted on input. The canonical form sorts object keys,
orders payoff rows by outcome key and indents by two spaces, so
``serialize_game(parse_game(text))`` is a fixed point.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .model import ContingencyEdge, DecisionPoint, GameError, Outcome, Position, SpacetimeGame, validate_game

FORMAT_VERSION = 1


class GameSyntaxError(ValueError):
    """Malformed document; the message names the line or field."""


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _rational(raw, where: str) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise GameSyntaxError(f"{where}: expected a rational string, got {raw!r}")
    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise GameSyntaxError(f"{where}: bad rational {raw!r}") from exc
    if isinstance(raw, str) and "." in raw:
        raise GameSyntaxError(f"{where}: decimals are not allowed, write {format_rational(value)}")
    return value


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise GameSyntaxError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise GameSyntaxError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return value


def _strings(values, where: str) -> tuple[str, ...]:
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise GameSyntaxError(f"{where}: expected a list of strings")
    return tuple(values)


def document_to_game(doc) -> SpacetimeGame:
    if not isinstance(doc, dict):
        raise GameSyntaxError("top level: expected an object")
    version = _require(doc, "version", int, "top level")
    if version != FORMAT_VERSION:
        raise GameSyntaxError(f"version: unsupported format version {version}")
    players = _strings(_require(doc, "players", list, "top level"), "players")

    points = []
    for i, node in enumerate(_require(doc, "nodes", list, "top level")):
        where = f"nodes[{i}]"
        if not isinstance(node, dict):
            raise GameSyntaxError(f"{where}: expected an object")
        edges = []
        for j, edge in enumerate(node.get("parents", [])):
            if not isinstance(edge, dict):
                raise GameSyntaxError(f"{where}.parents[{j}]: expected an object")
            edges.append(
                ContingencyEdge(
                    _require(edge, "node", str, f"{where}.parents[{j}]"),
                    _require(edge, "when", str, f"{where}.parents[{j}]"),
                )
            )
        position = None
        if "position" in node:
            raw = node["position"]
            if not isinstance(raw, dict):
                raise GameSyntaxError(f"{where}.position: expected an object")
            position = Position(*(_rational(raw.get(axis, "0"), f"{where}.position.{axis}") for axis in "txyz"))
        points.append(
            DecisionPoint(
                _require(node, "id", str, where),
                _require(node, "player", str, where),
                _strings(_require(node, "actions", list, where), f"{where}.actions"),
                tuple(edges),
                position,
            )
        )

    payoffs = {}
    for i, row in enumerate(_require(doc, "payoffs", list, "top level")):
        where = f"payoffs[{i}]"
        if not isinstance(row, dict):
            raise GameSyntaxError(f"{where}: expected an object")
        assignment = _require(row, "outcome", dict, where)
        if not all(isinstance(v, str) for v in assignment.values()):
            raise GameSyntaxError(f"{where}.outcome: actions must be strings")
        values = _require(row, "values", list, where)
        outcome = Outcome(assignment)
        if outcome in payoffs:
            raise GameSyntaxError(f"{where}: duplicate row for outcome {outcome.key!r}")
        payoffs[outcome] = tuple(_rational(v, f"{where}.values[{k}]") for k, v in enumerate(values))
    return SpacetimeGame(players, tuple(points), payoffs)


def parse_game(text: str, validate: bool = True) -> SpacetimeGame:
    """Parse a game document; raises ``GameSyntaxError`` or ``GameError`` (validation)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameSyntaxError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    game = document_to_game(doc)
    if validate:
        report = validate_game(game)
        if not report.ok:
            raise GameError(report)
    return game


def game_to_document(g: SpacetimeGame) -> dict:
    nodes = []
    for p in g.points:
        node = {"id": p.id, "player": p.player, "actions": list(p.actions)}
        if p.parents:
            node["parents"] = [{"node": e.parent, "when": e.action} for e in sorted(p.parents, key=lambda e: e.parent)]
        if p.position is not None:
            node["position"] = {axis: format_rational(getattr(p.position, axis)) for axis in "txyz"}
        nodes.append(node)
    rows = [
        {"outcome": dict(o.items()), "values": [format_rational(v) for v in g.payoffs[o]]}
        for o in sorted(g.payoffs)
    ]
    return {"version": FORMAT_VERSION, "players": list(g.players), "nodes": nodes, "payoffs": rows}


def serialize_game(g: SpacetimeGame) -> str:
    return json.dumps(game_to_document(g), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_game(path) -> SpacetimeGame:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


def write_game(g: SpacetimeGame, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_game(g))
