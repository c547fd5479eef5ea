"""Seeded random games: generic spacetime games and perfect-information trees."""

from __future__ import annotations

import hashlib
import random

from .model import ContingencyEdge, DecisionPoint, SpacetimeGame
from .outcomes import enumerate_outcomes


def derive_seed(seed: int, index: int) -> int:
    """Seed for the ``index``-th game of a run: first 8 bytes of sha256("seed:index"), big-endian."""
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def random_permutation_payoffs(outcomes, players: int, rng: random.Random) -> dict:
    """Independent uniform permutations of 1..len(outcomes) per player."""
    outcomes = list(outcomes)
    columns = []
    for _ in range(players):
        values = list(range(1, len(outcomes) + 1))
        rng.shuffle(values)
        columns.append(values)
    return {o: tuple(col[i] for col in columns) for i, o in enumerate(outcomes)}


def gen_random(
    node_count: int,
    max_actions: int = 2,
    player_count: int = 2,
    edge_density: float = 0.0,
    seed: int = 0,
) -> SpacetimeGame:
    """Random DAG game with generic payoffs.

    Points ``n0..n{k-1}`` are declared in topological order; each forward
    pair gets an edge with probability ``edge_density``, labeled with a
    uniformly chosen parent action. Every player owns at least one point
    when ``player_count <= node_count``. Payoffs are independent
    permutations of 1..|Z| per player, so the game is generic.
    """
    if node_count < 1 or max_actions < 2 or player_count < 1 or not 0 <= edge_density <= 1:
        raise ValueError("need node_count >= 1, max_actions >= 2, player_count >= 1, 0 <= edge_density <= 1")
    rng = random.Random(seed)
    players = tuple(f"P{i + 1}" for i in range(player_count))
    width = len(str(node_count - 1))
    ids = [f"n{i:0{width}d}" for i in range(node_count)]
    owners = [players[i] for i in range(min(player_count, node_count))]
    owners += [rng.choice(players) for _ in range(node_count - len(owners))]
    rng.shuffle(owners)
    actions = [tuple(f"a{k}" for k in range(rng.randint(2, max_actions))) for _ in ids]
    points = []
    for j, pid in enumerate(ids):
        edges = tuple(
            ContingencyEdge(ids[i], rng.choice(actions[i])) for i in range(j) if rng.random() < edge_density
        )
        points.append(DecisionPoint(pid, owners[j], actions[j], edges))
    skeleton = SpacetimeGame(players, tuple(points))
    payoffs = random_permutation_payoffs(enumerate_outcomes(skeleton), player_count, rng)
    return skeleton.with_payoffs(payoffs)


def random_tree_game(max_depth: int = 4, max_branching: int = 3, player_count: int = 2, seed: int = 0) -> SpacetimeGame:
    """Random perfect-information game tree as a spacetime game.

    Every decision node becomes one point contingent on its parent node's
    action; subtrees stop early with probability 1/3 below the root.
    """
    rng = random.Random(seed)
    players = tuple(f"P{i + 1}" for i in range(player_count))
    points: list[DecisionPoint] = []

    def grow(depth: int, parent: ContingencyEdge | None) -> None:
        pid = f"t{len(points)}"
        branching = rng.randint(2, max_branching)
        acts = tuple(f"a{k}" for k in range(branching))
        points.append(DecisionPoint(pid, rng.choice(players), acts, (parent,) if parent else ()))
        if depth + 1 >= max_depth:
            return
        for a in acts:
            if rng.random() < 2 / 3:
                grow(depth + 1, ContingencyEdge(pid, a))

    grow(0, None)
    skeleton = SpacetimeGame(players, tuple(points))
    payoffs = random_permutation_payoffs(enumerate_outcomes(skeleton), player_count, rng)
    return skeleton.with_payoffs(payoffs)
