"""Small named games used by the tests, the CLI and the docs."""

from __future__ import annotations

from fractions import Fraction

from .model import DecisionPoint, Outcome, Position, SpacetimeGame

COOPERATE, DEFECT = "cooperate", "defect"


def prisoners_dilemma() -> SpacetimeGame:
    """Two spacelike decisions; (cooperate, cooperate) pays (2, 2), (defect, defect) pays (1, 1)."""
    points = (
        DecisionPoint("A", "Alice", (COOPERATE, DEFECT), position=Position(0, -1)),
        DecisionPoint("B", "Bob", (COOPERATE, DEFECT), position=Position(0, 1)),
    )
    table = {
        (COOPERATE, COOPERATE): (2, 2),
        (COOPERATE, DEFECT): (0, 3),
        (DEFECT, COOPERATE): (3, 0),
        (DEFECT, DEFECT): (1, 1),
    }
    payoffs = {(("A", a), ("B", b)): v for (a, b), v in table.items()}
    return SpacetimeGame(("Alice", "Bob"), points, payoffs)


def promise_game(o1=(0, 0), o2=(-1, 2), o3=(1, 1)) -> SpacetimeGame:
    """Alice (n1) hands over bread or not; if she does, Bob (n2) pays or not.

    o1: Alice defects. o2: Alice cooperates, Bob defects. o3: both cooperate.
    The defaults satisfy u_Bob(o2) > u_Bob(o3), u_Alice(o1) > u_Alice(o2),
    and o3 strictly better than o1 for both players.
    """
    points = (
        DecisionPoint("n1", "Alice", ("cooperates", "defects")),
        DecisionPoint("n2", "Bob", ("cooperates", "defects"), (("n1", "cooperates"),)),
    )
    payoffs = {
        (("n1", "defects"),): o1,
        (("n1", "cooperates"), ("n2", "defects")): o2,
        (("n1", "cooperates"), ("n2", "cooperates")): o3,
    }
    return SpacetimeGame(("Alice", "Bob"), points, payoffs)


def matching_pennies() -> SpacetimeGame:
    points = (
        DecisionPoint("A", "Alice", ("heads", "tails")),
        DecisionPoint("B", "Bob", ("heads", "tails")),
    )
    payoffs = {
        (("A", "heads"), ("B", "heads")): (1, -1),
        (("A", "heads"), ("B", "tails")): (-1, 1),
        (("A", "tails"), ("B", "heads")): (-1, 1),
        (("A", "tails"), ("B", "tails")): (1, -1),
    }
    return SpacetimeGame(("Alice", "Bob"), points, payoffs)


def anticorrelated_measurements() -> SpacetimeGame:
    """Two spacelike ±1 measurements; only the histories with A = -B matter to callers."""
    points = (
        DecisionPoint("A", "Alice", ("-1", "+1"), position=Position(0, -1)),
        DecisionPoint("B", "Bob", ("-1", "+1"), position=Position(0, 1)),
    )
    payoffs = {}
    for i, a in enumerate(("-1", "+1")):
        for j, b in enumerate(("-1", "+1")):
            payoffs[(("A", a), ("B", b))] = (Fraction(2 * i + j), Fraction(2 * j + i))
    return SpacetimeGame(("Alice", "Bob"), points, payoffs)


def single_point(payoffs=(1, 2)) -> SpacetimeGame:
    actions = tuple(f"a{i + 1}" for i in range(len(payoffs)))
    return SpacetimeGame(
        ("Alice",),
        (DecisionPoint("A", "Alice", actions),),
        {(("A", a),): (v,) for a, v in zip(actions, payoffs)},
    )


def anticorrelated_model():
    """Multihistory over the two A = -B histories; any intervention flips both results."""
    from .counterfactuals import ExplicitTable, Multihistory

    g = anticorrelated_measurements()
    histories = (Outcome({"A": "-1", "B": "+1"}), Outcome({"A": "+1", "B": "-1"}))
    flip = {histories[0]: histories[1], histories[1]: histories[0]}
    table = {(h, pid, flip[h][pid]): flip[h] for h in histories for pid in ("A", "B")}
    return Multihistory(g, ExplicitTable(table), histories)


def crossed_guarantees() -> SpacetimeGame:
    """Each player's best guarantee rules out the other's; forward induction leaves nothing."""
    points = (
        DecisionPoint("X", "Bob", ("a0", "a1")),
        DecisionPoint("Y", "Alice", ("a0", "a1")),
    )
    payoffs = {
        (("X", "a0"), ("Y", "a0")): (2, 4),
        (("X", "a0"), ("Y", "a1")): (1, 2),
        (("X", "a1"), ("Y", "a0")): (4, 1),
        (("X", "a1"), ("Y", "a1")): (3, 3),
    }
    return SpacetimeGame(("Alice", "Bob"), points, payoffs)
