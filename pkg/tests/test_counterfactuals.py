import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spacetime_games import fixtures
from spacetime_games.bell import build_bell_game
from spacetime_games.counterfactuals import (
    ExplicitTable,
    MissingTableEntry,
    Multihistory,
    NashDeviation,
    NoEquilibrium,
    TransparentResolve,
    causally_dependent,
    closest_history,
    contextuality_class,
    counterfactually_implies,
    counterfactually_independent,
    full_support,
    nashian_free_choice,
)
from spacetime_games.generate import gen_random
from spacetime_games.model import DecisionPoint, Outcome, SpacetimeGame
from spacetime_games.nash import nash_resolutions
from spacetime_games.transparent import pte

PLUS_MINUS = Outcome({"A": "+1", "B": "-1"})
MINUS_PLUS = Outcome({"A": "-1", "B": "+1"})
DD = Outcome({"A": "defect", "B": "defect"})


@pytest.fixture
def anti():
    return fixtures.anticorrelated_model()


@pytest.fixture
def deviation(pd):
    return Multihistory(pd, NashDeviation(nash_resolutions(pd)[0].profile))


class TestClosestHistory:
    def test_explicit_table(self, anti):
        assert closest_history(anti, PLUS_MINUS, "B", "+1") == MINUS_PLUS

    def test_nash_deviation(self, deviation, pd):
        o = closest_history(deviation, DD, "A", "cooperate")
        assert o == {"A": "cooperate", "B": "defect"}
        assert pd.payoff(o) == (0, 3)

    def test_transparent_resolve_routes_around(self, promise):
        m = Multihistory(promise, TransparentResolve())
        o3 = Outcome({"n1": "cooperates", "n2": "cooperates"})
        assert closest_history(m, o3, "n2", "defects") == {"n1": "defects"}

    def test_centered(self, anti, deviation, promise):
        assert closest_history(anti, PLUS_MINUS, "A", "+1") == PLUS_MINUS
        assert closest_history(deviation, DD, "B", "defect") == DD
        m = Multihistory(promise, TransparentResolve())
        for h in m.histories:
            for pid, a in h.items():
                assert closest_history(m, h, pid, a) == h

    def test_unknown_action(self, anti):
        with pytest.raises(ValueError):
            closest_history(anti, PLUS_MINUS, "A", "0")

    def test_history_outside_model(self, anti):
        with pytest.raises(ValueError):
            closest_history(anti, Outcome({"A": "+1", "B": "+1"}), "A", "-1")

    def test_table_must_be_total(self):
        g = fixtures.anticorrelated_measurements()
        with pytest.raises(MissingTableEntry):
            Multihistory(g, ExplicitTable({}), (PLUS_MINUS,))

    def test_transparent_resolve_without_equilibrium(self):
        # Once W is fixed, the remaining points form the crossed game, which has no solution.
        base = fixtures.crossed_guarantees()
        w = DecisionPoint("W", "Alice", ("w0", "w1"))
        payoffs = {}
        for o, (x, y) in base.payoffs.items():
            payoffs[Outcome({**o, "W": "w0"})] = (x, y)
            payoffs[Outcome({**o, "W": "w1"})] = (x + 10, y + 10)
        g = SpacetimeGame(base.players, (w,) + base.points, payoffs)
        m = Multihistory(g, TransparentResolve())
        h = Outcome({"W": "w1", "X": "a0", "Y": "a0"})
        with pytest.raises(NoEquilibrium):
            closest_history(m, h, "W", "w0")


def test_counterfactual_implication(anti, deviation):
    assert counterfactually_implies(anti, PLUS_MINUS, "B", "+1", "A", "-1")
    assert counterfactually_implies(deviation, DD, "A", "cooperate", "B", "defect")
    for pid, a in DD.items():
        for other, value in DD.items():
            assert counterfactually_implies(deviation, DD, pid, a, other, value)


def test_independence(anti, deviation):
    assert counterfactually_independent(deviation, "B", "A")
    assert not counterfactually_independent(anti, "A", "B")
    constant = Multihistory(fixtures.single_point((1,)), NashDeviation({"A": "a1"}))
    assert counterfactually_independent(constant, "A", "A")


class TestCausalDependence:
    def test_bell(self):
        g = build_bell_game()
        assert causally_dependent(g, "Ca", "A")
        assert not causally_dependent(g, "A", "B")
        assert not causally_dependent(g, "A", "A")

    def test_strict_partial_order(self):
        for seed in range(30):
            g = gen_random(5, 2, 2, 0.5, seed)
            ids = g.point_ids
            rel = {(a, b) for a in ids for b in ids if causally_dependent(g, a, b)}
            assert all(a != b and (b, a) not in rel for a, b in rel)
            assert all((a, d) in rel for a, b in rel for c, d in rel if b == c)

    def test_predicates_are_logically_independent(self, anti, deviation, pd):
        assert (causally_dependent(anti.game, "A", "B"), counterfactually_independent(anti, "A", "B")) == (False, False)
        assert (causally_dependent(pd, "A", "B"), counterfactually_independent(deviation, "A", "B")) == (False, True)


class TestFreeChoice:
    def test_prisoners_dilemma_deviation(self, deviation):
        assert nashian_free_choice(deviation, "A")
        assert nashian_free_choice(deviation, "B")

    def test_promise_transparent(self, promise):
        result = nashian_free_choice(Multihistory(promise, TransparentResolve()), "n2")
        assert not result
        other, history, action = result.witness
        assert other == "n1"
        assert history == {"n1": "cooperates", "n2": "cooperates"}
        assert action == "defects"

    def test_single_parameter(self):
        g = fixtures.single_point()
        assert nashian_free_choice(Multihistory(g, NashDeviation({"A": "a1"})), "A")

    @settings(max_examples=60, deadline=None)
    @given(
        nodes=st.integers(1, 4),
        density=st.sampled_from([0.0, 0.4, 0.8]),
        seed=st.integers(0, 10**6),
        pick=st.integers(0, 10**6),
    )
    def test_deviation_semantics_is_always_free(self, nodes, density, seed, pick):
        g = gen_random(nodes, 2, 2, density, seed)
        combos = list(itertools.product(*(p.actions for p in g.points)))
        profile = dict(zip(g.point_ids, combos[pick % len(combos)]))
        m = Multihistory(g, NashDeviation(profile))
        assert len(m.histories) <= 16
        assert all(nashian_free_choice(m, pid) for pid in g.point_ids)


class TestFullSupport:
    def test_prisoners_dilemma(self, pd):
        m = Multihistory(pd, NashDeviation({"A": "defect", "B": "defect"}))
        assert full_support(m, "A") and full_support(m, "B")
        narrow = Multihistory(pd, NashDeviation({"A": "defect", "B": "defect"}), (DD,))
        assert not full_support(narrow, "A") and not full_support(narrow, "B")

    def test_bell(self, bell):
        m = Multihistory(bell, NashDeviation(nash_resolutions(bell)[0].profile))
        assert all(full_support(m, pid) for pid in bell.point_ids)


class TestContextuality:
    def test_bell_nash_is_complete(self, bell):
        for r in nash_resolutions(bell):
            c = contextuality_class(r, bell)
            assert (c.kind, c.assigned, c.total) == ("complete", 6, 6)

    def test_bell_pte_is_partial(self, bell):
        c = contextuality_class(pte(bell), bell)
        assert (c.kind, c.assigned, c.total) == ("partial", 4, 6)

    def test_single_point_boundary(self):
        g = fixtures.single_point()
        c = contextuality_class(pte(g), g)
        assert c.kind == "partial" and c.fraction == 1

    def test_no_outcome(self):
        g = fixtures.crossed_guarantees()
        with pytest.raises(ValueError):
            contextuality_class(pte(g), g)
