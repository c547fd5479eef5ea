from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_nash
from spacetime_games import fixtures
from spacetime_games.convert import to_extensive, to_strategic
from spacetime_games.generate import gen_random, random_tree_game
from spacetime_games.nash import ImperfectInformation, NonGeneric, is_nash, nash_resolutions, pure_nash, spe


def test_prisoners_dilemma(pd):
    found = nash_resolutions(pd)
    assert [r.key for r in found] == ["A=defect,B=defect"]
    assert found[0].payoff == (1, 1)


def test_matching_pennies_has_none():
    assert nash_resolutions(fixtures.matching_pennies()) == []


def test_is_nash_witness(pd):
    sg = to_strategic(pd)
    check = is_nash(sg, {"A": "cooperate", "B": "cooperate"})
    assert not check
    assert check.witness.player == "Alice"
    assert check.witness.strategy == {"A": "defect"}
    assert check.witness.gain == 1
    assert is_nash(sg, {"A": "defect", "B": "defect"}).witness is None


def test_single_point_picks_maximum():
    found = nash_resolutions(fixtures.single_point((3, 7, 5)))
    assert [r.key for r in found] == ["A=a2"]


def test_promise_game_nash(promise):
    # Bob's plan at n2 is pinned: with n2=cooperates Alice would rather cooperate.
    found = nash_resolutions(promise)
    assert [r.key for r in found] == ["n1=defects,n2=defects"]
    assert found[0].outcome == {"n1": "defects"}


def test_nash_profiles_are_total(bell):
    for r in nash_resolutions(bell):
        assert set(r.profile) == set(bell.point_ids)


class TestSpe:
    def test_promise_game(self, promise):
        r = spe(to_extensive(promise))
        assert r.outcome == {"n1": "defects"}
        assert r.profile == {"n1": "defects", "n2": "defects"}
        assert r.payoff == (0, 0)

    def test_single_point(self):
        assert spe(to_extensive(fixtures.single_point((3, 1)))).key == "A=a1"

    def test_imperfect_information(self, pd):
        with pytest.raises(ImperfectInformation):
            spe(to_extensive(pd))

    def test_tie_is_reported(self, promise):
        table = dict(promise.payoffs)
        for o in table:
            if o.get("n2") == "defects":
                table[o] = (Fraction(-1), Fraction(1))
        with pytest.raises(NonGeneric):
            spe(to_extensive(promise.with_payoffs(table)))

    def test_spe_is_nash(self):
        for seed in range(200):
            g = random_tree_game(3, 2, 2, seed)
            r = spe(to_extensive(g))
            assert is_nash(to_strategic(g), r.profile)


@settings(max_examples=100, deadline=None)
@given(
    nodes=st.integers(1, 5),
    players=st.integers(1, 3),
    density=st.sampled_from([0.0, 0.3, 0.7]),
    seed=st.integers(0, 10**6),
)
def test_matches_exhaustive_deviation(nodes, players, density, seed):
    g = gen_random(nodes, 2, players, density, seed)
    mine = sorted(tuple(sorted(r.profile.items())) for r in pure_nash(to_strategic(g)))
    assert mine == sorted(tuple(sorted(p.items())) for p in brute_force_nash(g))


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 10**6),
    scale=st.fractions(min_value=Fraction(1, 10), max_value=10),
    shift=st.fractions(min_value=-10, max_value=10),
    who=st.integers(0, 1),
)
def test_invariant_under_positive_affine_rescaling(seed, scale, shift, who):
    g = gen_random(4, 2, 2, 0.3, seed)
    rescaled = g.with_payoffs(
        {o: tuple(scale * v + shift if i == who else v for i, v in enumerate(vs)) for o, vs in g.payoffs.items()}
    )
    assert [r.key for r in nash_resolutions(g)] == [r.key for r in nash_resolutions(rescaled)]
