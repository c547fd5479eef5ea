import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spacetime_games import fixtures
from spacetime_games.convert import BadOrder, to_dot, to_extensive, to_strategic
from spacetime_games.generate import gen_random
from spacetime_games.outcomes import induced_outcome


def linear_extensions(g):
    for perm in itertools.permutations(g.point_ids):
        seen = set()
        ok = True
        for pid in perm:
            if g.ancestors[pid] - seen:
                ok = False
                break
            seen.add(pid)
        if ok:
            yield perm


class TestExtensive:
    def test_bell_tree(self, bell):
        eg = to_extensive(bell)
        assert len(eg.leaves) == 16
        assert eg.level_players == ["Alice", "Bob", "Carol", "David"]
        sizes = {s.id: len(s.nodes) for s in eg.info_sets}
        # A: the root. B: both A-branches. Ca/Cb: the B-branches under one A value,
        # and Da/Db: every Alice/Bob/Carol path with the matching B value.
        assert sizes == {"A": 1, "B": 2, "Ca": 2, "Cb": 2, "Da": 4, "Db": 4}
        assert not eg.perfect_information

    def test_bell_knowledge_is_causal_past(self, bell):
        sets = to_extensive(bell).info_set_map
        assert sets["Ca"].known_ancestors == {"A": "a1"}
        assert sets["Db"].known_ancestors == {"B": "b2"}
        assert sets["B"].known_ancestors == {}

    def test_promise_game_has_perfect_information(self, promise):
        eg = to_extensive(promise)
        assert eg.perfect_information
        assert [len(s.nodes) for s in eg.info_sets] == [1, 1]

    def test_prisoners_dilemma_second_mover_merges(self, pd):
        eg = to_extensive(pd)
        assert [len(s.nodes) for s in eg.info_sets] == [1, 2]

    def test_bad_order(self, promise):
        with pytest.raises(BadOrder):
            to_extensive(promise, ["n2", "n1"])
        with pytest.raises(BadOrder):
            to_extensive(promise, ["n1"])

    def test_info_set_nodes_share_actions(self, bell):
        eg = to_extensive(bell)
        for s in eg.info_sets:
            assert {eg.nodes[i].point for i in s.nodes} == {s.point}


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), density=st.sampled_from([0.0, 0.4, 0.8]))
def test_leaves_preserve_payoff_table_for_every_order(seed, density):
    g = gen_random(4, 2, 2, density, seed)
    for order in itertools.islice(linear_extensions(g), 6):
        eg = to_extensive(g, order)
        assert Counter((leaf.history, leaf.payoff) for leaf in eg.leaves) == Counter(g.payoffs.items())


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_information_structure_does_not_depend_on_order(seed):
    g = gen_random(4, 2, 2, 0.4, seed)
    # Node counts per set vary with the order; the sets themselves do not.
    shapes = set()
    for order in itertools.islice(linear_extensions(g), 4):
        eg = to_extensive(g, order)
        shapes.add(tuple((s.id, s.actions, tuple(sorted(s.known_ancestors.items()))) for s in eg.info_sets))
    assert len(shapes) == 1


class TestStrategic:
    def test_bell(self, bell):
        sg = to_strategic(bell)
        assert sg.sizes == (2, 2, 4, 4)
        profiles = list(sg.profiles())
        assert len(profiles) == 64
        assert set(sg.outcomes.values()) == set(bell.outcomes)

    def test_single_point(self):
        g = fixtures.single_point((1, 2))
        sg = to_strategic(g)
        assert sg.sizes == (2,)
        assert [sg.payoff(p) for p in sg.profiles()] == [(1,), (2,)]

    def test_promise(self, promise):
        sg = to_strategic(promise)
        assert sg.sizes == (2, 2)
        induced = Counter(o.key for o in sg.outcomes.values())
        assert induced == {"n1=defects": 2, "n1=cooperates,n2=cooperates": 1, "n1=cooperates,n2=defects": 1}

    def test_payoff_is_induced_outcome_payoff(self):
        for seed in range(30):
            g = gen_random(5, 2, 3, 0.5, seed)
            sg = to_strategic(g)
            for p in sg.profiles():
                assert sg.payoff(p) == g.payoffs[induced_outcome(g, sg.assignment(p))]
                assert sg.index_of(sg.assignment(p)) == p

    def test_strategy_counts_are_products(self):
        for seed in range(30):
            g = gen_random(5, 3, 2, 0.3, seed)
            sg = to_strategic(g)
            for player, n in zip(g.players, sg.sizes):
                expected = 1
                for p in g.points:
                    if p.player == player:
                        expected *= len(p.actions)
                assert n == expected


class TestDot:
    def test_bell_dag(self, bell):
        text = to_dot(bell)
        assert text.startswith("digraph spacetime {")
        assert text.count("[label=") == 6 + 4
        assert text.count(" -> ") == 4

    def test_single_point(self):
        text = to_dot(fixtures.single_point())
        assert " -> " not in text
        assert text.count("[label=") == 1

    def test_bell_tree_dashed_links(self, bell):
        text = to_dot(to_extensive(bell))
        # A set of k tree nodes is drawn as a chain of k - 1 dashed links.
        assert text.count("style=dashed") == 1 + 1 + 1 + 3 + 3

    def test_deterministic(self, bell):
        assert to_dot(to_extensive(bell)) == to_dot(to_extensive(bell))
        assert to_dot(bell) == to_dot(fixtures_bell_copy(bell))


def fixtures_bell_copy(g):
    return type(g)(g.players, g.points, dict(g.payoffs))
