from fractions import Fraction

import pytest

from boolebell.errors import UnsupportedError
from boolebell.game import (
    DEFAULT_TARGET,
    CorrelationTarget,
    enumerate_joint_strategies,
    mixing_system,
    reduce_strategies,
    same_result_profile,
    solve_mixing,
    target_to_assignment,
)
from boolebell.polytope import check_membership

F = Fraction


def test_strategy_table_order():
    names = [str(s) for s in enumerate_joint_strategies()]
    assert names == ["RRR", "RRS", "RSR", "RSS", "SRR", "SRS", "SSR", "SSS"]


def test_reduction_pairs_as_listed():
    strategies = [str(s) for s in enumerate_joint_strategies()]
    classes = reduce_strategies()
    assert [str(c.representative) for c in classes] == ["RRR", "RRS", "RSR", "RSS"]
    pairs = {tuple(sorted(strategies.index(str(m)) + 1 for m in c.members)) for c in classes}
    assert pairs == {(1, 8), (4, 5), (3, 6), (2, 7)}
    members = [str(m) for c in classes for m in c.members]
    assert sorted(members) == sorted(strategies)


def test_profiles():
    profiles = {str(c.representative): same_result_profile(c) for c in reduce_strategies()}
    assert profiles["RRR"] == (1, 1, 1)
    assert profiles["RRS"] == (1, 0, 0)
    assert profiles["RSS"] == (0, 1, 0)


def test_class_members_share_profile():
    for c in reduce_strategies():
        a, b = c.members
        assert same_result_profile(a) == same_result_profile(b)


def test_default_target_is_infeasible():
    sol = solve_mixing(DEFAULT_TARGET)
    assert sol.weights == (F(3, 8), F(3, 8), F(-1, 8), F(3, 8))
    assert not sol.feasible
    assert sol.negative_components == ("gamma",)


def test_default_target_relations():
    alpha, beta, gamma, delta = solve_mixing(DEFAULT_TARGET).weights
    assert gamma + delta == F(1, 4)
    assert beta + gamma == F(1, 4)
    assert beta + delta == F(3, 4)
    assert alpha + beta + gamma + delta == 1


def test_weights_reproduce_target():
    M, _ = mixing_system()
    w = solve_mixing(DEFAULT_TARGET).weights
    assert [sum(a * b for a, b in zip(row, w)) for row in M] == [1, F(3, 4), F(3, 4), F(1, 4)]


@pytest.mark.parametrize("target, weights", [
    ((1, 1, 1, 1), (1, 0, 0, 0)),
    ((1, F(1, 2), F(1, 2), F(1, 2)), (F(1, 4),) * 4),
])
def test_feasible_targets(target, weights):
    sol = solve_mixing(target)
    assert sol.weights == weights and sol.feasible


def test_condition_one_required():
    with pytest.raises(UnsupportedError):
        solve_mixing((F(1, 2), F(1, 2), F(1, 2), F(1, 2)))


def test_game_and_polytope_agree():
    a = target_to_assignment(DEFAULT_TARGET)
    assert a.values == (F(1, 2),) * 3 + (F(3, 8), F(1, 8), F(3, 8))
    assert check_membership(a).status == "outside"
    feasible = target_to_assignment(CorrelationTarget(1, F(1, 2), F(1, 2), F(1, 2)))
    assert check_membership(feasible).inside
