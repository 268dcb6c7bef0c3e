import pytest

from scottlo.engine import Engine, Outcome, UnsupportedLevel, replay_false, replay_true
from scottlo.oracle import bf_le_finite, linear_order
from scottlo.terms import Finite


@pytest.fixture(scope="module")
def engine():
    return Engine(budget=30.0)


@pytest.mark.parametrize("lhs,rhs,k,want", [
    ("3", "2", 1, True),
    ("2", "3", 1, False),
    ("w+q", "w", 3, True),
    ("z*q", "z", 3, True),
    ("q+3+q", "q+2+q", 2, True),
    ("sh(1,w)", "w*q", 3, True),
    ("w*q", "sh(1,w)", 2, True),
    ("w", "w*", 2, False),
    ("w", "w+1", 3, False),
    ("q", "q", 9, True),
])
def test_relations(engine, lhs, rhs, k, want):
    v = engine.check_le(lhs, rhs, k)
    assert v.outcome is (Outcome.TRUE if want else Outcome.FALSE)


def test_finite_orders_agree_with_oracle(engine):
    for a in range(5):
        for b in range(5):
            for k in range(4):
                want = bf_le_finite(linear_order(a), (), linear_order(b), (), k)
                assert engine.le(Finite(a), Finite(b), k) is want, (a, b, k)


def test_level_zero_always_holds(engine):
    assert engine.le("1", "w", 0) is True


def test_false_certificate_replays(engine):
    v = engine.check_le("2", "3", 2)
    assert v.certificate["rule"] == "failing partition"
    assert replay_false(engine, "2", "3", 2, v.certificate["partition"])


def test_wrong_partition_does_not_replay(engine):
    assert not replay_false(engine, "2", "3", 2, ["0", "1"])


@pytest.mark.parametrize("lhs,rhs,k", [("w+q", "w", 3), ("q+2+q", "q", 2), ("sh(1,w)", "w*q", 3)])
def test_true_strategy_replays(engine, lhs, rhs, k):
    assert engine.check_le(lhs, rhs, k).outcome is Outcome.TRUE
    assert replay_true(engine, lhs, rhs, k)


def test_equivalence_needs_both_directions(engine):
    assert engine.check_equiv("q+q", "q", 5).outcome is Outcome.TRUE
    assert engine.check_equiv("3", "2", 1).outcome is Outcome.FALSE


def test_tiny_bounds_give_inconclusive_not_false():
    v = Engine(cuts=1, params=2).check_le("w+q", "w", 3)
    assert v.outcome is Outcome.INCONCLUSIVE
    assert v.bounds["C"] == 1 and v.bounds["P"] == 2


def test_infinite_level_rejected(engine):
    from scottlo.ordinals import OMEGA
    with pytest.raises(UnsupportedLevel):
        engine.check_le("w", "w", OMEGA)


def test_json_report(engine):
    data = engine.check_le("w+q", "w", 3).to_json()
    assert data["outcome"] == "True"
    assert set(data) >= {"lhs", "rhs", "alpha", "bounds", "certificate"}


def test_cache_round_trip(tmp_path):
    path = tmp_path / "cache.jsonl"
    first = Engine(cache=path)
    assert first.le("w+q", "w", 3) is True
    first.save_cache()
    second = Engine(cache=path)
    assert second._memo
    assert second.le("w+q", "w", 3) is True
