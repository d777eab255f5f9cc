from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wnetkat import semirings
from wnetkat.automata import accept_weight, thompson
from wnetkat.errors import CapabilityError, ResourceCapError
from wnetkat.netcore import (
    DROP,
    Assign,
    Choice,
    Dup,
    FieldSchema,
    Filter,
    Seq,
    Star,
    Test as FieldTest,
    Weigh,
)
from wnetkat.verify import (
    REACHABLE,
    SAFE,
    UNREACHABLE,
    UNSAFE,
    Run,
    check_reachability,
    check_safety,
    enumerate_cycle_free_runs,
    eval_weight,
    run_weight,
    total_weight,
)
from wnetkat.utils.test_utils import guarded_strings, policies, tiny_schema

Arctic = semirings.Arctic
Tropical = semirings.Tropical
Viterbi = semirings.Viterbi


@pytest.fixture(scope="module")
def one_switch():
    return FieldSchema([("sw", ["A"])])


@pytest.fixture(scope="module")
def two_switches():
    return FieldSchema([("sw", ["A", "B"])])


def test_capabilities(one_switch):
    with pytest.raises(CapabilityError):
        check_safety(thompson(Dup(), one_switch, Tropical), Tropical(3))
    with pytest.raises(CapabilityError):
        check_reachability(thompson(Dup(), one_switch, Arctic), Arctic(3))
    with pytest.raises(CapabilityError):
        check_safety(thompson(Dup(), one_switch, semirings.NatInf), semirings.NatInf(3))


def test_run_shape():
    with pytest.raises(ValueError):
        Run((0,), ((0,),))
    with pytest.raises(ValueError):
        Run((), ((0,),))
    run = Run((0, 1), ((0,), (0,), (0,)))
    assert len(run) == 1
    assert run.steps == [(0, ((0,), (0,)), 1)]
    assert run.guarded_string.dups == 1


def test_run_weight_empty_run(one_switch):
    a = thompson(Dup(), one_switch, Tropical)
    assert run_weight(a, Run((0,), ((0,), (0,)))) == Tropical.one


def test_run_weight_rejects_foreign_steps(two_switches):
    a = thompson(Dup(), two_switches, Tropical)
    A, B = (0,), (1,)
    assert run_weight(a, Run((0, 1), (A, A, B))) == Tropical.one
    with pytest.raises(ValueError):
        run_weight(a, Run((0, 1), (A, B, B)))
    with pytest.raises(ValueError):
        run_weight(a, Run((1, 0), (A, A, A)))


def test_cycle_free_runs_of_dup(one_switch):
    a = thompson(Dup(), one_switch, semirings.Boolean)
    runs = list(enumerate_cycle_free_runs(a))
    assert runs == [Run((0, 1), ((0,), (0,), (0,)))]


def test_cycle_free_runs_skip_loops(one_switch):
    a = thompson(Star(Dup()), one_switch, semirings.Boolean)
    runs = list(enumerate_cycle_free_runs(a))
    assert len(set(runs)) == len(runs)
    for run in runs:
        configs = list(zip(run.states[1:], run.packets[1:-1]))
        assert len(set(configs)) == len(configs)
    assert sorted(r.guarded_string.dups for r in runs) == [0, 1]


def test_run_cap(one_switch):
    a = thompson(Star(Dup()), one_switch, semirings.Boolean)
    with pytest.raises(ResourceCapError):
        list(enumerate_cycle_free_runs(a, run_cap=1))


def test_safe_with_total(one_switch):
    a = thompson(Star(Weigh(Arctic(0), Dup())), one_switch, Arctic)
    verdict = check_safety(a, Arctic(0))
    assert verdict.kind == SAFE and verdict.holds
    assert verdict.total_weight == Arctic(0)
    assert verdict.witness is None


def test_first_witness_by_dup_count(one_switch):
    a = thompson(Star(Weigh(Arctic(3), Dup())), one_switch, Arctic)
    verdict = check_safety(a, Arctic(5))
    assert verdict.kind == UNSAFE and not verdict.holds
    assert verdict.total_weight == Arctic(semirings.INF)
    w = verdict.witness
    assert w.guarded_string.dups == 2
    assert w.weight == Arctic(6)
    assert eval_weight(a, w.input_packet, w.history) == w.weight


def test_witness_packet_order(two_switches):
    sr = semirings.ProbUnion
    p = Choice(
        Weigh(sr(Fraction(1, 2)), Dup()), Seq(Assign(0, 1), Weigh(sr(Fraction(1, 4)), Dup()))
    )
    verdict = check_safety(thompson(p, two_switches, sr), sr(Fraction(1, 5)))
    assert verdict.kind == UNSAFE
    assert verdict.witness.guarded_string.packets == ((0,), (0,), (0,))
    assert verdict.witness.weight == sr(Fraction(1, 2))


def test_no_witness_within_cap(one_switch):
    a = thompson(Star(Weigh(Arctic(1), Dup())), one_switch, Arctic)
    with pytest.raises(ResourceCapError):
        check_safety(a, Arctic(5), dup_length_cap=3)


def test_reachable(two_switches):
    p = Seq(Weigh(Tropical(5), Dup()), Choice(Assign(0, 1), Weigh(Tropical(1), Dup())))
    a = thompson(p, two_switches, Tropical)
    verdict = check_reachability(a, Tropical(7))
    assert verdict.kind == REACHABLE and verdict.holds
    w = verdict.witness
    assert Tropical(7).leq(w.weight)
    assert accept_weight(a, w.guarded_string) == w.weight


def test_unreachable(two_switches):
    p = Seq(Weigh(Tropical(5), Dup()), Choice(Assign(0, 1), Weigh(Tropical(1), Dup())))
    verdict = check_reachability(thompson(p, two_switches, Tropical), Tropical(3))
    assert verdict.kind == UNREACHABLE and not verdict.holds
    assert verdict.witness is None


def test_drop_unreachable(one_switch):
    sr = semirings.Boolean
    assert check_reachability(thompson(DROP, one_switch, sr), sr.one).kind == UNREACHABLE


def test_reach_through_loop(two_switches):
    sr = Viterbi
    loop = Star(Seq(Weigh(sr(Fraction(9, 10)), Assign(0, 1)), Dup()))
    a = thompson(Seq(loop, Filter(FieldTest(0, 1))), two_switches, sr)
    verdict = check_reachability(a, sr(Fraction(4, 5)))
    assert verdict.holds
    assert verdict.witness.guarded_string.packets == ((0,), (1,), (1,))
    assert verdict.witness.weight == sr(Fraction(9, 10))


@pytest.mark.parametrize("name", ["arctic", "prob-union", "boolean"])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_safe_bound_covers_short_strings(name, data):
    schema = tiny_schema()
    sr = semirings.get(name)
    a = thompson(data.draw(policies(schema, name, max_leaves=4)), schema, sr)
    total = total_weight(a)
    for x in guarded_strings(schema, max_dups=2):
        assert accept_weight(a, x).leq(total)


@pytest.mark.parametrize("name", ["tropical", "viterbi", "bottleneck", "security"])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_loops_never_help(name, data):
    """Every run weighs at most its cycle-free counterpart."""
    schema = tiny_schema()
    sr = semirings.get(name)
    a = thompson(data.draw(policies(schema, name, max_leaves=4)), schema, sr)
    best = sr.zero
    for run in enumerate_cycle_free_runs(a, run_cap=100000):
        x = run.guarded_string
        best = best + accept_weight(a, x)
    for x in guarded_strings(schema, max_dups=2):
        assert accept_weight(a, x).leq(best)
