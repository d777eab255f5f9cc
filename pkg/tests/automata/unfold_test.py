from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wnetkat import semirings
from wnetkat.automata import ENTRY, EXIT, accept_weight, thompson, unfold
from wnetkat.netcore import DROP, SKIP, Dup, FieldSchema, Seq, Star, Weigh
from wnetkat.utils.test_utils import guarded_strings, policies, tiny_schema
from wnetkat.verify import total_weight

Arctic = semirings.Arctic


@pytest.fixture(scope="module")
def one_switch():
    return FieldSchema([("sw", ["A"])])


@pytest.mark.parametrize("name", ["viterbi", "arctic", "nat-inf"])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_unfolding_accepts_alike(name, data):
    schema = tiny_schema()
    sr = semirings.get(name)
    a = thompson(data.draw(policies(schema, name, max_leaves=4)), schema, sr)
    u = unfold(a)
    assert u.num_states == 4 * a.num_states + 2
    for x in guarded_strings(schema, max_dups=2):
        assert u.accept_weight(x.packets) == accept_weight(a, x)


def test_configurations(one_switch):
    sr = semirings.Boolean
    u = unfold(thompson(Dup(), one_switch, sr))
    states = list(u.states())
    assert states == [ENTRY, (0, (0,)), (1, (0,)), EXIT]
    assert u.step(ENTRY, (0,)) == {(0, (0,)): sr.one}
    assert u.step((1, (0,)), (0,)) == {EXIT: sr.one}
    assert u.step(EXIT, (0,)) == {}
    assert u.delta((0,)).nonzero() == {
        (ENTRY, (0, (0,))): sr.one,
        ((0, (0,)), (1, (0,))): sr.one,
        ((1, (0,)), EXIT): sr.one,
    }


@pytest.mark.parametrize(
    "name, policy, expected",
    [
        ("boolean", DROP, False),
        ("boolean", Seq(SKIP, Seq(Dup(), SKIP)), True),
        ("arctic", Star(Weigh(Arctic(0), Dup())), 0),
        ("arctic", Star(Weigh(Arctic(3), Dup())), semirings.INF),
        ("viterbi", Weigh(semirings.Viterbi(Fraction(1, 2)), Dup()), Fraction(1, 2)),
    ],
)
def test_total_weight(one_switch, name, policy, expected):
    sr = semirings.get(name)
    assert total_weight(thompson(policy, one_switch, sr)) == sr(expected)
