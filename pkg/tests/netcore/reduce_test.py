import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wnetkat import semirings
from wnetkat.automata import accept_weight, thompson
from wnetkat.denotational import eval_approx
from wnetkat.errors import ResourceCapError
from wnetkat.netcore import (
    DROP,
    Assign,
    CompleteTest,
    Dup,
    Filter,
    Not,
    Star,
    Test as FieldTest,
    Weigh,
    reduce,
)
from wnetkat.netcore.syntax import iter_nodes
from wnetkat.utils.test_utils import guarded_strings, policies, tiny_schema


def test_filter_becomes_complete_tests():
    schema = tiny_schema()
    r = reduce(Filter(Not(FieldTest(0, 0))), schema, semirings.Boolean)
    tests = [n.packet for n in iter_nodes(r) if isinstance(n, CompleteTest)]
    assert tests == [(1, 0), (1, 1)]


def test_drop_is_zero_weighted():
    schema = tiny_schema()
    r = reduce(DROP, schema, semirings.Tropical)
    assert isinstance(r, Weigh) and r.weight == semirings.Tropical.zero
    assert isinstance(r.policy, CompleteTest)


def test_cap():
    schema = tiny_schema()
    with pytest.raises(ResourceCapError):
        reduce(Dup(), schema, semirings.Boolean, packet_cap=3)


@pytest.mark.parametrize("name", ["boolean", "tropical", "viterbi", "arctic", "security"])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_reduced_automaton_agrees(name, data):
    schema = tiny_schema()
    sr = semirings.get(name)
    p = data.draw(policies(schema, name, max_leaves=4))
    r = reduce(p, schema, sr)
    assert not any(isinstance(n, (Filter, Assign)) for n in iter_nodes(r))
    a, b = thompson(p, schema, sr), thompson(r, schema, sr)
    for x in guarded_strings(schema, max_dups=2):
        assert accept_weight(a, x) == accept_weight(b, x)


def test_star_is_kept():
    schema = tiny_schema()
    r = reduce(Star(Assign(0, 1)), schema, semirings.Boolean)
    assert isinstance(r, Star)


@pytest.mark.parametrize("name", ["viterbi", "nat-inf", "prob-union"])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_reduction_is_sound(name, data):
    schema = tiny_schema()
    sr = semirings.get(name)
    p = data.draw(policies(schema, name, max_leaves=4))
    r = reduce(p, schema, sr)
    n = data.draw(st.integers(0, 3))
    for alpha in schema.packets():
        assert eval_approx(p, n, (alpha,), schema, sr, max_history=3) == eval_approx(
            r, n, (alpha,), schema, sr, max_history=3
        )
