import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wnetkat import semirings
from wnetkat.automata import accept_weight, thompson
from wnetkat.automata.wnka import DupWnka, PrimitiveWnka, StarWnka
from wnetkat.denotational import eval_approx
from wnetkat.errors import ResourceCapError
from wnetkat.guarded import gs, gs_to_io, language_weight_oracle
from wnetkat.netcore import Assign, Dup, FieldSchema, Filter, Seq, Star, Test as FieldTest, Weigh
from wnetkat.netcore.syntax import node_counts
from wnetkat.utils.test_utils import guarded_strings, policies, star_free_policies, tiny_schema

NatInf = semirings.NatInf

EXACT = ["boolean", "tropical", "arctic", "bottleneck", "security", "viterbi"]
LOWER_BOUNDED = ["nat-inf", "real", "prob-union"]

ORACLE_DEPTH = 12


@pytest.fixture(scope="module")
def one_switch():
    return FieldSchema([("sw", ["A"])])


@pytest.mark.parametrize("n", range(7))
def test_counting_dups(one_switch, n):
    """``(3 ⊙ dup)*`` weighs the string with n dups 3ⁿ."""
    a = thompson(Star(Weigh(NatInf(3), Dup())), one_switch, NatInf)
    x = gs(*[(0,)] * (n + 2))
    assert accept_weight(a, x) == NatInf(3 ** n)


def test_primitive_automata():
    sr = semirings.Boolean
    schema = FieldSchema([("sw", ["A", "B"])])
    a = thompson(Assign(0, 1), schema, sr)
    assert isinstance(a, PrimitiveWnka)
    assert a.num_states == 1
    assert a.output_row((0,)) == {(1,): {0: sr.one}}
    assert a.transition_row((0,)) == {}
    f = thompson(Filter(FieldTest(0, 1)), schema, sr)
    assert f.output_row((0,)) == {}
    d = thompson(Dup(), schema, sr)
    assert isinstance(d, DupWnka)
    assert d.delta((0,), (0,)).nonzero() == {(0, 1): sr.one}
    assert d.lam((1,), (1,)).at(1) == sr.one
    assert not d.lam((1,), (0,))


@pytest.mark.parametrize("name", ["viterbi", "nat-inf"])
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_state_count(name, data):
    schema = tiny_schema()
    p = data.draw(policies(schema, name))
    counts = node_counts(p)
    a = thompson(p, schema, semirings.get(name))
    assert a.num_states == counts["primitives"] + counts["dups"] + counts["stars"]
    assert len(a.labels) == a.num_states


@pytest.mark.parametrize("name", EXACT + LOWER_BOUNDED)
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_star_free_matches_language(name, data):
    schema = tiny_schema()
    sr = semirings.get(name)
    p = data.draw(star_free_policies(schema, sr, max_leaves=6))
    a = thompson(p, schema, sr)
    for x in guarded_strings(schema, max_dups=1):
        assert accept_weight(a, x) == language_weight_oracle(p, x, 0, schema, sr)


def _approx_by_input(p, schema, sr):
    return {
        alpha: eval_approx(p, ORACLE_DEPTH, (alpha,), schema, sr, max_history=3)
        for alpha in schema.packets()
    }


@pytest.mark.parametrize("name", EXACT)
@settings(max_examples=65, deadline=None)
@given(data=st.data())
def test_matches_approximants(name, data):
    schema = tiny_schema()
    sr = semirings.get(name)
    p = data.draw(policies(schema, name, max_leaves=5))
    a = thompson(p, schema, sr)
    approx = _approx_by_input(p, schema, sr)
    for x in guarded_strings(schema, max_dups=2):
        packet, history = gs_to_io(x)
        assert accept_weight(a, x) == approx[packet].at(history)


@pytest.mark.parametrize("name", LOWER_BOUNDED)
@settings(max_examples=65, deadline=None)
@given(data=st.data())
def test_approximants_bound_from_below(name, data):
    schema = tiny_schema()
    sr = semirings.get(name)
    p = data.draw(policies(schema, name, max_leaves=5))
    a = thompson(p, schema, sr)
    approx = _approx_by_input(p, schema, sr)
    for x in guarded_strings(schema, max_dups=2):
        packet, history = gs_to_io(x)
        assert approx[packet].at(history).leq(accept_weight(a, x))


def test_star_heart_state(one_switch):
    sr = semirings.Viterbi
    a = thompson(Star(Assign(0, 0)), one_switch, sr)
    assert isinstance(a, StarWnka)
    assert a.labels[-1] == "star♥"
    assert a.initial == {a.heart: sr.one}
    assert a.output_row((0,)) == {(0,): {0: sr.one, a.heart: sr.one}}


def test_weights_scale_initial(one_switch):
    sr = semirings.Tropical
    a = thompson(Weigh(sr(2), Seq(Dup(), Weigh(sr(5), Dup()))), one_switch, sr)
    assert accept_weight(a, gs((0,), (0,), (0,), (0,))) == sr(7)
    assert accept_weight(a, gs((0,), (0,), (0,))) == sr.zero


def test_packet_cap():
    schema = tiny_schema()
    with pytest.raises(ResourceCapError):
        thompson(Star(Dup()), schema, semirings.Boolean, packet_cap=3)
    # Star-free policies never index the packet space.
    thompson(Seq(Dup(), Dup()), schema, semirings.Boolean, packet_cap=3)
