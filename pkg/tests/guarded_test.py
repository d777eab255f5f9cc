import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wnetkat import semirings
from wnetkat.automata import accept_weight, thompson
from wnetkat.denotational import eval_star_free
from wnetkat.guarded import (
    GuardedString,
    gs,
    gs_concat,
    gs_to_io,
    history_to_gs,
    language_weight_oracle,
    lifted_concat,
    parse_gs,
)
from wnetkat.netcore import Assign, Dup, FieldSchema, Filter, Seq, Star, Test as FieldTest, Weigh
from wnetkat.utils.test_utils import guarded_strings, star_free_policies, tiny_schema
from wnetkat.weighting import Weighting

Viterbi = semirings.Viterbi


@pytest.fixture(scope="module")
def one_bit():
    return FieldSchema([("f", ["a", "b"])])


@pytest.fixture(scope="module")
def one_trit():
    return FieldSchema([("f", ["a", "b", "c"])])


def test_needs_two_packets():
    with pytest.raises(ValueError):
        gs((0,))


def test_accessors():
    x = gs((0,), (1,), (0,), (1,))
    assert x.first == (0,) and x.last == (1,)
    assert x.dups == 2
    assert len(x) == 4


def test_concat():
    a, b = (0,), (1,)
    assert gs_concat(gs(a, b), gs(b, a, b)) == gs(a, a, b)
    assert gs_concat(gs(a, b), gs(a, b)) is None


@pytest.mark.parametrize("schema_name", ["one_bit", "one_trit"])
def test_concat_associative(schema_name, request):
    strings = guarded_strings(request.getfixturevalue(schema_name), max_dups=1)
    for x, y, z in itertools.product(strings, repeat=3):
        xy, yz = gs_concat(x, y), gs_concat(y, z)
        left = None if xy is None else gs_concat(xy, z)
        right = None if yz is None else gs_concat(x, yz)
        assert left == right


def test_dup_free_concat_stays_dup_free(one_bit):
    two = guarded_strings(one_bit, max_dups=0)
    for x, y in itertools.product(two, repeat=2):
        xy = gs_concat(x, y)
        assert xy is None or xy.dups == 0
    for x, y in itertools.product(guarded_strings(one_bit, max_dups=2), repeat=2):
        xy = gs_concat(x, y)
        assert xy is None or xy.dups == x.dups + y.dups


def test_io_inverse(one_bit):
    for x in guarded_strings(one_bit, max_dups=2):
        packet, history = gs_to_io(x)
        assert len(history) == x.dups + 1
        assert history_to_gs(packet, history) == x


def test_empty_history():
    with pytest.raises(ValueError):
        history_to_gs((0,), ())


def test_format_parse(one_bit):
    x = gs((0,), (1,), (1,), (0,))
    assert x.format(one_bit) == "{f=a} | {f=b} dup {f=b} dup {f=a}"
    for y in guarded_strings(one_bit, max_dups=2):
        assert parse_gs(y.format(one_bit), one_bit) == y


def test_lifted_concat():
    a, b = (0,), (1,)
    half, quarter = Viterbi(Fraction(1, 2)), Viterbi(Fraction(1, 4))
    m1 = Weighting(Viterbi, {gs(a, b): half, gs(a, a): quarter})
    m2 = Weighting(Viterbi, {gs(b, b, a): half, gs(a, b): Viterbi.one})
    out = lifted_concat(m1, m2)
    assert out == Weighting(Viterbi, {gs(a, b, a): quarter, gs(a, b): quarter})


def test_oracle_primitives(one_bit):
    a, b = (0,), (1,)
    sr = semirings.Boolean
    assert language_weight_oracle(Dup(), gs(a, a, a), 0, one_bit, sr) == sr.one
    assert language_weight_oracle(Dup(), gs(a, a), 0, one_bit, sr) == sr.zero
    assert language_weight_oracle(Assign(0, 1), gs(a, b), 0, one_bit, sr) == sr.one
    assert language_weight_oracle(Filter(FieldTest(0, 1)), gs(a, a), 0, one_bit, sr) == sr.zero
    p = Seq(Dup(), Assign(0, 1))
    assert language_weight_oracle(p, gs(a, a, b), 0, one_bit, sr) == sr.one


@pytest.mark.parametrize("name", ["viterbi", "nat-inf", "tropical", "prob-union"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_oracle_matches_evaluation(name, data):
    """Language weights agree with the history semantics on star-free policies."""
    schema = tiny_schema()
    sr = semirings.get(name)
    p = data.draw(star_free_policies(schema, sr, max_leaves=5))
    for x in guarded_strings(schema, max_dups=1):
        packet, history = gs_to_io(x)
        expected = eval_star_free(p, (packet,), schema, sr).at(history)
        assert language_weight_oracle(p, x, 0, schema, sr) == expected


@pytest.mark.parametrize("n", range(4))
def test_oracle_unrolls_stars(one_bit, n):
    sr = semirings.NatInf
    p = Star(Weigh(sr(3), Dup()))
    x = gs(*[(0,)] * (n + 2))
    assert language_weight_oracle(p, x, 3, one_bit, sr) == sr(3 ** n)
    assert accept_weight(thompson(p, one_bit, sr), x) == sr(3 ** n)
    if n:
        # One unrolling short of the dup count.
        assert language_weight_oracle(p, x, n - 1, one_bit, sr) == sr.zero


def test_oracle_star_needs_equal_packets(one_bit):
    sr = semirings.NatInf
    p = Star(Weigh(sr(3), Dup()))
    assert language_weight_oracle(p, gs((0,), (0,), (1,)), 3, one_bit, sr) == sr.zero
    assert language_weight_oracle(p, gs((0,), (1,)), 3, one_bit, sr) == sr.zero
