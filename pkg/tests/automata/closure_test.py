import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wnetkat import semirings
from wnetkat.automata import WeightingMatrix, closure_row, mat_star
from wnetkat.automata.closure import Tarjan, explore
from wnetkat.errors import ResourceCapError
from wnetkat.utils.test_utils import matrices


@pytest.mark.parametrize(
    "name", ["boolean", "tropical", "arctic", "viterbi", "bottleneck", "security", "nat-inf"]
)
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_row_matches_dense_star(name, data):
    sr = semirings.get(name)
    n, entries = data.draw(matrices(name, max_size=6))
    source = data.draw(st.integers(0, n - 1))
    dense = mat_star(WeightingMatrix.from_entries(sr, range(n), range(n), entries))

    def successors(v):
        return {j: entries[(v, j)] for j in range(n)}

    row = closure_row(source, successors, sr)
    for j in range(n):
        assert row.get(j, sr.zero) == dense[source, j]


def test_only_reachable_part_is_explored():
    seen = []

    def successors(v):
        seen.append(v)
        return {v + 1: semirings.Boolean.one} if v < 3 else {}

    row = closure_row(1, successors, semirings.Boolean)
    assert sorted(row) == [1, 2, 3]
    assert sorted(seen) == [1, 2, 3]


def test_self_loop_is_starred():
    sr = semirings.NatInf
    row = closure_row("a", lambda v: {"a": sr(1), "b": sr(2)} if v == "a" else {}, sr)
    assert row == {"a": sr(semirings.INF), "b": sr(semirings.INF)}


def test_node_cap():
    with pytest.raises(ResourceCapError):
        explore(0, lambda v: {v + 1: semirings.Boolean.one}, node_cap=10)


def test_tarjan_reverse_topological():
    graph = {1: [2], 2: [3, 1], 3: [4], 4: [5], 5: [4]}
    comps = [sorted(c) for c in Tarjan(graph).components()]
    assert comps == [[4, 5], [3], [1, 2]]


def test_tarjan_deep_chain():
    depth = 20000
    graph = {i: [i + 1] for i in range(depth)}
    comps = Tarjan(graph).components()
    assert len(comps) == depth + 1
    assert comps[0] == [depth]
