"""Single rows of the star of a sparse, implicitly given matrix.

The matrix is given by a successor function ``v -> {w: weight}``. Only the
part reachable from the source is explored. Strongly connected components
are starred densely; weights then flow along the component DAG.
"""
import logging

import numpy as np

from ..errors import ResourceCapError
from .matrix import star_array

logger = logging.getLogger(__name__)


class Tarjan(object):
    """Strongly connected components of ``graph = {v: iterable of successors}``.

    Iterative, so deep graphs do not hit the recursion limit. Components come
    out in reverse topological order: a component is emitted after every
    component reachable from it.
    """

    def __init__(self, graph):
        self._graph = graph
        self._stack = []
        self._stack_set = set()
        self._index = {}
        self._lowlink = {}
        self._nonrecursive_stack = []
        self._result = []

    def _tarjan_head(self, v):
        self._index[v] = len(self._index)
        self._lowlink[v] = self._index[v]
        self._stack.append(v)
        self._stack_set.add(v)
        it = iter(self._graph.get(v, ()))
        self._nonrecursive_stack.append((it, False, v, None))

    def _tarjan_body(self, it, v):
        for w in it:
            if w not in self._index:
                self._nonrecursive_stack.append((it, True, v, w))
                self._tarjan_head(w)
                return
            if w in self._stack_set:
                self._lowlink[v] = min(self._lowlink[v], self._index[w])
        if self._lowlink[v] == self._index[v]:
            scc = []
            w = None
            while v != w:
                w = self._stack.pop()
                scc.append(w)
                self._stack_set.remove(w)
            self._result.append(scc)

    def components(self):
        for v in self._graph:
            if v in self._index:
                continue
            self._tarjan_head(v)
            while self._nonrecursive_stack:
                it, inside, v, w = self._nonrecursive_stack.pop()
                if inside:
                    self._lowlink[v] = min(self._lowlink[w], self._lowlink[v])
                self._tarjan_body(it, v)
        return self._result


def explore(source, successors, node_cap=None):
    """Successor map of everything reachable from ``source``."""
    graph = {}
    todo = [source]
    while todo:
        v = todo.pop()
        if v in graph:
            continue
        succ = {w: x for w, x in successors(v).items() if x}
        graph[v] = succ
        if node_cap is not None and len(graph) > node_cap:
            raise ResourceCapError(f"Closure explored more than {node_cap} nodes")
        todo.extend(w for w in succ if w not in graph)
    return graph


def closure_row(source, successors, semiring, node_cap=None):
    """Row ``source`` of ``M*`` for the matrix ``M[v, w] = successors(v)[w]``.

    Args:
        source: Row label.
        successors (callable): ``v -> {w: weight}``.
        semiring (type): Semiring of the weights.
        node_cap (int, optional): Largest number of reachable nodes.

    Returns:
        dict: ``{w: M*[source, w]}`` restricted to non-zero entries.
    """
    graph = explore(source, successors, node_cap)
    comps = Tarjan(graph).components()
    comps.reverse()
    logger.debug("closure from %r: %d nodes, %d components", source, len(graph), len(comps))
    incoming = {source: semiring.one}
    row = {}
    for comp in comps:
        members = {v: i for i, v in enumerate(comp)}
        if len(comp) == 1 and comp[0] not in graph[comp[0]]:
            w = incoming.get(comp[0])
            if not w:
                continue
            values = {comp[0]: w}
        else:
            inner = np.empty((len(comp), len(comp)), dtype=object)
            inner.fill(semiring.zero)
            for v, i in members.items():
                for w, x in graph[v].items():
                    j = members.get(w)
                    if j is not None:
                        inner[i, j] = x
            inner_star = star_array(inner, semiring)
            values = {}
            for v, j in members.items():
                total = semiring.zero
                for u, i in members.items():
                    w = incoming.get(u)
                    if w is not None and inner_star[i, j]:
                        total = total + w * inner_star[i, j]
                if total:
                    values[v] = total
        for v, w in values.items():
            row[v] = w
            for z, x in graph[v].items():
                if z in members:
                    continue
                contribution = w * x
                incoming[z] = incoming[z] + contribution if z in incoming else contribution
    return row
