"""Weighted NetKAT automata and their Thompson construction.

An automaton has states ``0 .. n-1``, an initial weighting ``ι`` and two
families indexed by packet pairs: transitions ``Δ_{αβ}`` (state matrices)
and outputs ``Λ_{αβ}`` (state vectors). Families are kept sparse and built
lazily one input packet at a time:

    transition_row(α) = {β: {q: {q': Δ_{αβ}(q, q')}}}
    output_row(α)     = {β: {q: Λ_{αβ}(q)}}

Rows are memoised per automaton. Sub-automata of a construction share their
memo tables with every automaton built on top of them.
"""
import logging
from functools import lru_cache

from ..errors import ResourceCapError
from ..netcore.syntax import (
    Assign,
    Choice,
    CompleteAssign,
    CompleteTest,
    Dup,
    Filter,
    Seq,
    Star,
    Weigh,
    eval_predicate,
)
from ..weighting import Weighting
from .closure import closure_row
from .matrix import WeightingMatrix

logger = logging.getLogger(__name__)


def _acc(d, key, w):
    d[key] = d[key] + w if key in d else w


def _acc_matrix(row, beta, q, q2, w):
    _acc(row.setdefault(beta, {}).setdefault(q, {}), q2, w)


def _acc_vector(row, beta, q, w):
    _acc(row.setdefault(beta, {}), q, w)


class Wnka:
    """Base class of weighted NetKAT automata.

    Subclasses set ``num_states``, ``initial`` (``{q: weight}``) and
    ``labels`` and implement ``_transition_row`` and ``_output_row``.

    Args:
        schema (FieldSchema): Schema of the packets.
        semiring (type): Semiring of the weights.
    """

    def __init__(self, schema, semiring):
        self.schema = schema
        self.semiring = semiring
        self.transition_row = lru_cache(maxsize=None)(self._transition_row)
        self.output_row = lru_cache(maxsize=None)(self._output_row)
        self.initial_transition_row = lru_cache(maxsize=None)(self._initial_transition_row)
        self.initial_output_row = lru_cache(maxsize=None)(self._initial_output_row)

    def _transition_row(self, alpha):
        raise NotImplementedError

    def _output_row(self, alpha):
        raise NotImplementedError

    def _initial_transition_row(self, gamma):
        """``{β: {q': (ι × Δ_{γβ})(q')}}``."""
        out = {}
        row = self.transition_row(gamma)
        for beta, mat in row.items():
            for q, w0 in self.initial.items():
                for q2, w in mat.get(q, {}).items():
                    _acc_vector(out, beta, q2, w0 * w)
        return _prune(out)

    def _initial_output_row(self, gamma):
        """``{β: ι × Λ_{γβ}}``."""
        out = {}
        for beta, vec in self.output_row(gamma).items():
            for q, w0 in self.initial.items():
                if q in vec:
                    _acc(out, beta, w0 * vec[q])
        return {b: w for b, w in out.items() if w}

    def delta(self, alpha, beta):
        """``Δ_{αβ}`` as a :class:`WeightingMatrix` over the states."""
        states = range(self.num_states)
        entries = {
            (q, q2): w
            for q, targets in self.transition_row(alpha).get(beta, {}).items()
            for q2, w in targets.items()
        }
        return WeightingMatrix.from_entries(self.semiring, states, states, entries)

    def lam(self, alpha, beta):
        """``Λ_{αβ}`` as a weighting over states."""
        return Weighting(self.semiring, self.output_row(alpha).get(beta, {}))

    def initial_weighting(self):
        return Weighting(self.semiring, self.initial)

    def __repr__(self):
        return f"{type(self).__name__}(states={self.num_states}, semiring={self.semiring.name})"


def _prune(row):
    """Drop zero entries and empty maps from a nested row."""
    out = {}
    for beta, inner in row.items():
        if isinstance(inner, dict):
            inner = _prune(inner)
            if inner:
                out[beta] = inner
        elif inner:
            out[beta] = inner
    return out


class PrimitiveWnka(Wnka):
    """Single-state automaton of a test or assignment: ``Λ_{αβ}(♥) = [β ∈ step(α)]``."""

    num_states = 1

    def __init__(self, node, schema, semiring):
        super().__init__(schema, semiring)
        self.node = node
        self.initial = {0: semiring.one}
        self.labels = [f"{type(node).__name__.lower()}♥"]

    def step(self, alpha):
        node = self.node
        if isinstance(node, Filter):
            return alpha if eval_predicate(node.pred, alpha) else None
        if isinstance(node, Assign):
            return self.schema.assign(alpha, node.field, node.value)
        if isinstance(node, CompleteTest):
            return alpha if alpha == node.packet else None
        if isinstance(node, CompleteAssign):
            return node.packet
        raise TypeError(f"Not a primitive policy: {node!r}")

    def _transition_row(self, alpha):
        return {}

    def _output_row(self, alpha):
        beta = self.step(alpha)
        return {} if beta is None else {beta: {0: self.semiring.one}}


class DupWnka(Wnka):
    """Two states: ``♥ -(α,α)-> ♣`` and ``Λ_{αα}(♣) = 1``."""

    num_states = 2

    def __init__(self, schema, semiring):
        super().__init__(schema, semiring)
        self.initial = {0: semiring.one}
        self.labels = ["dup♥", "dup♣"]

    def _transition_row(self, alpha):
        return {alpha: {0: {1: self.semiring.one}}}

    def _output_row(self, alpha):
        return {alpha: {1: self.semiring.one}}


class WeighWnka(Wnka):
    """``r ⊙ p``: the initial weighting of ``p`` scaled by ``r``."""

    def __init__(self, weight, inner):
        super().__init__(inner.schema, inner.semiring)
        self.inner = inner
        self.num_states = inner.num_states
        self.initial = {q: weight * w for q, w in inner.initial.items() if weight * w}
        self.labels = inner.labels

    def _transition_row(self, alpha):
        return self.inner.transition_row(alpha)

    def _output_row(self, alpha):
        return self.inner.output_row(alpha)


class ChoiceWnka(Wnka):
    """``p ⊕ q``: both automata side by side, states of ``q`` shifted."""

    def __init__(self, left, right):
        super().__init__(left.schema, left.semiring)
        self.left, self.right = left, right
        self.shift = left.num_states
        self.num_states = left.num_states + right.num_states
        self.initial = dict(left.initial)
        for q, w in right.initial.items():
            self.initial[q + self.shift] = w
        self.labels = left.labels + right.labels

    def _transition_row(self, alpha):
        out = {}
        for beta, mat in self.left.transition_row(alpha).items():
            out[beta] = dict(mat)
        for beta, mat in self.right.transition_row(alpha).items():
            target = out.setdefault(beta, {})
            for q, targets in mat.items():
                target[q + self.shift] = {q2 + self.shift: w for q2, w in targets.items()}
        return out

    def _output_row(self, alpha):
        out = {}
        for beta, vec in self.left.output_row(alpha).items():
            out[beta] = dict(vec)
        for beta, vec in self.right.output_row(alpha).items():
            target = out.setdefault(beta, {})
            for q, w in vec.items():
                target[q + self.shift] = w
        return out


class SeqWnka(Wnka):
    """``p ; q``: outputs of ``p`` at an intermediate packet ``γ`` hand over to
    the first step of ``q`` from ``γ``."""

    def __init__(self, left, right):
        super().__init__(left.schema, left.semiring)
        self.left, self.right = left, right
        self.shift = left.num_states
        self.num_states = left.num_states + right.num_states
        self.initial = dict(left.initial)
        self.labels = left.labels + right.labels

    def _transition_row(self, alpha):
        out = {}
        for beta, mat in self.left.transition_row(alpha).items():
            out[beta] = {q: dict(targets) for q, targets in mat.items()}
        # Bridge: Σ_γ Λ¹_{αγ}(q) ⊗ (ι² × Δ²_{γβ})
        for gamma, vec in self.left.output_row(alpha).items():
            bridge = self.right.initial_transition_row(gamma)
            for beta, targets in bridge.items():
                for q, w1 in vec.items():
                    for q2, w2 in targets.items():
                        _acc_matrix(out, beta, q, q2 + self.shift, w1 * w2)
        for beta, mat in self.right.transition_row(alpha).items():
            target = out.setdefault(beta, {})
            for q, targets in mat.items():
                target[q + self.shift] = {q2 + self.shift: w for q2, w in targets.items()}
        return _prune(out)

    def _output_row(self, alpha):
        out = {}
        for gamma, vec in self.left.output_row(alpha).items():
            for beta, w2 in self.right.initial_output_row(gamma).items():
                for q, w1 in vec.items():
                    _acc_vector(out, beta, q, w1 * w2)
        for beta, vec in self.right.output_row(alpha).items():
            target = out.setdefault(beta, {})
            for q, w in vec.items():
                target[q + self.shift] = w
        return _prune(out)


class StarWnka(Wnka):
    """``p*``: a fresh state ``♥`` plus the states of ``p``.

    Dup-free iterations of ``p`` are summed up front in
    ``Λ♥ = (ι ⊠ Λ)*``, the star of the packet-indexed matrix
    ``(α, β) -> ι × Λ_{αβ}``. Runs re-enter ``p`` through
    ``Λ♥ × ι × Δ`` after each output of ``p``.
    """

    def __init__(self, inner, node_cap=None):
        super().__init__(inner.schema, inner.semiring)
        self.inner = inner
        self.node_cap = node_cap
        self.heart = inner.num_states
        self.num_states = inner.num_states + 1
        self.initial = {self.heart: self.semiring.one}
        self.labels = inner.labels + ["star♥"]
        self.heart_row = lru_cache(maxsize=None)(self._heart_row)
        self.loop_back_row = lru_cache(maxsize=None)(self._loop_back_row)

    def _heart_row(self, alpha):
        """``{β: Λ♥_{αβ}}``."""
        return closure_row(
            alpha, self.inner.initial_output_row, self.semiring, node_cap=self.node_cap
        )

    def _loop_back_row(self, alpha):
        """``{β: {q': Σ_γ Λ♥_{αγ} ⊗ (ι × Δ_{γβ})(q')}}``."""
        out = {}
        for gamma, wh in self.heart_row(alpha).items():
            for beta, targets in self.inner.initial_transition_row(gamma).items():
                for q2, w in targets.items():
                    _acc_vector(out, beta, q2, wh * w)
        return _prune(out)

    def _transition_row(self, alpha):
        out = {}
        for beta, mat in self.inner.transition_row(alpha).items():
            out[beta] = {q: dict(targets) for q, targets in mat.items()}
        for gamma, vec in self.inner.output_row(alpha).items():
            for beta, targets in self.loop_back_row(gamma).items():
                for q, w1 in vec.items():
                    for q2, w2 in targets.items():
                        _acc_matrix(out, beta, q, q2, w1 * w2)
        for beta, targets in self.loop_back_row(alpha).items():
            out.setdefault(beta, {})[self.heart] = dict(targets)
        return _prune(out)

    def _output_row(self, alpha):
        out = {}
        for gamma, vec in self.inner.output_row(alpha).items():
            for beta, wh in self.heart_row(gamma).items():
                for q, w1 in vec.items():
                    _acc_vector(out, beta, q, w1 * wh)
        for beta, wh in self.heart_row(alpha).items():
            _acc_vector(out, beta, self.heart, wh)
        return _prune(out)


def thompson(p, schema, semiring, packet_cap=100000):
    """Compile policy ``p`` into an automaton.

    Tests and assignments get one state, ``dup`` two, and every star adds one
    fresh state, so the automaton is linear in the size of ``p``.

    Args:
        p (Policy): Policy over ``schema`` with weights in ``semiring``.
        schema (FieldSchema): Schema of the packets.
        semiring (type): Semiring of the weights.
        packet_cap (int): Largest packet space the star closures may index.

    Returns:
        :class:`Wnka`

    Raises:
        ResourceCapError: if ``p`` iterates over a packet space above
            ``packet_cap``.
    """

    def build(node):
        if isinstance(node, (Filter, Assign, CompleteTest, CompleteAssign)):
            return PrimitiveWnka(node, schema, semiring)
        if isinstance(node, Dup):
            return DupWnka(schema, semiring)
        if isinstance(node, Weigh):
            return WeighWnka(node.weight, build(node.policy))
        if isinstance(node, Choice):
            return ChoiceWnka(build(node.left), build(node.right))
        if isinstance(node, Seq):
            return SeqWnka(build(node.left), build(node.right))
        if isinstance(node, Star):
            if schema.packet_count > packet_cap:
                raise ResourceCapError(
                    f"Iteration over {schema.packet_count} packets exceeds the cap of {packet_cap}"
                )
            return StarWnka(build(node.policy), node_cap=packet_cap)
        raise TypeError(f"Not a policy: {node!r}")

    automaton = build(p)
    logger.debug("compiled automaton with %d states", automaton.num_states)
    return automaton


def accept_weight(a, x):
    """``ι × Δ_{π₀π₁} × … × Δ_{πₙ₋₂πₙ₋₁} × Λ_{πₙ₋₁πₙ}`` for ``x = π₀ … πₙ``."""
    packets = x.packets
    vec = dict(a.initial)
    for alpha, beta in zip(packets[:-2], packets[1:-1]):
        mat = a.transition_row(alpha).get(beta, {})
        nxt = {}
        for q, w in vec.items():
            for q2, x2 in mat.get(q, {}).items():
                _acc(nxt, q2, w * x2)
        vec = {q: w for q, w in nxt.items() if w}
        if not vec:
            return a.semiring.zero
    out = a.output_row(packets[-2]).get(packets[-1], {})
    total = a.semiring.zero
    for q, w in vec.items():
        if q in out:
            total = total + w * out[q]
    return total
