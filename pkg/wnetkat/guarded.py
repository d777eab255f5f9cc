"""Guarded strings ``π₀ π₁ dup π₂ dup … πₙ`` and their concatenation.

A guarded string is stored as its packet sequence; the ``dup`` markers sit
between consecutive inner packets, so a string of ``k + 2`` packets holds
``k`` dups.
"""
from dataclasses import dataclass
from typing import Tuple

from .denotational import approximant
from .netcore.syntax import (
    PRIMITIVES,
    Assign,
    Choice,
    CompleteAssign,
    CompleteTest,
    Dup,
    Filter,
    Seq,
    Weigh,
    eval_predicate,
)
from .weighting import Weighting


@dataclass(frozen=True)
class GuardedString:
    packets: Tuple[tuple, ...]

    def __post_init__(self):
        if len(self.packets) < 2:
            raise ValueError("A guarded string holds at least two packets")

    @property
    def first(self):
        return self.packets[0]

    @property
    def last(self):
        return self.packets[-1]

    @property
    def dups(self):
        return len(self.packets) - 2

    def __len__(self):
        return len(self.packets)

    def format(self, schema):
        """Textual form ``{f=v} | {f=w} dup {f=u}``."""
        head = schema.format_packet(self.packets[0])
        rest = " dup ".join(schema.format_packet(p) for p in self.packets[1:])
        return f"{head} | {rest}"


def gs(*packets):
    return GuardedString(tuple(packets))


def parse_gs(text, schema):
    """Inverse of :meth:`GuardedString.format`."""
    head, _, rest = text.partition("|")
    packets = [schema.parse_packet(head)]
    packets.extend(schema.parse_packet(p) for p in rest.split("dup"))
    return GuardedString(tuple(packets))


def gs_concat(x, y):
    """Guarded concatenation ``x ⋄ y``: fuse on the shared packet, or None
    when the last packet of ``x`` differs from the first of ``y``."""
    if x.last != y.first:
        return None
    return GuardedString(x.packets[:-1] + y.packets[1:])


def lifted_concat(m1, m2):
    """``(m1 ⋄ m2)(x) = Σ_{x = x1 ⋄ x2} m1(x1) ⊗ m2(x2)``."""
    by_first = {}
    for y, w in m2.items():
        by_first.setdefault(y.first, []).append((y, w))
    out = []
    for x, v in m1.items():
        for y, w in by_first.get(x.last, ()):
            out.append((gs_concat(x, y), v * w))
    return Weighting(m1.semiring, out)


def history_to_gs(packet, history):
    """The guarded string of input ``packet`` and output ``history``: the
    history read tail to head supplies the packets after the input."""
    if not history:
        raise ValueError("Output history is empty")
    return GuardedString((packet,) + tuple(reversed(history)))


def gs_to_io(x):
    """Inverse of :func:`history_to_gs`: ``(input packet, output history)``."""
    return x.packets[0], tuple(reversed(x.packets[1:]))


def _primitive_weight(node, s, schema, semiring):
    # Languages of primitives: one step for tests and assignments, α α dup α for dup.
    one, zero = semiring.one, semiring.zero
    if isinstance(node, Dup):
        return one if len(s) == 3 and s[0] == s[1] == s[2] else zero
    if len(s) != 2:
        return zero
    alpha, beta = s
    if isinstance(node, Filter):
        return one if alpha == beta and eval_predicate(node.pred, alpha) else zero
    if isinstance(node, Assign):
        return one if beta == schema.assign(alpha, node.field, node.value) else zero
    if isinstance(node, CompleteTest):
        return one if alpha == beta == node.packet else zero
    if isinstance(node, CompleteAssign):
        return one if beta == node.packet else zero
    raise TypeError(f"Not a primitive policy: {node!r}")


def language_weight_oracle(p, x, depth, schema, semiring):
    """Weight of guarded string ``x`` in the language of ``p``.

    Structural recursion over the policy, splitting ``x`` at every possible
    guarded concatenation for sequences. Stars are replaced by the sum of
    their first ``depth + 1`` powers, so the result is exact for star-free
    policies and a lower bound otherwise.
    """
    packets = list(schema.packets())
    memo = {}

    def weight(node, s):
        key = (id(node), s)
        if key not in memo:
            memo[key] = (node, _weight(node, s))
        return memo[key][1]

    def _weight(node, s):
        if isinstance(node, PRIMITIVES):
            return _primitive_weight(node, s, schema, semiring)
        if isinstance(node, Choice):
            return weight(node.left, s) + weight(node.right, s)
        if isinstance(node, Weigh):
            return node.weight * weight(node.policy, s)
        if isinstance(node, Seq):
            total = semiring.zero
            for k in range(1, len(s)):
                for gamma in packets:
                    left = weight(node.left, s[:k] + (gamma,))
                    if left:
                        total = total + left * weight(node.right, (gamma,) + s[k:])
            return total
        raise TypeError(f"Not a star-free policy: {node!r}")

    return weight(approximant(p, depth, guarded=False), tuple(x.packets))
