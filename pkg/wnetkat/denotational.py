"""Reference semantics of policies as maps from histories to weightings.

Star-free policies are evaluated exactly. Iteration is approximated by
unrolling every star a bounded number of times, which gives an increasing
chain of lower bounds of the true weights. Histories are tuples of packets,
head first.
"""
import logging

from .netcore.syntax import (
    DROP,
    SKIP,
    Assign,
    Choice,
    CompleteAssign,
    CompleteTest,
    Dup,
    Filter,
    Not,
    Seq,
    Star,
    Weigh,
    eval_predicate,
)
from .weighting import Weighting, bind, empty, unit, w_add, w_scale_left

logger = logging.getLogger(__name__)


def _guarded_loop(p):
    """Return ``(t, body)`` if ``p`` is ``(t ; body)* ; ¬t``, else None."""
    if not (isinstance(p, Seq) and isinstance(p.left, Star) and isinstance(p.right, Filter)):
        return None
    loop = p.left.policy
    if not (isinstance(loop, Seq) and isinstance(loop.left, Filter)):
        return None
    t = loop.left.pred
    if p.right.pred != Not(t):
        return None
    return t, loop.right


def approximant(p, n, guarded=True):
    """Star-free policy unrolling every iteration of ``p`` up to ``n`` times.

    ``q*`` becomes ``q⁰ ⊕ (q¹ ⊕ (… ⊕ (qⁿ ⊕ drop)))`` with ``q⁰ = skip`` and
    ``qⁱ⁺¹ = q ; qⁱ``, where ``q`` is itself unrolled at the same ``n``.

    Args:
        p (Policy): Policy to unroll.
        n (int): Number of iterations kept, ``n >= 0``.
        guarded (bool): Whether ``while`` loops, i.e. ``(t ; q)* ; ¬t``, are
            unrolled as ``W₀ = ¬t``, ``Wₖ₊₁ = if t then (q ; Wₖ) else skip``.

    Returns:
        Policy: without Star nodes.
    """
    if n < 0:
        raise ValueError(f"Approximant depth must be non-negative, got {n}")
    memo = {}

    def go(q):
        key = id(q)
        if key in memo:
            return memo[key][1]
        if isinstance(q, Star):
            body = go(q.policy)
            powers = [SKIP]
            for _ in range(n):
                powers.append(Seq(body, powers[-1]))
            out = DROP
            for term in reversed(powers):
                out = Choice(term, out)
        elif guarded and _guarded_loop(q) is not None:
            t, body = _guarded_loop(q)
            body = go(body)
            out = Filter(Not(t))
            for _ in range(n):
                out = Choice(Seq(Filter(t), Seq(body, out)), Seq(Filter(Not(t)), SKIP))
        elif isinstance(q, Seq):
            out = Seq(go(q.left), go(q.right))
        elif isinstance(q, Choice):
            out = Choice(go(q.left), go(q.right))
        elif isinstance(q, Weigh):
            out = Weigh(q.weight, go(q.policy))
        else:
            out = q
        # Keep q alive so its id is not reused while memoised.
        memo[key] = (q, out)
        return out

    return go(p)


class _Evaluator:
    """Structural evaluator memoised on (node, history)."""

    def __init__(self, schema, semiring, max_history=None):
        self.schema = schema
        self.semiring = semiring
        self.max_history = max_history
        self._memo = {}

    def __call__(self, p, h):
        key = (id(p), h)
        hit = self._memo.get(key)
        if hit is not None:
            return hit[1]
        out = self._eval(p, h)
        self._memo[key] = (p, out)
        return out

    def _eval(self, p, h):
        sr = self.semiring
        if isinstance(p, Filter):
            return unit(sr, h) if eval_predicate(p.pred, h[0]) else empty(sr)
        if isinstance(p, Assign):
            return unit(sr, (self.schema.assign(h[0], p.field, p.value),) + h[1:])
        if isinstance(p, CompleteTest):
            return unit(sr, h) if h[0] == p.packet else empty(sr)
        if isinstance(p, CompleteAssign):
            return unit(sr, (p.packet,) + h[1:])
        if isinstance(p, Dup):
            if self.max_history is not None and len(h) >= self.max_history:
                return empty(sr)
            return unit(sr, (h[0],) + h)
        if isinstance(p, Seq):
            return bind(self(p.left, h), lambda h2: self(p.right, h2))
        if isinstance(p, Weigh):
            return w_scale_left(p.weight, self(p.policy, h))
        if isinstance(p, Choice):
            return w_add(self(p.left, h), self(p.right, h))
        if isinstance(p, Star):
            raise ValueError("eval_star_free got a policy with iteration, use eval_approx")
        raise TypeError(f"Not a policy: {p!r}")


def eval_star_free(p, h, schema, semiring, max_history=None):
    """Weighting of output histories of star-free ``p`` on history ``h``.

    Args:
        p (Policy): Star-free policy.
        h (tuple): Input history, head first.
        schema (FieldSchema): Schema of the packets.
        semiring (type): Semiring of the weights.
        max_history (int, optional): Histories longer than this are dropped.
            Histories only grow, so weights of the kept ones are exact.

    Returns:
        Weighting: over histories.
    """
    return _Evaluator(schema, semiring, max_history)(p, tuple(h))


def eval_approx(p, n, h, schema, semiring, guarded=True, max_history=None):
    """``eval_star_free(approximant(p, n), h)``: a lower bound of the weights
    of ``p`` on ``h`` that increases with ``n``."""
    return eval_star_free(approximant(p, n, guarded), h, schema, semiring, max_history)


def format_weighting(m, schema):
    """Sorted ``history ↦ weight`` lines."""
    return m.format(schema.format_history)


__all__ = ["approximant", "eval_star_free", "eval_approx", "format_weighting", "Weighting"]
