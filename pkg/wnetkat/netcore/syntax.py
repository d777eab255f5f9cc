"""Policy and predicate syntax trees.

Fields and values are stored as schema codes, so trees are only meaningful
together with the :class:`FieldSchema` they were built against.
"""
from dataclasses import dataclass
from functools import reduce
from typing import Any, Tuple


class Predicate:
    __slots__ = ()


@dataclass(frozen=True)
class PFalse(Predicate):
    pass


@dataclass(frozen=True)
class PTrue(Predicate):
    pass


@dataclass(frozen=True)
class Test(Predicate):
    field: int
    value: int


@dataclass(frozen=True)
class Or(Predicate):
    left: Predicate
    right: Predicate


@dataclass(frozen=True)
class And(Predicate):
    left: Predicate
    right: Predicate


@dataclass(frozen=True)
class Not(Predicate):
    operand: Predicate


class Policy:
    __slots__ = ()


@dataclass(frozen=True)
class Filter(Policy):
    pred: Predicate


@dataclass(frozen=True)
class Assign(Policy):
    field: int
    value: int


@dataclass(frozen=True)
class Dup(Policy):
    pass


@dataclass(frozen=True)
class Seq(Policy):
    left: Policy
    right: Policy


@dataclass(frozen=True)
class Weigh(Policy):
    weight: Any
    policy: Policy


@dataclass(frozen=True)
class Choice(Policy):
    left: Policy
    right: Policy


@dataclass(frozen=True)
class Star(Policy):
    policy: Policy


# Reduced syntax: complete tests and assignments fix every field.
@dataclass(frozen=True)
class CompleteTest(Policy):
    packet: Tuple[int, ...]


@dataclass(frozen=True)
class CompleteAssign(Policy):
    packet: Tuple[int, ...]


SKIP = Filter(PTrue())
DROP = Filter(PFalse())

PRIMITIVES = (Filter, Assign, Dup, CompleteTest, CompleteAssign)


def eval_predicate(t, packet):
    """Truth value of predicate ``t`` on ``packet``."""
    if isinstance(t, Test):
        return packet[t.field] == t.value
    if isinstance(t, PTrue):
        return True
    if isinstance(t, PFalse):
        return False
    if isinstance(t, Not):
        return not eval_predicate(t.operand, packet)
    if isinstance(t, And):
        return eval_predicate(t.left, packet) and eval_predicate(t.right, packet)
    if isinstance(t, Or):
        return eval_predicate(t.left, packet) or eval_predicate(t.right, packet)
    raise TypeError(f"Not a predicate: {t!r}")


def if_then_else(t, p, q):
    return Choice(Seq(Filter(t), p), Seq(Filter(Not(t)), q))


def while_do(t, p):
    return Seq(Star(Seq(Filter(t), p)), Filter(Not(t)))


def choice_of(policies):
    """Right-nested choice of ``policies``, ``drop`` when empty."""
    policies = list(policies)
    if not policies:
        return DROP
    return reduce(lambda acc, p: Choice(p, acc), reversed(policies[:-1]), policies[-1])


def seq_of(policies):
    policies = list(policies)
    if not policies:
        return SKIP
    return reduce(lambda acc, p: Seq(p, acc), reversed(policies[:-1]), policies[-1])


def or_of(preds):
    preds = list(preds)
    if not preds:
        return PFalse()
    return reduce(Or, preds)


def and_of(preds):
    preds = list(preds)
    if not preds:
        return PTrue()
    return reduce(And, preds)


def children(p):
    if isinstance(p, (Seq, Choice)):
        return (p.left, p.right)
    if isinstance(p, (Weigh, Star)):
        return (p.policy,)
    return ()


def iter_nodes(p):
    """Pre-order traversal of a policy tree."""
    stack = [p]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def is_star_free(p):
    return not any(isinstance(n, Star) for n in iter_nodes(p))


def star_depth(p):
    if isinstance(p, Star):
        return 1 + star_depth(p.policy)
    return max((star_depth(c) for c in children(p)), default=0)


def node_counts(p):
    """Number of primitives, ``dup`` and star nodes in ``p``."""
    counts = {"primitives": 0, "dups": 0, "stars": 0}
    for n in iter_nodes(p):
        if isinstance(n, PRIMITIVES):
            counts["primitives"] += 1
        if isinstance(n, Dup):
            counts["dups"] += 1
        if isinstance(n, Star):
            counts["stars"] += 1
    return counts


def weights_of(p):
    return [n.weight for n in iter_nodes(p) if isinstance(n, Weigh)]


# Binding strength, loosest first. A child printed in a slot requiring a
# stronger level than its own gets parentheses.
_CHOICE, _WEIGH, _SEQ, _OR, _AND, _NOT, _STAR, _ATOM = range(8)


def _pred_text(t, schema, top):
    if isinstance(t, PTrue):
        return ("skip" if top else "true"), _ATOM
    if isinstance(t, PFalse):
        return ("drop" if top else "false"), _ATOM
    if isinstance(t, Test):
        f = schema.field_name(t.field)
        return f"{f}={schema.value_name(t.field, t.value)}", _ATOM
    if isinstance(t, Not):
        if isinstance(t.operand, Test):
            f = schema.field_name(t.operand.field)
            return f"{f}!={schema.value_name(t.operand.field, t.operand.value)}", _ATOM
        return "!" + _wrap_pred(t.operand, schema, _NOT), _NOT
    if isinstance(t, And):
        return f"{_wrap_pred(t.left, schema, _AND)} & {_wrap_pred(t.right, schema, _NOT)}", _AND
    if isinstance(t, Or):
        return f"{_wrap_pred(t.left, schema, _OR)} | {_wrap_pred(t.right, schema, _AND)}", _OR
    raise TypeError(f"Not a predicate: {t!r}")


def _wrap_pred(t, schema, level):
    text, own = _pred_text(t, schema, top=False)
    return f"({text})" if own < level else text


def _text(p, schema):
    if isinstance(p, Filter):
        return _pred_text(p.pred, schema, top=True)
    if isinstance(p, Assign):
        return f"{schema.field_name(p.field)}:={schema.value_name(p.field, p.value)}", _ATOM
    if isinstance(p, Dup):
        return "dup", _ATOM
    if isinstance(p, CompleteTest):
        return "(" + " & ".join(_complete(p.packet, schema, "=")) + ")", _ATOM
    if isinstance(p, CompleteAssign):
        return "(" + " ; ".join(_complete(p.packet, schema, ":=")) + ")", _ATOM
    if isinstance(p, Star):
        return _wrap(p.policy, schema, _STAR) + "*", _STAR
    if isinstance(p, Seq):
        return f"{_wrap(p.left, schema, _OR)} ; {_wrap(p.right, schema, _WEIGH)}", _SEQ
    if isinstance(p, Weigh):
        return f"weight({p.weight}) @ {_wrap(p.policy, schema, _WEIGH)}", _WEIGH
    if isinstance(p, Choice):
        return f"{_wrap(p.left, schema, _CHOICE)} + {_wrap(p.right, schema, _WEIGH)}", _CHOICE
    raise TypeError(f"Not a policy: {p!r}")


def _complete(packet, schema, op):
    return [
        f"{schema.field_name(i)}{op}{schema.value_name(i, c)}" for i, c in enumerate(packet)
    ]


def _wrap(p, schema, level):
    text, own = _text(p, schema)
    return f"({text})" if own < level else text


def format_policy(p, schema):
    """Concrete syntax of ``p``. Parsing the result gives back ``p``, except
    for complete tests and assignments which print as their expansion."""
    return _text(p, schema)[0]
