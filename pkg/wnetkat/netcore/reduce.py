"""Translation of full policies into reduced syntax.

Predicates become sums of complete tests and assignments become sums of
``α? ; α[f:=n]!``. The result is exponentially larger than its input and
only serves as a differential oracle for the compiler.
"""
from .syntax import (
    Assign,
    Choice,
    CompleteAssign,
    CompleteTest,
    Dup,
    Filter,
    Seq,
    Star,
    Weigh,
    choice_of,
    eval_predicate,
)


def reduce(p, schema, semiring, packet_cap=100000):
    """Reduced policy equivalent to ``p``.

    Args:
        p (Policy): Policy over ``schema``.
        schema (FieldSchema): Field schema, enumerated packet by packet.
        semiring (type): Semiring, whose zero encodes the empty sum.
        packet_cap (int): Largest packet space to enumerate.

    Returns:
        Policy: tree using only complete tests, complete assignments, ``dup``
        and the policy combinators.

    Raises:
        ResourceCapError: if the packet space exceeds ``packet_cap``.
    """
    packets = list(schema.packets(packet_cap))
    # The empty sum: any complete test weighted by zero.
    nothing = Weigh(semiring.zero, CompleteTest(packets[0]))

    def go(q):
        if isinstance(q, Filter):
            terms = [CompleteTest(pk) for pk in packets if eval_predicate(q.pred, pk)]
            return choice_of(terms) if terms else nothing
        if isinstance(q, Assign):
            return choice_of(
                Seq(CompleteTest(pk), CompleteAssign(schema.assign(pk, q.field, q.value)))
                for pk in packets
            )
        if isinstance(q, (Dup, CompleteTest, CompleteAssign)):
            return q
        if isinstance(q, Seq):
            return Seq(go(q.left), go(q.right))
        if isinstance(q, Choice):
            return Choice(go(q.left), go(q.right))
        if isinstance(q, Weigh):
            return Weigh(q.weight, go(q.policy))
        if isinstance(q, Star):
            return Star(go(q.policy))
        raise TypeError(f"Not a policy: {q!r}")

    return go(p)
