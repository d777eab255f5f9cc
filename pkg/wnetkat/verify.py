"""Decision procedures for r-safety and r-reachability, with witnesses.

Safety asks whether every guarded string weighs at most ``r``. The sum of
all weights is computed exactly on the packet-configuration unfolding; when
it exceeds ``r`` a violating string is searched by increasing dup count.

Reachability asks whether some guarded string weighs at least ``r``. For
semirings where adding a loop never helps, cycle-free runs of the
automaton suffice and are enumerated depth first.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from .automata.unfold import unfold
from .automata.wnka import accept_weight
from .errors import CapabilityError, ResourceCapError, WnkError
from .guarded import GuardedString, gs_to_io, history_to_gs

logger = logging.getLogger(__name__)

SAFE = "safe"
UNSAFE = "unsafe"
REACHABLE = "reachable"
UNREACHABLE = "unreachable"


@dataclass(frozen=True)
class Witness:
    input_packet: tuple
    history: Tuple[tuple, ...]
    guarded_string: GuardedString
    weight: object


@dataclass(frozen=True)
class Verdict:
    kind: str
    bound: object
    witness: Optional[Witness] = None
    total_weight: Optional[object] = None

    @property
    def holds(self):
        return self.kind in (SAFE, REACHABLE)


@dataclass(frozen=True)
class Run:
    """A path through the automaton.

    ``states[i]`` is the state reached after reading ``packets[i]``; the last
    packet is the output read by ``Λ_{packets[-2] packets[-1]}(states[-1])``.
    Step ``i`` is ``(states[i], (packets[i], packets[i+1]), states[i+1])``.
    """

    states: Tuple[int, ...]
    packets: Tuple[tuple, ...]

    def __post_init__(self):
        if len(self.packets) != len(self.states) + 1 or not self.states:
            raise ValueError(
                f"A run over {len(self.states)} states needs {len(self.states) + 1} packets"
            )

    @property
    def steps(self):
        return [
            (self.states[i], (self.packets[i], self.packets[i + 1]), self.states[i + 1])
            for i in range(len(self.states) - 1)
        ]

    @property
    def guarded_string(self):
        return GuardedString(self.packets)

    def __len__(self):
        return len(self.states) - 1


def total_weight(a, packet_cap=100000):
    """Sum of ``⟦A⟧(x)`` over all guarded strings ``x``."""
    return unfold(a, packet_cap).total_weight()


def eval_weight(a, packet, history):
    """Weight with which the automaton maps ``packet`` to output ``history``."""
    return accept_weight(a, history_to_gs(packet, history))


def _witness(a, x, weight):
    packet, history = gs_to_io(x)
    recheck = eval_weight(a, packet, history)
    if recheck != weight:
        raise WnkError(f"Witness weight {weight} does not re-check ({recheck})")
    return Witness(packet, history, x, weight)


def _strings_with_dups(a, k):
    """Guarded strings with ``k`` dups and non-zero weight, in lexicographic
    packet order, paired with their weights."""
    zero = a.semiring.zero

    def extend(prefix, vec, remaining):
        alpha = prefix[-1]
        if remaining == 0:
            for beta, out in sorted(a.output_row(alpha).items()):
                total = zero
                for q, w in vec.items():
                    if q in out:
                        total = total + w * out[q]
                if total:
                    yield prefix + (beta,), total
            return
        for beta, mat in sorted(a.transition_row(alpha).items()):
            nxt = {}
            for q, w in vec.items():
                for q2, x in mat.get(q, {}).items():
                    wx = w * x
                    nxt[q2] = nxt[q2] + wx if q2 in nxt else wx
            nxt = {q: w for q, w in nxt.items() if w}
            if nxt:
                yield from extend(prefix + (beta,), nxt, remaining - 1)

    start = {q: w for q, w in a.initial.items() if w}
    for alpha in a.schema.packets():
        yield from extend((alpha,), start, k)


def check_safety(a, r, dup_length_cap=64, packet_cap=100000):
    """Decide whether every guarded string weighs at most ``r``.

    Args:
        a (Wnka): Automaton to check.
        r: Bound, an element of the automaton's semiring.
        dup_length_cap (int): Longest witness searched, in dups.
        packet_cap (int): Largest packet space to unfold.

    Returns:
        :class:`Verdict`: ``safe`` with the total weight, or ``unsafe`` with
        the first violating guarded string by dup count then packet order.

    Raises:
        CapabilityError: if the semiring's addition is not max-like.
        ResourceCapError: if no witness is found within ``dup_length_cap``.
    """
    sr = a.semiring
    if not sr.safety_capable:
        raise CapabilityError(f"Safety is not decidable this way over the {sr.name} semiring")
    if not sr.total_order:
        raise CapabilityError(f"Witness search needs a total order, {sr.name} has none")
    total = total_weight(a, packet_cap)
    logger.debug("total weight %s against bound %s", total, r)
    if total.leq(r):
        return Verdict(SAFE, r, total_weight=total)
    for k in range(dup_length_cap + 1):
        logger.debug("searching safety witnesses with %d dups", k)
        for packets, weight in _strings_with_dups(a, k):
            if not weight.leq(r):
                witness = _witness(a, GuardedString(packets), weight)
                return Verdict(UNSAFE, r, witness=witness, total_weight=total)
    raise ResourceCapError(
        f"Total weight {total} exceeds {r} but no witness has at most {dup_length_cap} dups"
    )


def enumerate_cycle_free_runs(a, prune=None, run_cap=1000000):
    """Depth-first stream of the runs of ``a`` that never revisit a
    configuration ``(state, carry-on packet)``.

    Runs start in an initial state on any packet, in packet order, and end
    with a non-zero output. A run ending in configuration ``c`` is produced
    before the runs extending it.

    Args:
        a (Wnka): Automaton.
        prune (callable, optional): ``weight -> bool``; a prefix whose initial
            weight times step weights makes it True is not followed further.
        run_cap (int): Largest number of runs produced.

    Raises:
        ResourceCapError: if more than ``run_cap`` runs exist.
    """
    produced = 0

    def emit(states, packets, beta):
        nonlocal produced
        produced += 1
        if produced > run_cap:
            raise ResourceCapError(f"More than {run_cap} cycle-free runs")
        return Run(states, packets + (beta,))

    for alpha0 in a.schema.packets():
        for q0, w0 in sorted(a.initial.items()):
            if not w0 or (prune is not None and prune(w0)):
                continue
            # Frames: (states, packets, weight, visited, pending successors)
            stack = [((q0,), (alpha0,), w0, frozenset(), None)]
            while stack:
                states, packets, weight, visited, pending = stack.pop()
                q, alpha = states[-1], packets[-1]
                if pending is None:
                    for beta, vec in sorted(a.output_row(alpha).items()):
                        if q in vec and vec[q]:
                            yield emit(states, packets, beta)
                    pending = iter(
                        [
                            (beta, q2, x)
                            for beta, mat in sorted(a.transition_row(alpha).items())
                            for q2, x in sorted(mat.get(q, {}).items())
                            if x
                        ]
                    )
                for beta, q2, x in pending:
                    config = (q2, beta)
                    if config in visited:
                        continue
                    w = weight * x
                    if prune is not None and prune(w):
                        continue
                    stack.append((states, packets, weight, visited, pending))
                    stack.append((states + (q2,), packets + (beta,), w, visited | {config}, None))
                    break


def run_weight(a, run):
    """⊗-product of the transition weights along ``run``, one for a run
    without steps.

    Raises:
        ValueError: if a step is not a transition of ``a``.
    """
    weight = a.semiring.one
    for q, (alpha, beta), q2 in run.steps:
        x = a.transition_row(alpha).get(beta, {}).get(q, {}).get(q2)
        if not x:
            raise ValueError(f"No transition {q} -> {q2} on {alpha} {beta} in {a!r}")
        weight = weight * x
    return weight


def check_reachability(a, r, run_cap=1000000):
    """Decide whether some guarded string weighs at least ``r``.

    Returns:
        :class:`Verdict`: ``reachable`` with the first cycle-free run whose
        weight meets ``r``, as a guarded string, or ``unreachable``.

    Raises:
        CapabilityError: if loops may increase weights in the semiring.
        ResourceCapError: if more than ``run_cap`` runs are explored.
    """
    sr = a.semiring
    if not sr.reach_capable:
        raise CapabilityError(f"Reachability is not decidable this way over the {sr.name} semiring")

    def prune(w):
        return not r.leq(w)

    for run in enumerate_cycle_free_runs(a, prune=prune, run_cap=run_cap):
        x = run.guarded_string
        weight = (
            a.initial[run.states[0]]
            * run_weight(a, run)
            * a.output_row(x.packets[-2])[x.packets[-1]][run.states[-1]]
        )
        if r.leq(weight):
            # The string may have other runs; report its full weight.
            weight = accept_weight(a, x)
            return Verdict(REACHABLE, r, witness=_witness(a, x, weight))
    return Verdict(UNREACHABLE, r)
