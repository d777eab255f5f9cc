"""Packet-configuration unfolding of an automaton.

The carry-on packet is moved into the state: configurations are pairs
``(q, α)`` plus a fresh entry ``qι`` and exit ``qλ``. Reading packet ``β``:

    Δ'_β(qι, (q, β))     = ι(q)
    Δ'_β((q, α), (q', β)) = Δ_{αβ}(q, q')
    Δ'_β((q, α), qλ)      = Λ_{αβ}(q)

with ``I = η(qι)`` and ``Λ = η(qλ)``. This turns the automaton into a plain
weighted automaton over the packet alphabet.
"""
from .closure import closure_row
from .matrix import WeightingMatrix

ENTRY = "qι"
EXIT = "qλ"


def _acc(d, key, w):
    d[key] = d[key] + w if key in d else w


class PacketConfigAutomaton:
    """Unfolding of ``wnka``; configurations are built on demand.

    Args:
        wnka (Wnka): Automaton to unfold.
        packet_cap (int): Largest packet space to enumerate.
    """

    def __init__(self, wnka, packet_cap=100000):
        self.wnka = wnka
        self.semiring = wnka.semiring
        self.schema = wnka.schema
        self.packets = list(wnka.schema.packets(packet_cap))
        self.initial = {ENTRY: self.semiring.one}
        self.final = {EXIT: self.semiring.one}

    @property
    def num_states(self):
        return self.wnka.num_states * len(self.packets) + 2

    def states(self):
        yield ENTRY
        for alpha in self.packets:
            for q in range(self.wnka.num_states):
                yield (q, alpha)
        yield EXIT

    def step(self, config, beta):
        """Row ``config`` of ``Δ'_β`` as ``{config': weight}``."""
        if config == ENTRY:
            return {(q, beta): w for q, w in self.wnka.initial.items()}
        if config == EXIT:
            return {}
        q, alpha = config
        out = {}
        for q2, w in self.wnka.transition_row(alpha).get(beta, {}).get(q, {}).items():
            out[(q2, beta)] = w
        w = self.wnka.output_row(alpha).get(beta, {}).get(q)
        if w is not None and w:
            out[EXIT] = w
        return out

    def successors(self, config):
        """Row ``config`` of ``M = Σ_β Δ'_β``."""
        if config == ENTRY:
            return {(q, beta): w for beta in self.packets for q, w in self.wnka.initial.items()}
        if config == EXIT:
            return {}
        q, alpha = config
        out = {}
        for beta, mat in self.wnka.transition_row(alpha).items():
            for q2, w in mat.get(q, {}).items():
                _acc(out, (q2, beta), w)
        for vec in self.wnka.output_row(alpha).values():
            if q in vec:
                _acc(out, EXIT, vec[q])
        return out

    def delta(self, beta):
        """``Δ'_β`` as a dense :class:`WeightingMatrix` over all configurations."""
        states = list(self.states())
        entries = {}
        for config in states:
            for target, w in self.step(config, beta).items():
                entries[(config, target)] = w
        return WeightingMatrix.from_entries(self.semiring, states, states, entries)

    def accept_weight(self, packets):
        """``I × Δ'_{π₀} × … × Δ'_{πₙ} × Λ``."""
        vec = dict(self.initial)
        for beta in packets:
            nxt = {}
            for config, w in vec.items():
                for target, x in self.step(config, beta).items():
                    _acc(nxt, target, w * x)
            vec = {c: w for c, w in nxt.items() if w}
        return vec.get(EXIT, self.semiring.zero)

    def total_weight(self, node_cap=None):
        """``I × M* × Λ``: the sum of the weights of all guarded strings."""
        row = closure_row(ENTRY, self.successors, self.semiring, node_cap=node_cap)
        return row.get(EXIT, self.semiring.zero)


def unfold(wnka, packet_cap=100000):
    return PacketConfigAutomaton(wnka, packet_cap)
