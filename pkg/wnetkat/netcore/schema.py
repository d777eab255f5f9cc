import itertools
import logging
import re

from ..errors import ResourceCapError, SchemaError

logger = logging.getLogger(__name__)

_RANGE = re.compile(r"^(\d+)\.\.(\d+)$")


def expand_values(values):
    """Expand ``"0..5"`` range entries into their members, as strings."""
    out = []
    for v in values:
        v = str(v).strip()
        m = _RANGE.match(v)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            out.extend(str(i) for i in range(lo, hi + 1))
        else:
            out.append(v)
    return out


class FieldSchema:
    """Ordered header fields, each with an ordered finite set of values.

    Packets are tuples of value codes in field order. Codes are the positions
    of the values in their field's list, so packet tuples sort in the order
    the values were declared.

    Args:
        fields (list of (str, list)): ``(field_name, value_names)`` pairs.
    """

    def __init__(self, fields):
        self.fields = tuple(name for name, _ in fields)
        self.values = tuple(tuple(expand_values(vals)) for _, vals in fields)
        if not self.fields:
            raise SchemaError("A schema needs at least one field")
        if len(set(self.fields)) != len(self.fields):
            raise SchemaError(f"Duplicate field in schema {list(self.fields)}")
        self._field_index = {f: i for i, f in enumerate(self.fields)}
        self._value_index = []
        for f, vals in zip(self.fields, self.values):
            if not vals:
                raise SchemaError(f"Field {f} has no values")
            if len(set(vals)) != len(vals):
                raise SchemaError(f"Duplicate value in field {f}")
            self._value_index.append({v: i for i, v in enumerate(vals)})

    @classmethod
    def from_dict(cls, dic):
        return cls(list(dic.items()))

    def __eq__(self, other):
        return isinstance(other, FieldSchema) and (self.fields, self.values) == (
            other.fields,
            other.values,
        )

    def __hash__(self):
        return hash((self.fields, self.values))

    def __repr__(self):
        return f"FieldSchema({dict(zip(self.fields, self.values))!r})"

    @property
    def packet_count(self):
        count = 1
        for vals in self.values:
            count *= len(vals)
        return count

    def check_cap(self, packet_cap):
        if packet_cap is not None and self.packet_count > packet_cap:
            raise ResourceCapError(
                f"Packet space has {self.packet_count} packets, above the cap of {packet_cap}"
            )

    def packets(self, packet_cap=None):
        """All packets in lexicographic code order."""
        self.check_cap(packet_cap)
        return itertools.product(*(range(len(vals)) for vals in self.values))

    def field_index(self, name):
        try:
            return self._field_index[name]
        except KeyError:
            raise SchemaError(f"Unknown field {name!r}, expected one of {list(self.fields)}")

    def value_code(self, field, name):
        """Code of value ``name`` of field ``field`` (index or name)."""
        if isinstance(field, str):
            field = self.field_index(field)
        try:
            return self._value_index[field][str(name)]
        except KeyError:
            raise SchemaError(
                f"Unknown value {name!r} for field {self.fields[field]}, "
                f"expected one of {list(self.values[field])}"
            )

    def field_name(self, field):
        return self.fields[field]

    def value_name(self, field, code):
        return self.values[field][code]

    def assign(self, packet, field, code):
        return packet[:field] + (code,) + packet[field + 1 :]

    def packet(self, mapping):
        """Build a total packet from ``{field: value_name}``."""
        missing = [f for f in self.fields if f not in mapping]
        if missing:
            raise SchemaError(f"Packet misses fields {missing}")
        extra = [f for f in mapping if f not in self._field_index]
        if extra:
            raise SchemaError(f"Unknown field {extra[0]!r}, expected one of {list(self.fields)}")
        return tuple(self.value_code(i, mapping[f]) for i, f in enumerate(self.fields))

    def parse_packet(self, text):
        """Read ``f=v,g=w`` (braces optional) into a packet."""
        body = text.strip()
        if body.startswith("{") and body.endswith("}"):
            body = body[1:-1]
        mapping = {}
        for part in filter(None, (p.strip() for p in body.split(","))):
            if "=" not in part:
                raise SchemaError(f"Expected field=value in packet, got {part!r}")
            f, v = (s.strip() for s in part.split("=", 1))
            mapping[f] = v
        return self.packet(mapping)

    def parse_history(self, text):
        """Read packets separated by ``::``, head first."""
        parts = [p for p in (s.strip() for s in text.split("::")) if p and p != "⟨⟩"]
        if not parts:
            raise SchemaError("A history holds at least one packet")
        return tuple(self.parse_packet(p) for p in parts)

    def packet_dict(self, packet):
        return {f: self.values[i][c] for i, (f, c) in enumerate(zip(self.fields, packet))}

    def format_packet(self, packet):
        return "{" + ",".join(f"{f}={v}" for f, v in self.packet_dict(packet).items()) + "}"

    def format_history(self, history):
        return "::".join(self.format_packet(p) for p in history)

    def header(self):
        """The ``fields { ... }`` block declaring this schema in policy text."""
        decls = " ".join(f"{f}: [{', '.join(vals)}];" for f, vals in zip(self.fields, self.values))
        return f"fields {{ {decls} }}"
