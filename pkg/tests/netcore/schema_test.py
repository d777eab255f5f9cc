import pytest

from wnetkat.errors import ResourceCapError, SchemaError
from wnetkat.netcore import FieldSchema
from wnetkat.netcore.schema import expand_values


@pytest.fixture(scope="module")
def schema():
    return FieldSchema([("node", ["BAY", "NYC"]), ("tid", ["0..2"])])


def test_expand_values():
    assert expand_values(["0..3", "x"]) == ["0", "1", "2", "3", "x"]
    assert expand_values([1, 2]) == ["1", "2"]


def test_packets_are_lexicographic(schema):
    packets = list(schema.packets())
    assert schema.packet_count == len(packets) == 6
    assert packets == sorted(packets)
    assert packets[0] == (0, 0)
    assert packets[-1] == (1, 2)


def test_packet_cap(schema):
    with pytest.raises(ResourceCapError):
        schema.packets(packet_cap=5)
    schema.check_cap(6)


def test_parse_and_format_packet(schema):
    packet = schema.parse_packet("{tid=2, node=NYC}")
    assert packet == (1, 2)
    assert schema.format_packet(packet) == "{node=NYC,tid=2}"
    assert schema.parse_packet(schema.format_packet(packet)) == packet


def test_parse_history(schema):
    history = schema.parse_history("node=NYC,tid=1 :: node=BAY,tid=1")
    assert history == ((1, 1), (0, 1))
    assert schema.format_history(history) == "{node=NYC,tid=1}::{node=BAY,tid=1}"


@pytest.mark.parametrize(
    "text", ["node=BAY", "node=BAY,tid=1,vid=2", "node=SEA,tid=0", "node BAY,tid=0"]
)
def test_bad_packets(schema, text):
    with pytest.raises(SchemaError):
        schema.parse_packet(text)


def test_bad_schemas():
    with pytest.raises(SchemaError):
        FieldSchema([])
    with pytest.raises(SchemaError):
        FieldSchema([("f", ["a"]), ("f", ["b"])])
    with pytest.raises(SchemaError):
        FieldSchema([("f", ["a", "a"])])
    with pytest.raises(SchemaError):
        FieldSchema([("f", [])])


def test_lookup_errors(schema):
    with pytest.raises(SchemaError):
        schema.field_index("dst")
    with pytest.raises(SchemaError):
        schema.value_code("tid", "7")
    assert schema.value_code("tid", 2) == 2


def test_header_and_equality(schema):
    assert schema.header() == "fields { node: [BAY, NYC]; tid: [0, 1, 2]; }"
    assert schema == FieldSchema.from_dict({"node": ["BAY", "NYC"], "tid": ["0", "1", "2"]})
    assert hash(schema) == hash(FieldSchema([("node", ["BAY", "NYC"]), ("tid", ["0..2"])]))
