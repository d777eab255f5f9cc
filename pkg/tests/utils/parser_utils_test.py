import argparse

import pytest

from wnetkat.utils import (
    load_conf,
    parse_args_as_dict,
    prepare_parser_from_dict,
    str2bool,
    str_int_float,
)


@pytest.fixture(scope="module")
def parser():
    # Same shape as wnetkat/conf.yml
    def_conf = dict(limits=dict(packet_cap=100, dup_length_cap=None), oracle=dict(exact=True))
    parser = argparse.ArgumentParser()
    parser.add_argument("--semiring", default="boolean")
    return prepare_parser_from_dict(def_conf, parser=parser)


def test_namespace_dic(parser):
    fake_args = ["--packet_cap", "7", "--exact", "0"]
    arg_dic, plain_args = parse_args_as_dict(parser, return_plain_args=True, args=fake_args)
    assert arg_dic["main_args"]["semiring"] == plain_args.semiring
    assert arg_dic["limits"]["packet_cap"] == 7
    assert arg_dic["oracle"]["exact"] is False
    assert "help" not in arg_dic["main_args"]


@pytest.mark.parametrize("inp", ["one_string", 3, 3.14])
def test_none_default(parser, inp):
    fake_args = ["--dup_length_cap", str(inp)]
    _, plain_args = parse_args_as_dict(parser, return_plain_args=True, args=fake_args)
    assert type(plain_args.dup_length_cap) == type(inp)


def test_boolean(parser):
    _, plain_args = parse_args_as_dict(parser, return_plain_args=True, args=["--exact", "y"])
    assert plain_args.exact is True
    _, plain_args = parse_args_as_dict(parser, return_plain_args=True, args=["--exact", "n"])
    assert plain_args.exact is False
    with pytest.raises(SystemExit):
        parse_args_as_dict(parser, args=["--exact", "maybe"])


@pytest.mark.parametrize(
    "value, expected", [("yes", True), ("N", False), ("1", True), ("other", "other"), (3, 3)]
)
def test_str2bool(value, expected):
    assert str2bool(value) == expected


def test_str_int_float():
    assert str_int_float("12") == 12
    assert str_int_float("0.5") == 0.5
    assert str_int_float("inf") == float("inf")
    assert str_int_float("abc") == "abc"


def test_load_conf(tmp_path):
    good = tmp_path / "conf.yml"
    good.write_text("limits:\n  packet_cap: 10\n")
    assert load_conf(str(good)) == {"limits": {"packet_cap": 10}}
    bad = tmp_path / "bad.yml"
    bad.write_text("limits: 10\n")
    with pytest.raises(ValueError):
        load_conf(str(bad))
    empty = tmp_path / "empty.yml"
    empty.write_text("")
    assert load_conf(str(empty)) == {}
