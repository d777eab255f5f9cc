from .parser_utils import (
    load_conf,
    prepare_parser_from_dict,
    parse_args_as_dict,
    str_int_float,
    str2bool,
    str2bool_arg,
)

__all__ = [
    "load_conf",
    "prepare_parser_from_dict",
    "parse_args_as_dict",
    "str_int_float",
    "str2bool",
    "str2bool_arg",
]
