import argparse

import yaml

# argparse renamed the group of ungrouped options in Python 3.10.
_MAIN_GROUP_TITLES = ("optional arguments", "options")


def load_conf(path):
    """Read a two-level YAML configuration such as ``wnetkat/conf.yml``."""
    with open(path, "r", encoding="utf-8") as f:
        conf = yaml.safe_load(f) or {}
    for group, entries in conf.items():
        if not isinstance(entries, dict):
            raise ValueError(f"Config group {group!r} in {path} should map keys to defaults")
    return conf


def prepare_parser_from_dict(dic, parser=None):
    """Add one argument group per top-level key of ``dic``.

    Args:
        dic (dict): Two-level config dictionary with unique bottom-level keys.
        parser (argparse.ArgumentParser, optional): Parser to extend.

    Returns:
        argparse.ArgumentParser: ``--key`` options defaulting to the values
        of ``dic``, typed after them.
    """
    if parser is None:
        parser = argparse.ArgumentParser()
    for group_name, entries in dic.items():
        group = parser.add_argument_group(group_name)
        for key, default in entries.items():
            group.add_argument("--" + key, default=default, type=_entry_type(default))
    return parser


def _entry_type(default):
    if default is None:
        return str_int_float
    if isinstance(default, bool) or isinstance(str2bool(default), bool):
        return str2bool_arg
    return type(default)


def str_int_float(value):
    """Convert a string to int, else float, else leave it as is."""
    for cast in (int, float):
        try:
            return cast(value)
        except (TypeError, ValueError):
            pass
    return value


def str2bool(value):
    """ Map yes/no-like strings to booleans, return anything else unchanged """
    if not isinstance(value, str):
        return value
    if value.lower() in ("yes", "true", "y", "1"):
        return True
    if value.lower() in ("no", "false", "n", "0"):
        return False
    return value


def str2bool_arg(value):
    """ Argparse type for boolean options """
    value = str2bool(value)
    if isinstance(value, bool):
        return value
    raise argparse.ArgumentTypeError("Boolean value expected.")


def parse_args_as_dict(parser, return_plain_args=False, args=None):
    """Parse ``args`` into a dict of dicts keyed by argument group.

    Arguments added outside any group end up under ``"main_args"``.

    Args:
        parser (argparse.ArgumentParser): Output of :func:`prepare_parser_from_dict`.
        return_plain_args (bool): Also return the plain namespace.
        args (list): Command line, ``sys.argv[1:]`` if None.

    Returns:
        dict, optionally with the ``argparse.Namespace``.
    """
    plain = parser.parse_args(args=args)
    args_dic = {"main_args": {}}
    for group in parser._action_groups:
        entries = {a.dest: getattr(plain, a.dest, None) for a in group._group_actions}
        if group.title in _MAIN_GROUP_TITLES or group.title == "positional arguments":
            args_dic["main_args"].update(entries)
        else:
            args_dic[group.title] = entries
    args_dic["main_args"].pop("help", None)
    if return_plain_args:
        return args_dic, plain
    return args_dic
