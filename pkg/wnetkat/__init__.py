import pathlib

from .semirings import get as get_semiring
from .netcore import FieldSchema, parse_policy, parse_program
from .automata import thompson
from .verify import check_reachability, check_safety, eval_weight, total_weight
from .topology import load_topology, topology_to_policy

project_root = str(pathlib.Path(__file__).expanduser().absolute().parent.parent)
__version__ = "0.1.0"


def show_available_semirings():
    from .semirings import available_semirings

    print(" \n".join(available_semirings()))


__all__ = [
    "get_semiring",
    "FieldSchema",
    "parse_policy",
    "parse_program",
    "thompson",
    "check_safety",
    "check_reachability",
    "eval_weight",
    "total_weight",
    "load_topology",
    "topology_to_policy",
    "show_available_semirings",
]
