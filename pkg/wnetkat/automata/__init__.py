from .matrix import WeightingMatrix, mat_add, mat_mul, mat_star
from .closure import closure_row
from .wnka import Wnka, thompson, accept_weight
from .unfold import PacketConfigAutomaton, unfold, ENTRY, EXIT

__all__ = [
    "WeightingMatrix",
    "mat_add",
    "mat_mul",
    "mat_star",
    "closure_row",
    "Wnka",
    "thompson",
    "accept_weight",
    "PacketConfigAutomaton",
    "unfold",
    "ENTRY",
    "EXIT",
]
