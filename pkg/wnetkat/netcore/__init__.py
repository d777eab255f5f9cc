from .schema import FieldSchema
from .syntax import (
    SKIP,
    DROP,
    PFalse,
    PTrue,
    Test,
    Or,
    And,
    Not,
    Filter,
    Assign,
    Dup,
    Seq,
    Weigh,
    Choice,
    Star,
    CompleteTest,
    CompleteAssign,
    eval_predicate,
    format_policy,
    if_then_else,
    while_do,
)
from .parser import parse_program, parse_policy, parse_predicate, parse_schema
from .reduce import reduce

__all__ = [
    "FieldSchema",
    "SKIP",
    "DROP",
    "PFalse",
    "PTrue",
    "Test",
    "Or",
    "And",
    "Not",
    "Filter",
    "Assign",
    "Dup",
    "Seq",
    "Weigh",
    "Choice",
    "Star",
    "CompleteTest",
    "CompleteAssign",
    "eval_predicate",
    "format_policy",
    "if_then_else",
    "while_do",
    "parse_program",
    "parse_policy",
    "parse_predicate",
    "parse_schema",
    "reduce",
]
