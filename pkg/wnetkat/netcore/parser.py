"""Concrete syntax of policies.

Grammar, loosest binding first::

    program   := ["version" INT ";"] [fields] ("let" NAME "=" policy "in")* policy
    fields    := "fields" "{" (NAME ":" "[" value ("," value)* "]" ";")* "}"
    policy    := seqw (("+" | "⊕") seqw)*
    seqw      := WEIGHT ("@" | "⊙") seqw | seq
    seq       := disj (";" seqw)?
    disj      := conj (("|" | "∨") conj)*
    conj      := neg (("&" | "∧") neg)*
    neg       := ("!" | "¬") neg | postfix
    postfix   := primary ("*" | "⋆")*
    primary   := "dup" | "skip" | "drop" | "true" | "false"
               | NAME ("=" | "!=" | "≠" | ":=") value | NAME
               | "(" policy ")"
               | "if" policy "then" policy "else" policy
               | "while" policy "do" policy

``WEIGHT`` is ``weight(LIT)`` or ``⟨LIT⟩``. Predicate operators only apply to
filters. ``#`` starts a comment.
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Dict

from .. import semirings
from ..errors import AlgebraError, PolicyParseError, SchemaError
from .schema import FieldSchema
from .syntax import (
    DROP,
    SKIP,
    And,
    Assign,
    Choice,
    Dup,
    Filter,
    Not,
    Or,
    Seq,
    Star,
    Test,
    Weigh,
    if_then_else,
    while_do,
)

logger = logging.getLogger(__name__)

GRAMMAR_VERSION = 1

KEYWORDS = {
    "dup",
    "skip",
    "drop",
    "true",
    "false",
    "if",
    "then",
    "else",
    "while",
    "do",
    "let",
    "version",
    "fields",
    "in",
}

_TOKEN_SPEC = [
    ("WS", r"[ \t\r]+"),
    ("NEWLINE", r"\n"),
    ("COMMENT", r"#[^\n]*"),
    ("WEIGHT", r"weight\s*\((?:[^)]*)\)|⟨(?:[^⟩]*)⟩"),
    ("RANGE", r"\d+\.\.\d+"),
    ("NAME", r"[A-Za-z_][A-Za-z0-9_]*|\d+"),
    ("OP", r":=|!=|≠|[=+⊕@⊙;|∨&∧!¬*⋆(){}\[\],:]"),
    ("MISMATCH", r"."),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pat})" for name, pat in _TOKEN_SPEC))

_WEIGHT_RE = re.compile(r"weight\s*\((?P<lit>[^)]*)\)|⟨(?P<lit2>[^⟩]*)⟩")

_SYNONYMS = {"⊕": "+", "⊙": "@", "∨": "|", "∧": "&", "¬": "!", "⋆": "*", "≠": "!="}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    """Split policy text into tokens, dropping whitespace and comments."""
    tokens = []
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        col = m.start() - line_start + 1
        if kind == "NEWLINE":
            line, line_start = line + 1, m.end()
            continue
        if kind in ("WS", "COMMENT"):
            continue
        if kind == "MISMATCH":
            raise PolicyParseError(f"Unexpected character {m.group()!r}", line, col)
        value = m.group()
        if kind == "WEIGHT":
            wm = _WEIGHT_RE.match(value)
            lit = wm.group("lit")
            value = (lit if lit is not None else wm.group("lit2")).strip()
        elif kind == "OP":
            value = _SYNONYMS.get(value, value)
        elif kind == "NAME" and value in KEYWORDS:
            kind = "KEYWORD"
        tokens.append(Token(kind, value, line, col))
    end_col = len(text) - line_start + 1
    tokens.append(Token("EOF", "", line, end_col))
    return tokens


@dataclass
class Program:
    """A parsed policy file."""

    schema: FieldSchema
    policy: object
    definitions: Dict[str, object] = field(default_factory=dict)
    version: int = GRAMMAR_VERSION


class _Parser:
    def __init__(self, text, semiring, schema=None, env=None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.semiring = semirings.get(semiring)
        self.schema = schema
        self.env = dict(env or {})

    # Token helpers
    @property
    def tok(self):
        return self.tokens[self.pos]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return PolicyParseError(message, tok.line, tok.col)

    def at(self, kind, text=None):
        tok = self.tok
        return tok.kind == kind and (text is None or tok.text == text)

    def at_op(self, text):
        return self.at("OP", text)

    def at_kw(self, text):
        return self.at("KEYWORD", text)

    def advance(self):
        tok = self.tok
        self.pos += 1
        return tok

    def expect(self, kind, text=None):
        if not self.at(kind, text):
            want = text or kind.lower()
            got = self.tok.text or "end of input"
            raise self.error(f"Expected {want!r}, got {got!r}")
        return self.advance()

    # Program structure
    def program(self):
        version = GRAMMAR_VERSION
        if self.at_kw("version"):
            self.advance()
            tok = self.expect("NAME")
            if tok.text != str(GRAMMAR_VERSION):
                raise self.error(f"Unsupported grammar version {tok.text}", tok)
            version = int(tok.text)
            self.expect("OP", ";")
        if self.at_kw("fields"):
            declared = self.fields_block()
            if self.schema is not None and self.schema != declared:
                raise self.error("Declared fields differ from the schema in use")
            self.schema = declared
        if self.schema is None:
            raise self.error("No field schema: declare `fields { ... }` or pass one")
        definitions = {}
        while self.at_kw("let"):
            self.advance()
            name_tok = self.expect("NAME")
            self.expect("OP", "=")
            body = self.policy()
            self.expect("KEYWORD", "in")
            self.env[name_tok.text] = body
            definitions[name_tok.text] = body
        policy = self.policy()
        if not self.at("EOF"):
            raise self.error(f"Unexpected {self.tok.text!r} after policy")
        return Program(self.schema, policy, definitions, version)

    def fields_block(self):
        self.expect("KEYWORD", "fields")
        self.expect("OP", "{")
        decls = []
        while not self.at_op("}"):
            name_tok = self.expect("NAME")
            self.expect("OP", ":")
            self.expect("OP", "[")
            values = [self.value_token().text]
            while self.at_op(","):
                self.advance()
                values.append(self.value_token().text)
            self.expect("OP", "]")
            if self.at_op(";"):
                self.advance()
            decls.append((name_tok.text, values))
        self.expect("OP", "}")
        try:
            return FieldSchema(decls)
        except SchemaError as err:
            raise self.error(str(err))

    def value_token(self):
        if self.at("NAME") or self.at("RANGE") or self.at("KEYWORD"):
            return self.advance()
        raise self.error(f"Expected a value, got {self.tok.text or 'end of input'!r}")

    # Policies
    def policy(self):
        left = self.seqw()
        while self.at_op("+"):
            self.advance()
            left = Choice(left, self.seqw())
        return left

    def seqw(self):
        if self.at("WEIGHT"):
            tok = self.advance()
            if not (self.at_op("@")):
                raise self.error("Expected '@' after weight")
            self.advance()
            try:
                weight = self.semiring.parse(tok.text)
            except AlgebraError as err:
                raise self.error(str(err), tok)
            return Weigh(weight, self.seqw())
        return self.seq()

    def seq(self):
        left = self.disj()
        if self.at_op(";"):
            self.advance()
            return Seq(left, self.seqw())
        return left

    def disj(self):
        start = self.tok
        left = self.conj()
        while self.at_op("|"):
            op = self.advance()
            right = self.conj()
            left = Filter(Or(self.pred(left, start), self.pred(right, op)))
        return left

    def conj(self):
        start = self.tok
        left = self.neg()
        while self.at_op("&"):
            op = self.advance()
            right = self.neg()
            left = Filter(And(self.pred(left, start), self.pred(right, op)))
        return left

    def neg(self):
        if self.at_op("!"):
            op = self.advance()
            return Filter(Not(self.pred(self.neg(), op)))
        return self.postfix()

    def postfix(self):
        p = self.primary()
        while self.at_op("*"):
            self.advance()
            p = Star(p)
        return p

    def pred(self, p, tok):
        if not isinstance(p, Filter):
            raise self.error("Predicate operator applied to a non-test policy", tok)
        return p.pred

    def primary(self):
        tok = self.tok
        if tok.kind == "KEYWORD":
            self.advance()
            if tok.text == "dup":
                return Dup()
            if tok.text in ("skip", "true"):
                return SKIP
            if tok.text in ("drop", "false"):
                return DROP
            if tok.text == "if":
                cond = self.pred(self.policy(), tok)
                self.expect("KEYWORD", "then")
                then = self.policy()
                self.expect("KEYWORD", "else")
                return if_then_else(cond, then, self.policy())
            if tok.text == "while":
                cond = self.pred(self.policy(), tok)
                self.expect("KEYWORD", "do")
                return while_do(cond, self.policy())
            raise self.error(f"Unexpected keyword {tok.text!r}", tok)
        if tok.kind == "OP" and tok.text == "(":
            self.advance()
            p = self.policy()
            self.expect("OP", ")")
            return p
        if tok.kind == "NAME":
            self.advance()
            if self.at_op("=") or self.at_op("!=") or self.at_op(":="):
                op = self.advance().text
                value_tok = self.value_token()
                try:
                    f = self.schema.field_index(tok.text)
                    v = self.schema.value_code(f, value_tok.text)
                except SchemaError as err:
                    raise self.error(str(err), tok)
                if op == ":=":
                    return Assign(f, v)
                test = Test(f, v)
                return Filter(test if op == "=" else Not(test))
            if tok.text in self.env:
                return self.env[tok.text]
            raise self.error(f"Unknown name {tok.text!r}", tok)
        raise self.error(f"Unexpected {tok.text or 'end of input'!r}", tok)


def parse_program(text, semiring, schema=None, env=None):
    """Parse a policy file.

    Args:
        text (str): Policy text, optionally starting with ``version``,
            ``fields`` and ``let`` declarations.
        semiring (str or type): Semiring weight literals are read into.
        schema (FieldSchema, optional): Schema to resolve names against. Needed
            unless the text declares its own ``fields``.
        env (dict, optional): Predefined ``let`` names.

    Returns:
        :class:`Program`
    """
    return _Parser(text, semiring, schema, env).program()


def parse_policy(text, schema, semiring, env=None):
    """Parse policy text against ``schema``, returning the policy tree with
    ``if``, ``while``, ``skip``, ``drop`` and ``!=`` already expanded."""
    return parse_program(text, semiring, schema, env).policy


def parse_predicate(text, schema, semiring="boolean"):
    """Parse a predicate such as ``node=BAY & dst=NYC``."""
    p = parse_policy(text, schema, semiring)
    if not isinstance(p, Filter):
        raise PolicyParseError(f"Expected a predicate, got policy {text!r}")
    return p.pred


def parse_schema(text):
    """Read a standalone ``fields { ... }`` block."""
    parser = _Parser(text, "boolean")
    schema = parser.fields_block()
    if not parser.at("EOF"):
        raise parser.error(f"Unexpected {parser.tok.text!r} after fields block")
    return schema
