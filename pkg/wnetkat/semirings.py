"""Semiring instances used to weigh policies.

A semiring is a class whose instances are its carrier elements. ``+`` is the
semiring addition, ``*`` the multiplication, ``star()`` the closed form of the
countable sum of powers and ``leq`` the natural order. Each class carries
``zero``, ``one`` and the capability flags consulted by the decision
procedures. The class itself is the handle passed around the library.
"""
import math
from fractions import Fraction

from .errors import AlgebraError

INF = math.inf

_INF_LITERALS = ("inf", "+inf", "infinity", "∞", "+∞")
_NEG_INF_LITERALS = ("-inf", "-infinity", "-∞")


def parse_number(text):
    """Parse a numeric weight literal.

    Accepts integers, decimals (``0.98``), fractions (``3/200``), percentages
    (``1.5%``) and infinities (``inf``, ``-inf``, ``∞``).

    Returns:
        int, Fraction or float: exact value, floats only for infinities.
    """
    if isinstance(text, bool):
        return int(text)
    if isinstance(text, (int, Fraction)):
        return text
    if isinstance(text, float):
        return text if math.isinf(text) else Fraction(str(text))
    lit = str(text).strip().lower()
    if lit in _INF_LITERALS:
        return INF
    if lit in _NEG_INF_LITERALS:
        return -INF
    try:
        if lit.endswith("%"):
            value = Fraction(lit[:-1].strip()) / 100
        else:
            value = Fraction(lit)
    except (ValueError, ZeroDivisionError):
        raise AlgebraError(f"Could not read weight literal {text!r}")
    return value.numerator if value.denominator == 1 else value


def format_number(value):
    if value == INF:
        return "inf"
    if value == -INF:
        return "-inf"
    return str(value)


class Semiring:
    """Base class of semiring elements.

    Subclasses implement ``check``, ``__add__``, ``__mul__`` and ``star`` and
    set ``zero`` and ``one`` once the class body is complete.
    """

    __slots__ = ("value",)

    name = None
    zero = None
    one = None
    safety_capable = False
    reach_capable = False
    total_order = True
    idempotent = True

    def __init__(self, value):
        self.value = self.check(value)

    @classmethod
    def check(cls, value):
        """Return the canonical carrier value or raise :class:`AlgebraError`."""
        raise NotImplementedError

    @classmethod
    def parse(cls, text):
        """Read a weight literal into this carrier."""
        try:
            return cls(parse_number(text))
        except AlgebraError as err:
            raise AlgebraError(f"{text!r} is not a {cls.name} weight ({err})")

    @classmethod
    def _make(cls, value):
        # Skips validation, for results of carrier operations.
        obj = object.__new__(cls)
        obj.value = value
        return obj

    def __add__(self, other):
        raise NotImplementedError

    def __mul__(self, other):
        raise NotImplementedError

    def star(self):
        raise NotImplementedError

    def leq(self, other):
        return self.value <= other.value

    def __eq__(self, other):
        return type(other) is type(self) and self.value == other.value

    def __hash__(self):
        return hash((type(self).__name__, self.value))

    def __bool__(self):
        return self != type(self).zero

    def __repr__(self):
        return f"{type(self).__name__}({format_number(self.value)})"

    def __str__(self):
        return format_number(self.value)

    def to_float(self):
        """Approximate numeric value for display."""
        return float(self.value)


def _nat_or(value, *extra):
    value = parse_number(value)
    if value in extra:
        return value
    if isinstance(value, Fraction) and value.denominator == 1:
        value = value.numerator
    if isinstance(value, int) and value >= 0:
        return value
    raise AlgebraError(f"{format_number(value)} is not a natural number")


def _unit_interval(value):
    value = parse_number(value)
    if isinstance(value, (int, Fraction)) and 0 <= value <= 1:
        return value
    raise AlgebraError(f"{format_number(value)} is not in [0, 1]")


class Boolean(Semiring):
    """({0, 1}, or, and). Reachability of traces."""

    __slots__ = ()
    name = "boolean"
    safety_capable = True
    reach_capable = True

    @classmethod
    def check(cls, value):
        if isinstance(value, bool):
            return value
        if value in (0, 1):
            return bool(value)
        raise AlgebraError(f"{value!r} is not a boolean")

    @classmethod
    def parse(cls, text):
        lit = str(text).strip().lower()
        if lit in ("1", "true"):
            return cls.one
        if lit in ("0", "false"):
            return cls.zero
        raise AlgebraError(f"{text!r} is not a boolean weight")

    def __add__(self, other):
        return Boolean.one if self.value or other.value else Boolean.zero

    def __mul__(self, other):
        return Boolean.one if self.value and other.value else Boolean.zero

    def star(self):
        return Boolean.one

    def __str__(self):
        return "1" if self.value else "0"


Boolean.zero = Boolean._make(False)
Boolean.one = Boolean._make(True)


class Tropical(Semiring):
    """(ℕ ∪ {∞}, min, +). Smaller is better, so the order is reversed."""

    __slots__ = ()
    name = "tropical"
    reach_capable = True

    @classmethod
    def check(cls, value):
        return _nat_or(value, INF)

    def __add__(self, other):
        return self if self.value <= other.value else other

    def __mul__(self, other):
        return Tropical._make(self.value + other.value)

    def star(self):
        return Tropical.one

    def leq(self, other):
        return self.value >= other.value


Tropical.zero = Tropical._make(INF)
Tropical.one = Tropical._make(0)


class Arctic(Semiring):
    """(ℕ ∪ {∞, −∞}, max, +). Worst-case costs such as latency."""

    __slots__ = ()
    name = "arctic"
    safety_capable = True

    @classmethod
    def check(cls, value):
        return _nat_or(value, INF, -INF)

    def __add__(self, other):
        return self if self.value >= other.value else other

    def __mul__(self, other):
        if self.value == -INF or other.value == -INF:
            return Arctic.zero
        return Arctic._make(self.value + other.value)

    def star(self):
        return Arctic.one if self.value <= 0 else Arctic._make(INF)


Arctic.zero = Arctic._make(-INF)
Arctic.one = Arctic._make(0)


class ProbUnion(Semiring):
    """([0, 1] ∪ {−∞}, max, r1 + r2 − r1·r2). Worst-case failure probabilities."""

    __slots__ = ()
    name = "prob-union"
    safety_capable = True

    @classmethod
    def check(cls, value):
        if parse_number(value) == -INF:
            return -INF
        return _unit_interval(value)

    def __add__(self, other):
        return self if self.value >= other.value else other

    def __mul__(self, other):
        if self.value == -INF or other.value == -INF:
            return ProbUnion.zero
        a, b = self.value, other.value
        return ProbUnion._make(a + b - a * b)

    def star(self):
        return ProbUnion._make(1) if self.value > 0 else ProbUnion.one


ProbUnion.zero = ProbUnion._make(-INF)
ProbUnion.one = ProbUnion._make(0)


class Bottleneck(Semiring):
    """(ℕ ∪ {∞, −∞}, max, min). Best-case bandwidth."""

    __slots__ = ()
    name = "bottleneck"
    reach_capable = True

    @classmethod
    def check(cls, value):
        return _nat_or(value, INF, -INF)

    def __add__(self, other):
        return self if self.value >= other.value else other

    def __mul__(self, other):
        return self if self.value <= other.value else other

    def star(self):
        return Bottleneck.one


Bottleneck.zero = Bottleneck._make(-INF)
Bottleneck.one = Bottleneck._make(INF)


class Viterbi(Semiring):
    """([0, 1], max, ·). Best-case reliability."""

    __slots__ = ()
    name = "viterbi"
    reach_capable = True

    @classmethod
    def check(cls, value):
        return _unit_interval(value)

    def __add__(self, other):
        return self if self.value >= other.value else other

    def __mul__(self, other):
        return Viterbi._make(self.value * other.value)

    def star(self):
        return Viterbi.one


Viterbi.zero = Viterbi._make(0)
Viterbi.one = Viterbi._make(1)


SECURITY_LEVELS = ("0", "L", "M", "H")


class Security(Semiring):
    """Security levels 0 < L < M < H under (max, min)."""

    __slots__ = ()
    name = "security"
    reach_capable = True

    @classmethod
    def check(cls, value):
        if isinstance(value, str) and value.strip().upper() in SECURITY_LEVELS:
            return SECURITY_LEVELS.index(value.strip().upper())
        if isinstance(value, int) and not isinstance(value, bool) and 0 <= value < 4:
            return value
        raise AlgebraError(
            f"{value!r} is not a security level (one of {', '.join(SECURITY_LEVELS)})"
        )

    @classmethod
    def parse(cls, text):
        lit = str(text).strip().upper()
        if lit not in SECURITY_LEVELS:
            raise AlgebraError(f"{text!r} is not a security weight")
        return cls(lit)

    def __add__(self, other):
        return self if self.value >= other.value else other

    def __mul__(self, other):
        return self if self.value <= other.value else other

    def star(self):
        return Security.one

    def __str__(self):
        return SECURITY_LEVELS[self.value]

    def __repr__(self):
        return f"Security({SECURITY_LEVELS[self.value]})"


Security.zero = Security._make(0)
Security.one = Security._make(3)


class NatInf(Semiring):
    """(ℕ ∪ {∞}, +, ·) with 0·∞ = 0. Counts traces."""

    __slots__ = ()
    name = "nat-inf"
    idempotent = False

    @classmethod
    def check(cls, value):
        return _nat_or(value, INF)

    def __add__(self, other):
        return NatInf._make(self.value + other.value)

    def __mul__(self, other):
        if self.value == 0 or other.value == 0:
            return NatInf.zero
        return NatInf._make(self.value * other.value)

    def star(self):
        return NatInf.one if self.value == 0 else NatInf._make(INF)


NatInf.zero = NatInf._make(0)
NatInf.one = NatInf._make(1)


class Real(Semiring):
    """(ℚ≥0 ∪ {∞}, +, ·) with 0·∞ = 0, exact rationals."""

    __slots__ = ()
    name = "real"
    idempotent = False

    @classmethod
    def check(cls, value):
        value = parse_number(value)
        if value == INF or (isinstance(value, (int, Fraction)) and value >= 0):
            return value
        raise AlgebraError(f"{format_number(value)} is not a non-negative rational")

    def __add__(self, other):
        return Real._make(self.value + other.value)

    def __mul__(self, other):
        if self.value == 0 or other.value == 0:
            return Real.zero
        return Real._make(self.value * other.value)

    def star(self):
        if self.value < 1:
            return Real._make(1 / (1 - Fraction(self.value)))
        return Real._make(INF)


Real.zero = Real._make(0)
Real.one = Real._make(1)


_SEMIRINGS = {
    cls.name: cls
    for cls in (Boolean, Tropical, Arctic, ProbUnion, Bottleneck, Viterbi, Security, NatInf, Real)
}


def register_semiring(custom_sr):
    """Register a custom semiring, gettable with `semirings.get`.

    Args:
        custom_sr: :class:`Semiring` subclass with a unique ``name``.

    """
    name = custom_sr.name or custom_sr.__name__.lower()
    if name in _SEMIRINGS or custom_sr in _SEMIRINGS.values():
        raise ValueError(f"Semiring {name} already exists. Choose another name.")
    custom_sr.name = name
    _SEMIRINGS[name] = custom_sr
    return custom_sr


def available_semirings():
    return list(_SEMIRINGS.keys())


def get(identifier):
    """Returns a semiring from a string. Returns its input if it is already a
    semiring class.

    Args:
        identifier (str or type or None): the semiring identifier, e.g.
            ``"prob-union"`` (``prob_union`` is accepted too).

    Returns:
        type or None
    """
    if identifier is None:
        return None
    elif isinstance(identifier, type) and issubclass(identifier, Semiring):
        return identifier
    elif isinstance(identifier, str):
        cls = _SEMIRINGS.get(identifier.strip().lower().replace("_", "-"))
        if cls is None:
            raise ValueError("Could not interpret semiring identifier: " + str(identifier))
        return cls
    else:
        raise ValueError("Could not interpret semiring identifier: " + str(identifier))


def _check_carrier(h, *values):
    if not (isinstance(h, type) and issubclass(h, Semiring)):
        raise AlgebraError(f"{h!r} is not a semiring")
    for v in values:
        if type(v) is not h:
            raise AlgebraError(f"{v!r} is not in the carrier of {h.name}")


def sr_add(h, a, b):
    _check_carrier(h, a, b)
    return a + b


def sr_mul(h, a, b):
    _check_carrier(h, a, b)
    return a * b


def sr_star(h, a):
    _check_carrier(h, a)
    return a.star()


def sr_leq(h, a, b):
    _check_carrier(h, a, b)
    return a.leq(b)


def sr_capabilities(h):
    """Flags gating the decision procedures.

    Returns:
        frozenset: subset of ``{"safety_capable", "reach_capable"}``.
    """
    _check_carrier(h)
    flags = set()
    if h.safety_capable:
        flags.add("safety_capable")
    if h.reach_capable:
        flags.add("reach_capable")
    return frozenset(flags)


def parse_weight(h, text):
    """Read ``text`` as a weight of semiring ``h``."""
    return get(h).parse(text)


def sr_sum(h, values):
    total = h.zero
    for v in values:
        total = total + v
    return total


def sr_prod(h, values):
    total = h.one
    for v in values:
        total = total * v
    return total
