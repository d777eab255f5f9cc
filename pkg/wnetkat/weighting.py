"""Finitely supported weightings: maps from outcomes to semiring values.

Only non-zero entries are stored, so two weightings are equal exactly when
they agree everywhere.
"""
from collections.abc import Mapping


class Weighting(Mapping):
    """Immutable map ``outcome -> weight`` over a semiring.

    Args:
        semiring (type): Semiring class of the weights.
        items (iterable or Mapping): ``(outcome, weight)`` pairs. Repeated
            outcomes are summed and zero entries dropped.
    """

    __slots__ = ("semiring", "_data")

    def __init__(self, semiring, items=()):
        self.semiring = semiring
        if isinstance(items, Mapping):
            items = items.items()
        data = {}
        for x, w in items:
            if x in data:
                data[x] = data[x] + w
            else:
                data[x] = w
        self._data = {x: w for x, w in data.items() if w}

    def at(self, x):
        """Weight of ``x``, zero outside the support."""
        return self._data.get(x, self.semiring.zero)

    def support(self):
        return frozenset(self._data)

    def __getitem__(self, x):
        return self._data[x]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __eq__(self, other):
        if not isinstance(other, Weighting):
            return NotImplemented
        return self.semiring is other.semiring and self._data == other._data

    def __hash__(self):
        return hash((self.semiring.__name__, frozenset(self._data.items())))

    def __repr__(self):
        return f"Weighting({self.semiring.name}, {self._data!r})"

    def format(self, fmt=str):
        """Sorted ``outcome ↦ weight`` lines, outcomes rendered with ``fmt``."""
        lines = sorted(f"{fmt(x)} ↦ {w}" for x, w in self._data.items())
        return "\n".join(lines)

    __str__ = format


def empty(semiring):
    return Weighting(semiring)


def unit(semiring, x):
    """η(x): ``x`` with weight one, everything else zero."""
    return Weighting(semiring, ((x, semiring.one),))


def bind(m, f):
    """Kleisli extension: ``y -> Σ_x m(x) ⊗ f(x)(y)``."""
    out = {}
    for x, w in m.items():
        for y, v in f(x).items():
            wv = w * v
            out[y] = out[y] + wv if y in out else wv
    return Weighting(m.semiring, out)


def w_add(m1, m2):
    if not m2:
        return m1
    if not m1:
        return m2
    return Weighting(m1.semiring, list(m1.items()) + list(m2.items()))


def w_scale_left(r, m):
    return Weighting(m.semiring, ((x, r * w) for x, w in m.items()))


def w_scale_right(m, r):
    return Weighting(m.semiring, ((x, w * r) for x, w in m.items()))


def mass(m):
    """Sum of all weights in the support."""
    total = m.semiring.zero
    for w in m.values():
        total = total + w
    return total
