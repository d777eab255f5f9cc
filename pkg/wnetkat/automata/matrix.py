"""Dense weighting matrices over a semiring.

Entries are semiring elements held in numpy object arrays. Products are
computed with explicit semiring sums, never with numpy's numeric dot.
"""
import operator
from functools import reduce

import numpy as np

from ..errors import DimensionError


def _zeros(semiring, n, m):
    out = np.empty((n, m), dtype=object)
    out.fill(semiring.zero)
    return out


def _mm(x, y, semiring):
    n, k = x.shape
    m = y.shape[1]
    out = _zeros(semiring, n, m)
    for i in range(n):
        for j in range(m):
            terms = [x[i, l] * y[l, j] for l in range(k) if x[i, l] and y[l, j]]
            if terms:
                out[i, j] = reduce(operator.add, terms)
    return out


def _madd(x, y):
    out = np.empty(x.shape, dtype=object)
    for idx in np.ndindex(x.shape):
        out[idx] = x[idx] + y[idx]
    return out


def star_array(a, semiring):
    """Star of a square object array by recursive 2×2 block decomposition.

    For ``[[A, B], [C, D]]`` with ``F = A ⊕ B D* C``::

        M* = [[F*,       F* B D*            ],
              [D* C F*,  D* ⊕ D* C F* B D*  ]]
    """
    n = a.shape[0]
    if n == 0:
        return _zeros(semiring, 0, 0)
    if n == 1:
        out = np.empty((1, 1), dtype=object)
        out[0, 0] = a[0, 0].star()
        return out
    k = n // 2
    A, B, C, D = a[:k, :k], a[:k, k:], a[k:, :k], a[k:, k:]
    d_star = star_array(D, semiring)
    b_d_star = _mm(B, d_star, semiring)
    f_star = star_array(_madd(A, _mm(b_d_star, C, semiring)), semiring)
    d_star_c_f_star = _mm(_mm(d_star, C, semiring), f_star, semiring)
    top = np.concatenate([f_star, _mm(f_star, b_d_star, semiring)], axis=1)
    bottom = np.concatenate(
        [d_star_c_f_star, _madd(d_star, _mm(d_star_c_f_star, b_d_star, semiring))], axis=1
    )
    return np.concatenate([top, bottom], axis=0)


class WeightingMatrix:
    """Matrix with labelled rows and columns and semiring entries.

    Args:
        semiring (type): Semiring of the entries.
        rows (sequence): Row labels.
        cols (sequence): Column labels.
        data (np.ndarray, optional): Object array of shape
            ``(len(rows), len(cols))``. Defaults to all zeros.
    """

    def __init__(self, semiring, rows, cols, data=None):
        self.semiring = semiring
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        if data is None:
            data = _zeros(semiring, len(self.rows), len(self.cols))
        if data.shape != (len(self.rows), len(self.cols)):
            raise DimensionError(
                f"Data of shape {data.shape} does not fit {len(self.rows)}x{len(self.cols)} labels"
            )
        self.data = data
        self._row_index = {r: i for i, r in enumerate(self.rows)}
        self._col_index = {c: j for j, c in enumerate(self.cols)}

    @classmethod
    def identity(cls, semiring, labels):
        labels = tuple(labels)
        data = _zeros(semiring, len(labels), len(labels))
        for i in range(len(labels)):
            data[i, i] = semiring.one
        return cls(semiring, labels, labels, data)

    @classmethod
    def from_entries(cls, semiring, rows, cols, entries):
        """Build from ``{(row, col): weight}``; repeated cells are summed."""
        m = cls(semiring, rows, cols)
        for (r, c), w in entries.items():
            i, j = m._row_index[r], m._col_index[c]
            m.data[i, j] = m.data[i, j] + w
        return m

    @property
    def shape(self):
        return self.data.shape

    def __getitem__(self, key):
        r, c = key
        return self.data[self._row_index[r], self._col_index[c]]

    def __eq__(self, other):
        return (
            isinstance(other, WeightingMatrix)
            and self.semiring is other.semiring
            and (self.rows, self.cols) == (other.rows, other.cols)
            and all(a == b for a, b in zip(self.data.flat, other.data.flat))
        )

    def nonzero(self):
        """``{(row, col): weight}`` of non-zero cells."""
        return {
            (self.rows[i], self.cols[j]): self.data[i, j]
            for i, j in np.ndindex(self.data.shape)
            if self.data[i, j]
        }

    def __repr__(self):
        return f"WeightingMatrix({self.semiring.name}, {len(self.rows)}x{len(self.cols)})"


def mat_mul(a, b):
    """Semiring product ``(x, z) -> Σ_y a(x, y) ⊗ b(y, z)``."""
    if a.cols != b.rows:
        raise DimensionError(f"Cannot multiply {a.shape} by {b.shape}: inner labels differ")
    return WeightingMatrix(a.semiring, a.rows, b.cols, _mm(a.data, b.data, a.semiring))


def mat_add(a, b):
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionError(f"Cannot add {a.shape} and {b.shape}")
    return WeightingMatrix(a.semiring, a.rows, a.cols, _madd(a.data, b.data))


def mat_star(m):
    """``M* = Σₙ Mⁿ``, computed in closed form."""
    if m.rows != m.cols:
        raise DimensionError(f"Star needs a square matrix with equal labels, got {m.shape}")
    return WeightingMatrix(m.semiring, m.rows, m.cols, star_array(m.data, m.semiring))
