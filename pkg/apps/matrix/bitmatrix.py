"""
Dense bit-packed 0-1 matrices.

Each row is stored as a Python int whose bit j is the entry in column j, so
row operations over GF(2) are single XORs on arbitrary-width words. Indices
are 0-based throughout the library; JSON and file formats convert at the
boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from apps.core.exceptions import DimensionMismatchError, InvalidParameterError


def _row_to_int(bits: np.ndarray) -> int:
    packed = np.packbits(bits.astype(np.uint8), bitorder='little')
    return int.from_bytes(packed.tobytes(), 'little')


def _rows_to_array(rows: Sequence[int], ncols: int) -> np.ndarray:
    nbytes = max(1, (ncols + 7) // 8)
    buf = b''.join(r.to_bytes(nbytes, 'little') for r in rows)
    packed = np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), nbytes)
    return np.unpackbits(packed, axis=1, bitorder='little')[:, :ncols]


@dataclass(frozen=True)
class ZeroOneMatrix:
    """
    Immutable 0-1 matrix with ``n`` rows and ``ncols`` columns.

    Square unless built as a minor with unequal row/column removals.
    """

    n: int
    rows: tuple[int, ...]
    ncols: Optional[int] = field(default=None)

    def __post_init__(self):
        if self.ncols is None:
            object.__setattr__(self, 'ncols', self.n)
        if self.n < 0 or self.ncols < 0:
            raise InvalidParameterError('Matrix dimensions must be non-negative')
        if len(self.rows) != self.n:
            raise DimensionMismatchError(
                f"Expected {self.n} rows, got {len(self.rows)}"
            )
        limit = 1 << self.ncols
        for i, row in enumerate(self.rows):
            if row < 0 or row >= limit:
                raise DimensionMismatchError(f"Row {i} has entries beyond column {self.ncols - 1}")

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def from_array(cls, array) -> 'ZeroOneMatrix':
        arr = np.asarray(array)
        if arr.ndim != 2:
            raise DimensionMismatchError('A 0-1 matrix needs a two-dimensional array')
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise InvalidParameterError('Matrix entries must be 0 or 1')
        nrows, ncols = arr.shape
        rows = tuple(_row_to_int(arr[i]) for i in range(nrows)) if ncols else (0,) * nrows
        return cls(n=nrows, rows=rows, ncols=ncols)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> 'ZeroOneMatrix':
        rows = [list(r) for r in rows]
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatchError('All rows must have the same length')
        if not rows:
            return cls(n=0, rows=())
        return cls.from_array(np.array(rows, dtype=np.int64))

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> 'ZeroOneMatrix':
        parsed = []
        for line in lines:
            line = line.strip()
            if set(line) - {'0', '1'}:
                raise InvalidParameterError(f"Row '{line}' contains characters other than 0 and 1")
            parsed.append([int(ch) for ch in line])
        return cls.from_rows(parsed)

    @classmethod
    def identity(cls, n: int) -> 'ZeroOneMatrix':
        return cls(n=n, rows=tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, n: int, ncols: Optional[int] = None) -> 'ZeroOneMatrix':
        return cls(n=n, rows=(0,) * n, ncols=ncols)

    @classmethod
    def ones_off_diagonal(cls, n: int) -> 'ZeroOneMatrix':
        full = (1 << n) - 1
        return cls(n=n, rows=tuple(full ^ (1 << i) for i in range(n)))

    @classmethod
    def random(cls, n: int, density: float, rng: np.random.Generator,
               ncols: Optional[int] = None) -> 'ZeroOneMatrix':
        """I.i.d. Bernoulli(density) entries, diagonal included."""
        ncols = n if ncols is None else ncols
        return cls.from_array((rng.random((n, ncols)) < density).astype(np.uint8))

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.n, self.ncols

    @property
    def is_square(self) -> bool:
        return self.n == self.ncols

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> tuple[int, ...]:
        return tuple((self.rows[i] >> j) & 1 for j in range(self.ncols))

    def col(self, j: int) -> tuple[int, ...]:
        return tuple((r >> j) & 1 for r in self.rows)

    def to_array(self) -> np.ndarray:
        if self.n == 0 or self.ncols == 0:
            return np.zeros((self.n, self.ncols), dtype=np.uint8)
        return _rows_to_array(self.rows, self.ncols)

    def to_strings(self) -> list[str]:
        return [''.join(str(b) for b in self.row(i)) for i in range(self.n)]

    def to_bytes(self) -> bytes:
        nbytes = max(1, (self.ncols + 7) // 8)
        header = self.n.to_bytes(4, 'little') + self.ncols.to_bytes(4, 'little')
        return header + b''.join(r.to_bytes(nbytes, 'little') for r in self.rows)

    @cached_property
    def _transpose(self) -> 'ZeroOneMatrix':
        if self.n == 0 or self.ncols == 0:
            return ZeroOneMatrix.zeros(self.ncols, self.n)
        return ZeroOneMatrix.from_array(self.to_array().T)

    def transpose(self) -> 'ZeroOneMatrix':
        return self._transpose

    @property
    def T(self) -> 'ZeroOneMatrix':
        return self._transpose

    def is_symmetric(self) -> bool:
        return self.is_square and self.rows == self.transpose().rows

    def leading_minor(self, k: int) -> 'ZeroOneMatrix':
        """M[k]: the top-left k×k block."""
        if not 0 <= k <= min(self.n, self.ncols):
            raise InvalidParameterError(f"Leading minor size {k} outside [0, {min(self.n, self.ncols)}]")
        mask = (1 << k) - 1
        return ZeroOneMatrix(n=k, rows=tuple(r & mask for r in self.rows[:k]))

    def minor(self, drop_rows: Iterable[int] = (), drop_cols: Iterable[int] = ()) -> 'ZeroOneMatrix':
        """M^(A,B): rows in A and columns in B removed; may be rectangular."""
        arr = self.to_array()
        keep_rows = sorted(set(range(self.n)) - set(drop_rows))
        keep_cols = sorted(set(range(self.ncols)) - set(drop_cols))
        return ZeroOneMatrix.from_array(arr[np.ix_(keep_rows, keep_cols)])

    def row_weight(self, i: int) -> int:
        return self.rows[i].bit_count()

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def out_neighbours(self, i: int) -> frozenset[int]:
        row = self.rows[i]
        return frozenset(j for j in range(self.ncols) if (row >> j) & 1)

    def in_neighbours(self, j: int) -> frozenset[int]:
        return self.transpose().out_neighbours(j)

    def with_rows(self, replacements: dict[int, int]) -> 'ZeroOneMatrix':
        """Copy with the given rows replaced by new bit masks."""
        rows = list(self.rows)
        for i, mask in replacements.items():
            rows[i] = mask
        return ZeroOneMatrix(n=self.n, rows=tuple(rows), ncols=self.ncols)

    def __str__(self) -> str:
        return '\n'.join(self.to_strings())


def mask_of(indices: Iterable[int]) -> int:
    """Bit mask with the given positions set."""
    mask = 0
    for j in indices:
        mask |= 1 << j
    return mask
