"""
The uniform coupling field.

One 64-bit clock per off-diagonal pair (ordered pairs in the asymmetric
model, unordered pairs in the symmetric one). Clock k is the k-th raw output
of a Philox counter-based generator keyed by the seed, where k is the pair's
position in lexicographic order, so the field is a pure function of
(n, model, seed) and any pair can be addressed without drawing the others.

Entry (i, j) of the matrix at probability p is 1 iff clock(i, j) <= p * 2^64.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from apps.core.constants import CLOCK_MAX, CLOCK_SCALE, Model
from apps.core.exceptions import InvalidParameterError
from apps.core.validators import ProbabilityLike, as_dimension, as_model, as_probability, as_seed
from apps.matrix.bitmatrix import ZeroOneMatrix
from .templates import Template, require_valid_template

logger = logging.getLogger(__name__)


def pair_count(n: int, model: Model) -> int:
    return n * (n - 1) if model is Model.ASYMMETRIC else n * (n - 1) // 2


def pair_index(i: int, j: int, n: int, model: Model) -> int:
    """Position of the pair (i, j) in lexicographic pair order."""
    if i == j:
        raise InvalidParameterError('Diagonal pairs carry no clock', details={'i': i, 'j': j})
    if model is Model.ASYMMETRIC:
        return i * (n - 1) + (j if j < i else j - 1)
    i, j = min(i, j), max(i, j)
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def probability_bound(p: ProbabilityLike) -> int:
    """Largest clock value counted as present at p (clamped to 64 bits)."""
    value = as_probability(p)
    return min((value.numerator * CLOCK_SCALE) // value.denominator, CLOCK_MAX)


def clock_to_probability(clock: int) -> Fraction:
    return Fraction(clock, CLOCK_SCALE)


@dataclass(frozen=True)
class UniformField:
    """Immutable clock field for one (n, model, seed)."""

    n: int
    model: Model
    seed: int
    clocks: np.ndarray = field(compare=False, repr=False)

    @classmethod
    def create(cls, n: int, model: Model | str, seed: int) -> 'UniformField':
        n = as_dimension(n, minimum=2)
        model = as_model(model)
        seed = as_seed(seed)
        raw = np.random.Philox(key=seed).random_raw(pair_count(n, model))
        raw = np.asarray(raw, dtype=np.uint64)
        raw.flags.writeable = False
        logger.debug('Created uniform field', extra={'n': n, 'model': model.value, 'seed': seed})
        return cls(n=n, model=model, seed=seed, clocks=raw)

    def clock(self, i: int, j: int) -> int:
        return int(self.clocks[pair_index(i, j, self.n, self.model)])

    @property
    def off_diagonal(self) -> np.ndarray:
        return ~np.eye(self.n, dtype=bool)

    def clock_matrix(self) -> np.ndarray:
        """n×n uint64 clocks; the diagonal holds CLOCK_MAX and must be masked."""
        n = self.n
        matrix = np.full((n, n), CLOCK_MAX, dtype=np.uint64)
        if self.model is Model.ASYMMETRIC:
            matrix[self.off_diagonal] = self.clocks
        else:
            upper = np.triu_indices(n, 1)
            matrix[upper] = self.clocks
            matrix[upper[1], upper[0]] = self.clocks
        return matrix

    def arrivals(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        All pairs in arrival order: (clocks, rows, cols) sorted by clock,
        ties broken by lexicographic pair order. Symmetric pairs have row < col.
        """
        if self.model is Model.ASYMMETRIC:
            rows, cols = np.nonzero(self.off_diagonal)
        else:
            rows, cols = np.triu_indices(self.n, 1)
        order = np.lexsort((np.arange(self.clocks.size), self.clocks))
        return self.clocks[order], rows[order], cols[order]

    def availability(self, template: Optional[Template] = None) -> tuple[np.ndarray, np.ndarray]:
        """(random, fixed_one): entries driven by clocks, entries forced to 1."""
        if template is None or template.is_degenerate:
            return self.off_diagonal, np.zeros((self.n, self.n), dtype=bool)
        require_valid_template(template, self.n, self.model)
        fixed, fixed_one = template.fixed_masks(self.n)
        return self.off_diagonal & ~fixed, fixed_one

    def matrix_at_clock(self, bound: int, template: Optional[Template] = None,
                        strict: bool = False) -> ZeroOneMatrix:
        """Matrix with clock <= bound (clock < bound when strict) plus template overrides."""
        random, fixed_one = self.availability(template)
        clocks = self.clock_matrix()
        if strict:
            present = clocks < np.uint64(bound) if bound > 0 else np.zeros_like(random)
        else:
            present = clocks <= np.uint64(bound)
        return ZeroOneMatrix.from_array((random & present) | fixed_one)

    def matrix_at(self, p: ProbabilityLike, template: Optional[Template] = None) -> ZeroOneMatrix:
        return self.matrix_at_clock(probability_bound(p), template)


def field_new(n: int, model: Model | str, seed: int) -> UniformField:
    return UniformField.create(n, model, seed)


def matrix_at(field: UniformField, p: ProbabilityLike, template: Optional[Template] = None) -> ZeroOneMatrix:
    """Thresholded matrix at p with template rows and columns overridden."""
    return field.matrix_at(p, template)
