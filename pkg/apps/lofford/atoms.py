"""
Exact maximum atoms of Bernoulli forms.

For iid Bernoulli(p) variables the module computes the full distribution of

    linear     sum_i a_i x_i
    bilinear   sum_ij A_ij x_i y_j     (x, y independent)
    quadratic  sum_ij A_ij x_i x_j     (A symmetric)

by exhaustive enumeration. Coefficients are scaled to integers by the lcm of
their denominators; an outcome with w ones has probability
a^w (b - a)^(N - w) / b^N for p = a/b and N variables, so every atom is an
integer numerator over b^N and the distribution is exact.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from apps.core.conf import lab_setting
from apps.core.constants import FormKind
from apps.core.exceptions import (
    DimensionMismatchError,
    EnumerationLimitError,
    InternalInvariantError,
    InvalidParameterError,
)
from apps.core.validators import ProbabilityLike, as_probability

logger = logging.getLogger(__name__)

_INT64_SAFE = 1 << 62
_CHUNK = 1 << 16

Coefficients = Sequence[Any]


@dataclass(frozen=True)
class AtomReport:
    form_kind: FormKind
    k: int
    p: Fraction
    sup_atom: Fraction
    argmax_r: tuple[Fraction, ...]
    support_size: int
    l_parameter: Optional[int] = None

    def to_json(self) -> dict:
        return {
            'form_kind': self.form_kind.value,
            'k': self.k,
            'p': str(self.p),
            'sup_atom': str(self.sup_atom),
            'sup_atom_float': float(self.sup_atom),
            'argmax_r': [str(r) for r in self.argmax_r],
            'support_size': self.support_size,
            'l_parameter': self.l_parameter,
        }


# ----------------------------------------------------------------------
# Input coercion
# ----------------------------------------------------------------------
def _fraction(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise InvalidParameterError('Coefficients must be numbers', details={'value': value})
    try:
        return Fraction(str(value)) if isinstance(value, float) else Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InvalidParameterError(f"'{value}' is not a rational number", details={'value': str(value)})


def parse_vector(coefficients: Coefficients) -> list[Fraction]:
    if isinstance(coefficients, (str, bytes)) or not isinstance(coefficients, Sequence):
        raise InvalidParameterError('Linear coefficients must be a list')
    return [_fraction(v) for v in coefficients]


def parse_matrix(coefficients: Coefficients) -> list[list[Fraction]]:
    """Square matrix of rationals from nested lists."""
    if isinstance(coefficients, (str, bytes)) or not isinstance(coefficients, Sequence) or not coefficients:
        raise InvalidParameterError('Form matrix must be a non-empty list of rows')
    rows = [parse_vector(row) for row in coefficients]
    k = len(rows)
    if any(len(row) != k for row in rows):
        raise DimensionMismatchError(f"Form matrix must be {k}×{k}", details={'row_lengths': [len(r) for r in rows]})
    return rows


def _check_p(p: ProbabilityLike) -> Fraction:
    value = as_probability(p)
    if not 0 < value <= Fraction(1, 2):
        raise InvalidParameterError('p must lie in (0, 1/2]', details={'p': str(value)})
    return value


def _check_size(k: int, setting: str) -> None:
    cap = lab_setting(setting)
    if k > cap:
        raise EnumerationLimitError(
            f"k = {k} exceeds the enumeration cap {cap}", details={'k': k, 'cap': cap, 'setting': setting}
        )


def _integer_scale(values: Sequence[Fraction]) -> int:
    return math.lcm(*(v.denominator for v in values)) if values else 1


# ----------------------------------------------------------------------
# Enumeration
# ----------------------------------------------------------------------
def _merge(values: np.ndarray, numerators: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sort by value and add the numerators of equal values."""
    order = np.argsort(values, kind='stable')
    values, numerators = values[order], numerators[order]
    starts = np.flatnonzero(np.r_[True, values[1:] != values[:-1]])
    return values[starts], np.add.reduceat(numerators, starts)


def _weight_terms(p: Fraction, variables: int, dtype) -> np.ndarray:
    a, b = p.numerator, p.denominator
    return np.array([a ** w * (b - a) ** (variables - w) for w in range(variables + 1)], dtype=dtype)


def _dtype_for(p: Fraction, variables: int, value_bound: int):
    fits = p.denominator ** variables < _INT64_SAFE and value_bound < _INT64_SAFE
    return np.int64 if fits else object


def _bit_rows(start: int, stop: int, k: int, dtype) -> np.ndarray:
    codes = np.arange(start, stop, dtype=np.int64)
    return ((codes[:, None] >> np.arange(k)) & 1).astype(dtype)


def _linear(ints: list[int], p: Fraction) -> tuple[np.ndarray, np.ndarray]:
    k = len(ints)
    dtype = _dtype_for(p, k, sum(abs(c) for c in ints))
    a, q = p.numerator, p.denominator - p.numerator
    sums = np.zeros(1, dtype=dtype)
    nums = np.ones(1, dtype=dtype)
    for c in ints:
        sums, nums = _merge(np.concatenate([sums, sums + c]), np.concatenate([nums * q, nums * a]))
    return sums, nums


def _bilinear(A: list[list[int]], p: Fraction) -> tuple[np.ndarray, np.ndarray]:
    k = len(A)
    dtype = _dtype_for(p, 2 * k, sum(abs(v) for row in A for v in row))
    terms = _weight_terms(p, 2 * k, dtype)
    matrix = np.array(A, dtype=dtype)
    Y = _bit_rows(0, 1 << k, k, dtype)
    wy = Y.sum(axis=1).astype(np.int64)
    values = np.zeros(0, dtype=dtype)
    nums = np.zeros(0, dtype=dtype)
    step = max(1, _CHUNK >> k)
    for start in range(0, 1 << k, step):
        X = _bit_rows(start, min(start + step, 1 << k), k, dtype)
        block = (X @ matrix) @ Y.T
        weights = X.sum(axis=1).astype(np.int64)[:, None] + wy[None, :]
        values, nums = _merge(
            np.concatenate([values, block.ravel()]),
            np.concatenate([nums, terms[weights.ravel()]]),
        )
    return values, nums


def _quadratic(A: list[list[int]], p: Fraction) -> tuple[np.ndarray, np.ndarray]:
    k = len(A)
    dtype = _dtype_for(p, k, sum(abs(v) for row in A for v in row))
    terms = _weight_terms(p, k, dtype)
    matrix = np.array(A, dtype=dtype)
    values = np.zeros(0, dtype=dtype)
    nums = np.zeros(0, dtype=dtype)
    for start in range(0, 1 << k, _CHUNK):
        X = _bit_rows(start, min(start + _CHUNK, 1 << k), k, dtype)
        block = ((X @ matrix) * X).sum(axis=1)
        weights = X.sum(axis=1).astype(np.int64)
        values, nums = _merge(np.concatenate([values, block]), np.concatenate([nums, terms[weights]]))
    return values, nums


def _to_distribution(values: np.ndarray, nums: np.ndarray, scale: int,
                     denominator: int) -> dict[Fraction, Fraction]:
    total = sum(int(v) for v in nums)
    if total != denominator:
        raise InternalInvariantError(
            'Atom probabilities do not sum to one', details={'total': str(total), 'denominator': str(denominator)}
        )
    return {Fraction(int(v), scale): Fraction(int(m), denominator) for v, m in zip(values, nums)}


# ----------------------------------------------------------------------
# Public API
# ----------------------------------------------------------------------
def linear_distribution(a: Coefficients, p: ProbabilityLike) -> dict[Fraction, Fraction]:
    coefficients = parse_vector(a)
    p = _check_p(p)
    if not coefficients:
        raise InvalidParameterError('A linear form needs at least one coefficient')
    if any(c == 0 for c in coefficients):
        raise InvalidParameterError('Linear coefficients must be non-zero')
    _check_size(len(coefficients), 'LINEAR_MAX_K')
    scale = _integer_scale(coefficients)
    values, nums = _linear([int(c * scale) for c in coefficients], p)
    return _to_distribution(values, nums, scale, p.denominator ** len(coefficients))


def bilinear_distribution(A: Coefficients, p: ProbabilityLike) -> dict[Fraction, Fraction]:
    rows = parse_matrix(A)
    p = _check_p(p)
    _check_size(len(rows), 'BILINEAR_MAX_K')
    scale = _integer_scale([v for row in rows for v in row])
    values, nums = _bilinear([[int(v * scale) for v in row] for row in rows], p)
    return _to_distribution(values, nums, scale, p.denominator ** (2 * len(rows)))


def quadratic_distribution(A: Coefficients, p: ProbabilityLike) -> dict[Fraction, Fraction]:
    rows = parse_matrix(A)
    k = len(rows)
    if any(rows[i][j] != rows[j][i] for i in range(k) for j in range(i)):
        raise InvalidParameterError('A quadratic form needs a symmetric matrix')
    p = _check_p(p)
    _check_size(k, 'QUADRATIC_MAX_K')
    scale = _integer_scale([v for row in rows for v in row])
    values, nums = _quadratic([[int(v * scale) for v in row] for row in rows], p)
    return _to_distribution(values, nums, scale, p.denominator ** k)


_DISTRIBUTIONS = {
    FormKind.LINEAR: linear_distribution,
    FormKind.BILINEAR: bilinear_distribution,
    FormKind.QUADRATIC: quadratic_distribution,
}


def atom_distribution(kind: FormKind | str, coefficients: Coefficients,
                      p: ProbabilityLike) -> dict[Fraction, Fraction]:
    """Exact value -> probability map of the form, sorted by value."""
    try:
        kind = FormKind(kind)
    except ValueError:
        raise InvalidParameterError(f"Unknown form kind '{kind}'", details={'choices': [f.value for f in FormKind]})
    return _DISTRIBUTIONS[kind](coefficients, p)


def bilinear_l_parameter(A: Coefficients) -> int:
    """Largest l such that at least l columns of A have at least l non-zero entries."""
    rows = parse_matrix(A)
    counts = sorted((sum(1 for row in rows if row[j] != 0) for j in range(len(rows))), reverse=True)
    return max((l for l, c in enumerate(counts, start=1) if c >= l), default=0)


def atom_report(kind: FormKind | str, coefficients: Coefficients, p: ProbabilityLike) -> AtomReport:
    distribution = atom_distribution(kind, coefficients, p)
    kind = FormKind(kind)
    sup_atom = max(distribution.values())
    k = len(coefficients)
    report = AtomReport(
        form_kind=kind,
        k=k,
        p=as_probability(p),
        sup_atom=sup_atom,
        argmax_r=tuple(r for r, prob in distribution.items() if prob == sup_atom),
        support_size=len(distribution),
        l_parameter=bilinear_l_parameter(coefficients) if kind is FormKind.BILINEAR else None,
    )
    logger.debug('Atom report', extra={'form_kind': kind.value, 'k': k, 'sup_atom': str(sup_atom)})
    return report


def linear_atom_sup(a: Coefficients, p: ProbabilityLike) -> AtomReport:
    return atom_report(FormKind.LINEAR, a, p)


def bilinear_atom_sup(A: Coefficients, p: ProbabilityLike) -> AtomReport:
    return atom_report(FormKind.BILINEAR, A, p)


def quadratic_atom_sup(A: Coefficients, p: ProbabilityLike) -> AtomReport:
    return atom_report(FormKind.QUADRATIC, A, p)
