"""
Selector-based predicates: b-blocked, b-dense and n-robust.

A column j is an S-selector of M when exactly one row of S has a one in
column j. M is b-blocked when every set S of non-zero rows with
2 <= |S| <= b has at least two S-selectors. Under a template the rows in
I_plus are excluded from S, the selector pool loses I_minus and every
S_plus set, and the same condition is imposed on the transpose with the
roles of the two families swapped.

Exhaustive checking is exponential in b. Outside the configured limits the
check falls back to sampling, whose verdict is ``None`` (unknown) unless a
violating set turns up.
"""

from __future__ import annotations

import hashlib
import itertools
import logging
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from apps.core.conf import lab_setting
from apps.core.constants import VerdictMode
from apps.core.exceptions import EnumerationLimitError, InvalidParameterError
from apps.matrix.bitmatrix import ZeroOneMatrix, mask_of
from apps.process.templates import Template
from .params import RobustParams

logger = logging.getLogger(__name__)

ROWS = 'rows'
COLS = 'cols'


@dataclass(frozen=True)
class BlockedVerdict:
    """
    Outcome of a b-blocked check.

    ``holds`` is None when sampling found no violation; a False verdict
    always carries a witness set with fewer than two selectors. ``side``
    says whether the witness is a set of rows or of columns.
    """

    holds: Optional[bool]
    witness: Optional[tuple[int, ...]] = None
    mode: VerdictMode = VerdictMode.EXACT
    subsets_checked: int = 0
    side: str = ROWS

    def to_dict(self) -> dict:
        return {
            'holds': self.holds,
            'witness': None if self.witness is None else [i + 1 for i in self.witness],
            'side': self.side,
            'mode': self.mode.value,
            'subsets_checked': self.subsets_checked,
        }


def _selector_bits(rows: Sequence[int], S: Iterable[int]) -> int:
    once = more = 0
    for i in S:
        r = rows[i]
        more |= once & r
        once = (once ^ r) & ~more
    return once


def selectors(M: ZeroOneMatrix, S: Iterable[int], column_pool: Optional[Iterable[int]] = None) -> frozenset[int]:
    """Columns of the pool (default every column) hit by exactly one row of S."""
    S = list(S)
    if any(not 0 <= i < M.n for i in S):
        raise InvalidParameterError('S must be a set of row indices of M', details={'S': S, 'n': M.n})
    bits = _selector_bits(M.rows, S)
    if column_pool is not None:
        bits &= mask_of(column_pool)
    return frozenset(j for j in range(M.ncols) if (bits >> j) & 1)


def _has_two_selectors(rows: Sequence[int], S: Sequence[int], pool: int) -> bool:
    bits = _selector_bits(rows, S) & pool
    return bits & (bits - 1) != 0


def _subset_count(m: int, b: int) -> int:
    return sum(comb(m, size) for size in range(2, b + 1))


def _exhaustive(rows: Sequence[int], candidates: Sequence[int], sizes: Iterable[int],
                pool: int) -> tuple[Optional[tuple[int, ...]], int]:
    """First failing subset in (size, lexicographic) order, and the number of subsets checked."""
    checked = 0
    for size in sizes:
        for S in itertools.combinations(candidates, size):
            checked += 1
            if not _has_two_selectors(rows, S, pool):
                return S, checked
    return None, checked


def _sampling_rng(M: ZeroOneMatrix, b: int, side: str) -> np.random.Generator:
    digest = hashlib.blake2b(M.to_bytes() + f'{b}:{side}'.encode(), digest_size=8).digest()
    return np.random.default_rng(int.from_bytes(digest, 'little'))


def _sampled(rows: Sequence[int], candidates: Sequence[int], b: int, pool: int,
             rng: np.random.Generator) -> tuple[Optional[bool], Optional[tuple[int, ...]], int]:
    budget = lab_setting('EXACT_BLOCKED_MAX_SUBSETS')
    top = min(b, len(candidates))

    cap = min(top, lab_setting('SAMPLED_SIZE_CAP'))
    while cap >= 2 and _subset_count(len(candidates), cap) > budget:
        cap -= 1
    witness, checked = _exhaustive(rows, candidates, range(2, cap + 1), pool)
    if witness is not None:
        return False, witness, checked
    if cap >= top:
        return True, None, checked

    by_degree = sorted(candidates, key=lambda i: (rows[i].bit_count(), i))
    low = sorted(by_degree[:lab_setting('LOW_DEGREE_ROWS')])
    low_cap = min(top, lab_setting('LOW_DEGREE_SIZE_CAP'))
    while low_cap > cap and _subset_count(len(low), low_cap) - _subset_count(len(low), cap) > budget:
        low_cap -= 1
    witness, count = _exhaustive(rows, low, range(cap + 1, low_cap + 1), pool)
    checked += count
    if witness is not None:
        return False, witness, checked

    pool_of_rows = np.asarray(candidates)
    for _ in range(lab_setting('SAMPLED_SUBSETS')):
        size = int(rng.integers(2, top + 1))
        S = tuple(sorted(int(i) for i in rng.choice(pool_of_rows, size=size, replace=False)))
        checked += 1
        if not _has_two_selectors(rows, S, pool):
            return False, S, checked
    return None, None, checked


def _check_side(M: ZeroOneMatrix, b: int, excluded_rows: frozenset[int], excluded_cols: frozenset[int],
                mode: Optional[VerdictMode], side: str, rng: Optional[np.random.Generator]) -> BlockedVerdict:
    m = M.n
    rows = M.rows
    candidates = [i for i in range(m) if rows[i] and i not in excluded_rows]
    pool = mask_of(j for j in range(M.ncols) if j not in excluded_cols)
    top = min(b, len(candidates))
    if top < 2:
        return BlockedVerdict(holds=True, mode=VerdictMode.EXACT, side=side)

    count = _subset_count(len(candidates), top)
    exact_ok = (
        (m <= lab_setting('EXACT_BLOCKED_MAX_M') or b <= lab_setting('EXACT_BLOCKED_MAX_B'))
        and count <= lab_setting('EXACT_BLOCKED_MAX_SUBSETS')
    )
    if mode is VerdictMode.EXACT and not exact_ok:
        raise EnumerationLimitError(
            'Exact b-blocked check exceeds the enumeration limits; use sampled mode',
            details={'m': m, 'b': b, 'subsets': count},
        )
    if mode is VerdictMode.EXACT or (mode is None and exact_ok):
        witness, checked = _exhaustive(rows, candidates, range(2, top + 1), pool)
        return BlockedVerdict(
            holds=witness is None, witness=witness, mode=VerdictMode.EXACT,
            subsets_checked=checked, side=side,
        )

    holds, witness, checked = _sampled(rows, candidates, b, pool, rng or _sampling_rng(M, b, side))
    if holds is None:
        logger.info('Sampled b-blocked check found no violation', extra={'m': m, 'b': b, 'subsets': checked})
    return BlockedVerdict(holds=holds, witness=witness, mode=VerdictMode.SAMPLED,
                          subsets_checked=checked, side=side)


def _combine(verdicts: Sequence[BlockedVerdict]) -> BlockedVerdict:
    checked = sum(v.subsets_checked for v in verdicts)
    mode = VerdictMode.SAMPLED if any(v.mode is VerdictMode.SAMPLED for v in verdicts) else VerdictMode.EXACT
    for v in verdicts:
        if v.holds is False:
            return BlockedVerdict(holds=False, witness=v.witness, mode=v.mode, subsets_checked=checked, side=v.side)
    holds = None if any(v.holds is None for v in verdicts) else True
    return BlockedVerdict(holds=holds, mode=mode, subsets_checked=checked)


def is_b_blocked(M: ZeroOneMatrix, b: int, template: Optional[Template] = None,
                 mode: Optional[VerdictMode | str] = None,
                 rng: Optional[np.random.Generator] = None) -> BlockedVerdict:
    """
    Check that every admissible S with 2 <= |S| <= b has two S-selectors.

    ``mode`` is 'exact', 'sampled' or None for exact whenever the limits
    allow it. With a template the check runs on both M (rows outside
    I_plus, selectors outside I_minus and the S_plus sets) and its
    transpose (columns outside I_minus, selectors outside I_plus and the
    S_minus sets); template indices beyond M's size are ignored.
    """
    if not M.is_square:
        raise InvalidParameterError('b-blocked is defined for square matrices', details={'shape': M.shape})
    if not 2 <= b <= M.n:
        raise InvalidParameterError('b must lie in [2, m]', details={'b': b, 'm': M.n})
    if mode is not None:
        try:
            mode = VerdictMode(mode)
        except ValueError:
            raise InvalidParameterError(f"Unknown verdict mode '{mode}'", details={'mode': mode})

    if template is None or template.is_degenerate:
        return _check_side(M, b, frozenset(), frozenset(), mode, ROWS, rng)

    m = M.n
    i_plus = frozenset(i for i in template.I_plus if i < m)
    i_minus = frozenset(j for j in template.I_minus if j < m)
    union_plus = frozenset(j for j in template.union_plus if j < m)
    union_minus = frozenset(i for i in template.union_minus if i < m)
    row_side = _check_side(M, b, i_plus, i_minus | union_plus, mode, ROWS, rng)
    if row_side.holds is False:
        return row_side
    col_side = _check_side(M.transpose(), b, i_minus, i_plus | union_minus, mode, COLS, rng)
    return _combine([row_side, col_side])


def is_b_dense(M: ZeroOneMatrix, b: int) -> bool:
    """At least b rows carry more than one non-zero entry."""
    return sum(1 for r in M.rows if r & (r - 1)) >= b


def low_degree_vertices(M: ZeroOneMatrix, threshold: float, exclude: Iterable[int] = ()) -> list[int]:
    excluded = set(exclude)
    return [i for i, r in enumerate(M.rows) if i not in excluded and r.bit_count() <= threshold]


@dataclass(frozen=True)
class RobustVerdict:
    """n-robustness: k-blocked and k-dense for both M and its transpose."""

    rows_blocked: BlockedVerdict
    cols_blocked: BlockedVerdict
    rows_dense: bool
    cols_dense: bool

    @property
    def holds(self) -> Optional[bool]:
        if not (self.rows_dense and self.cols_dense):
            return False
        blocked = (self.rows_blocked.holds, self.cols_blocked.holds)
        if False in blocked:
            return False
        return None if None in blocked else True

    def to_dict(self) -> dict:
        return {
            'holds': self.holds,
            'rows_blocked': self.rows_blocked.to_dict(),
            'cols_blocked': self.cols_blocked.to_dict(),
            'rows_dense': self.rows_dense,
            'cols_dense': self.cols_dense,
        }


def is_n_robust(M: ZeroOneMatrix, params: RobustParams | int, mode: Optional[VerdictMode | str] = None,
                rng: Optional[np.random.Generator] = None) -> RobustVerdict:
    """
    Both M and M^T k-blocked and k-dense, with k = params.k (or params itself
    when given as an integer). The blocked check caps k at the matrix size
    and holds trivially when that leaves no set of two or more rows.
    """
    k = params if isinstance(params, int) else params.k
    b = min(k, M.n)
    T = M.transpose()

    def blocked(A: ZeroOneMatrix) -> BlockedVerdict:
        if b < 2:
            return BlockedVerdict(holds=True, mode=VerdictMode.EXACT)
        return is_b_blocked(A, b, mode=mode, rng=rng)

    return RobustVerdict(
        rows_blocked=blocked(M),
        cols_blocked=blocked(T),
        rows_dense=is_b_dense(M, k),
        cols_dense=is_b_dense(T, k),
    )
