"""
Zero-line bookkeeping, deficiency and the bordered matrix Gamma(Q, x, y).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from apps.core.constants import ErrorMessages
from apps.core.exceptions import DimensionMismatchError, InternalInvariantError
from .bitmatrix import ZeroOneMatrix
from .rank import RankReport, rank_exact

logger = logging.getLogger(__name__)


def zero_rows(M: ZeroOneMatrix) -> frozenset[int]:
    """Z^row(M): indices of all-zero rows."""
    return frozenset(i for i, r in enumerate(M.rows) if r == 0)


def zero_cols(M: ZeroOneMatrix) -> frozenset[int]:
    """Z^col(M): indices of all-zero columns."""
    return zero_rows(M.transpose())


def z_value(M: ZeroOneMatrix) -> int:
    """z(M) = max(|Z^row(M)|, |Z^col(M)|)."""
    return max(len(zero_rows(M)), len(zero_cols(M)))


def deficiency(M: ZeroOneMatrix, report: Optional[RankReport] = None) -> int:
    """
    Y(M) = m - rank(M) - z(M).

    A negative value can only come from a wrong rank and raises
    InternalInvariantError.
    """
    if not M.is_square:
        raise DimensionMismatchError('Deficiency is defined for square matrices', details={'shape': M.shape})
    report = report or rank_exact(M)
    value = M.n - report.rank - z_value(M)
    if value < 0:
        logger.error(ErrorMessages.NEGATIVE_DEFICIENCY, extra={'n': M.n, 'rank': report.rank})
        raise InternalInvariantError(
            ErrorMessages.NEGATIVE_DEFICIENCY,
            details={'n': M.n, 'rank': report.rank, 'z': z_value(M)},
        )
    return value


def _as_vector(v: Sequence[int], length: int, name: str) -> np.ndarray:
    vec = np.asarray(v, dtype=np.uint8).reshape(-1)
    if vec.size != length:
        raise DimensionMismatchError(
            ErrorMessages.DIMENSION_MISMATCH,
            details={name: int(vec.size), 'expected': length},
        )
    return vec


def border(Q: ZeroOneMatrix, x: Sequence[int], y: Sequence[int]) -> ZeroOneMatrix:
    """
    Gamma(Q, x, y): Q top-left, column y on the right, row x at the bottom,
    zero in the corner.
    """
    if not Q.is_square:
        raise DimensionMismatchError('Q must be square', details={'shape': Q.shape})
    m = Q.n
    x = _as_vector(x, m, 'x')
    y = _as_vector(y, m, 'y')
    gamma = np.zeros((m + 1, m + 1), dtype=np.uint8)
    gamma[:m, :m] = Q.to_array()
    gamma[:m, m] = y
    gamma[m, :m] = x
    return ZeroOneMatrix.from_array(gamma)


def in_row_span(Q: ZeroOneMatrix, x: Sequence[int], rank_q: Optional[int] = None) -> bool:
    """True iff x lies in the rational row span of Q."""
    x = _as_vector(x, Q.ncols, 'x')
    rank_q = rank_exact(Q).rank if rank_q is None else rank_q
    stacked = ZeroOneMatrix.from_array(np.vstack([Q.to_array(), x]))
    return rank_exact(stacked).rank == rank_q


def in_col_span(Q: ZeroOneMatrix, y: Sequence[int], rank_q: Optional[int] = None) -> bool:
    """True iff y lies in the rational column span of Q."""
    return in_row_span(Q.transpose(), y, rank_q)


@dataclass(frozen=True)
class RankIncrease:
    """rank(Gamma(Q, x, y)) - rank(Q) with the span-membership witness."""

    increase: int
    rank_q: int
    rank_border: int
    x_in_row_span: bool
    y_in_col_span: bool

    @property
    def witness(self) -> tuple[bool, bool]:
        return self.x_in_row_span, self.y_in_col_span


def rank_increase_classify(Q: ZeroOneMatrix, x: Sequence[int], y: Sequence[int]) -> RankIncrease:
    """
    Classify the bordering step as +0, +1 or +2.

    The increase is +2 exactly when x is outside the row span and y outside
    the column span of Q; a disagreement means a rank bug.
    """
    gamma = border(Q, x, y)
    rank_q = rank_exact(Q).rank
    rank_gamma = rank_exact(gamma).rank
    x_in = in_row_span(Q, x, rank_q)
    y_in = in_col_span(Q, y, rank_q)
    increase = rank_gamma - rank_q
    if not 0 <= increase <= 2 or (increase == 2) != (not x_in and not y_in):
        logger.error(
            'Bordered rank inconsistent with span membership',
            extra={'increase': increase, 'x_in_row_span': x_in, 'y_in_col_span': y_in},
        )
        raise InternalInvariantError(
            'Bordered rank inconsistent with span membership',
            details={'increase': increase, 'x_in_row_span': x_in, 'y_in_col_span': y_in},
        )
    return RankIncrease(
        increase=increase,
        rank_q=rank_q,
        rank_border=rank_gamma,
        x_in_row_span=x_in,
        y_in_col_span=y_in,
    )
