"""
Properties of the leading minors along the exposure window [n', n].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from apps.core.constants import VerdictMode
from apps.core.exceptions import DimensionMismatchError
from apps.core.validators import ProbabilityLike
from apps.matrix.bitmatrix import ZeroOneMatrix
from apps.process.field import UniformField
from apps.process.templates import Template
from .blocked import RobustVerdict, is_n_robust, low_degree_vertices
from .params import RobustParams

logger = logging.getLogger(__name__)


def close_low_degree_pair(M: ZeroOneMatrix, threshold: float,
                          exclude: Iterable[int] = ()) -> Optional[tuple[int, int]]:
    """
    First pair (u, v), u < v, of low out-degree vertices outside ``exclude``
    joined by a path of one or two edges of any orientation, or None.
    """
    low = low_degree_vertices(M, threshold, exclude)
    if len(low) < 2:
        return None
    A = M.to_array().astype(np.int64)
    A = A | A.T
    sub = A[low]
    close = sub @ sub.T + sub[:, low]
    np.fill_diagonal(close, 0)
    hits = np.argwhere(np.triu(close, 1) > 0)
    if hits.size == 0:
        return None
    a, b = hits[0]
    return low[a], low[b]


@dataclass(frozen=True)
class SeparationVerdict:
    holds: bool
    witness: Optional[tuple[int, int, int]] = None

    def to_dict(self) -> dict:
        return {
            'holds': self.holds,
            'witness': None if self.witness is None else list(w + 1 for w in self.witness),
        }


def is_well_separated(field: UniformField, p: ProbabilityLike, params: RobustParams,
                      template: Optional[Template] = None) -> SeparationVerdict:
    """
    For every m in [n', n], no two low out-degree vertices of the m-th
    leading minor (outside I_plus) lie within distance two of each other.

    The witness is (m - 1, u, v) in 0-based terms for the smallest failing m;
    ``to_dict`` reports it 1-based.
    """
    _check_dimensions(field, params)
    M = field.matrix_at(p, template)
    exclude = template.I_plus if template is not None else frozenset()
    threshold = params.low_degree_threshold
    for m in range(params.n_prime, field.n + 1):
        pair = close_low_degree_pair(M.leading_minor(m), threshold, exclude)
        if pair is not None:
            logger.debug('Well-separation fails', extra={'m': m, 'u': pair[0], 'v': pair[1]})
            return SeparationVerdict(holds=False, witness=(m - 1, *pair))
    return SeparationVerdict(holds=True)


@dataclass(frozen=True)
class ExposureVerdict:
    """n-robustness of every leading minor from n' to n."""

    holds: Optional[bool]
    failing_m: Optional[int] = None
    verdicts_checked: int = 0

    def to_dict(self) -> dict:
        return {'holds': self.holds, 'failing_m': self.failing_m, 'verdicts_checked': self.verdicts_checked}


def robust_along_exposure(field: UniformField, p: ProbabilityLike, params: RobustParams,
                          template: Optional[Template] = None,
                          mode: Optional[VerdictMode | str] = None) -> ExposureVerdict:
    """Check n-robustness of M[m] for m = n', ..., n; stops at the first failure."""
    _check_dimensions(field, params)
    M = field.matrix_at(p, template)
    unknown = False
    checked = 0
    for m in range(params.n_prime, field.n + 1):
        verdict: RobustVerdict = is_n_robust(M.leading_minor(m), params, mode)
        checked += 1
        if verdict.holds is False:
            return ExposureVerdict(holds=False, failing_m=m, verdicts_checked=checked)
        unknown = unknown or verdict.holds is None
    return ExposureVerdict(holds=None if unknown else True, verdicts_checked=checked)


def _check_dimensions(field: UniformField, params: RobustParams) -> None:
    if params.n != field.n:
        raise DimensionMismatchError(
            'Parameters were derived for a different dimension',
            details={'field_n': field.n, 'params_n': params.n},
        )
