"""
Shared report builder for the rank endpoint and the ``rank`` command.
"""

from .bitmatrix import ZeroOneMatrix
from .linalg import deficiency, z_value, zero_cols, zero_rows
from .rank import rank_exact


def matrix_report(M: ZeroOneMatrix) -> dict:
    """RankReport plus zero-line bookkeeping; indices are 1-based."""
    report = rank_exact(M)
    data = report.to_dict()
    data.update({
        'n': M.n,
        'z': z_value(M),
        'deficiency': deficiency(M, report),
        'zero_rows': sorted(i + 1 for i in zero_rows(M)),
        'zero_cols': sorted(j + 1 for j in zero_cols(M)),
    })
    return data
