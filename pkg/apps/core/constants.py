"""
Application-wide constants.
Centralizes model names, experiment kinds and numeric constants shared by the lab apps.
"""

from enum import Enum
from typing import Final


CODE_VERSION: Final[str] = '1.0.0'


# =============================================================================
# MATRIX PROCESSES
# =============================================================================
class Model(str, Enum):
    """Coupled matrix process flavours."""

    ASYMMETRIC = 'asymmetric'
    SYMMETRIC = 'symmetric'

    @classmethod
    def choices(cls) -> list[tuple[str, str]]:
        return [(item.value, item.name.title()) for item in cls]


# Clocks are 64-bit unsigned integers; U = clock / CLOCK_SCALE lies in [0, 1).
CLOCK_BITS: Final[int] = 64
CLOCK_SCALE: Final[int] = 1 << CLOCK_BITS
CLOCK_MAX: Final[int] = CLOCK_SCALE - 1

# Largest template size accepted by the template event of the hitting window.
DEFAULT_TEMPLATE_K: Final[int] = 3


# =============================================================================
# EXACT RANK
# =============================================================================
class RankPrimes:
    """Fixed primes for the certification fast path."""

    GF2: Final[int] = 2
    MERSENNE_31: Final[int] = (1 << 31) - 1


# =============================================================================
# STRUCTURE CHECKS
# =============================================================================
class VerdictMode(str, Enum):
    """How a structural predicate was decided."""

    EXACT = 'exact'
    SAMPLED = 'sampled'


# =============================================================================
# LITTLEWOOD-OFFORD FORMS
# =============================================================================
class FormKind(str, Enum):
    """Bernoulli forms whose maximum atom is computed."""

    LINEAR = 'linear'
    BILINEAR = 'bilinear'
    QUADRATIC = 'quadratic'

    @classmethod
    def choices(cls) -> list[tuple[str, str]]:
        return [(item.value, item.name.title()) for item in cls]


# =============================================================================
# EXPERIMENTS
# =============================================================================
class Experiment(str, Enum):
    """Campaign experiment kinds."""

    HITTING = 'hitting'
    RANK_VS_Z = 'rank_vs_z'
    ROBUST_FREQUENCY = 'robust_frequency'
    DEFICIENCY_TRACES = 'deficiency_traces'
    WALK_H = 'walk_h'
    LOFFORD_PROFILE = 'lofford_profile'
    WELL_SEPARATED = 'well_separated'
    ALMOST_FULL_RANK = 'almost_full_rank'
    TEMPLATE_RANK = 'template_rank'

    @classmethod
    def choices(cls) -> list[tuple[str, str]]:
        return [(item.value, item.name.replace('_', ' ').title()) for item in cls]


CSV_SCHEMA_VERSION: Final[int] = 1


class ErrorMessages:
    """Standardized error messages."""

    DIMENSION_MISMATCH: Final[str] = 'Matrix and vector dimensions do not agree'
    PROBABILITY_RANGE: Final[str] = 'Probability must lie in [0, 1]'
    TEMPLATE_INVALID: Final[str] = 'Template violates the template conditions'
    CONFIG_INVALID: Final[str] = 'Campaign configuration is invalid'
    RESULTS_EMPTY: Final[str] = 'Result file contains no trial rows'
    NEGATIVE_DEFICIENCY: Final[str] = 'Deficiency is negative; rank computation is inconsistent'
