"""
Decay of the maximum atom along the all-ones families.
"""

from fractions import Fraction
from typing import Iterable

import numpy as np
from scipy.stats import linregress

from apps.core.constants import FormKind
from apps.core.exceptions import InvalidParameterError
from apps.core.validators import ProbabilityLike
from .atoms import atom_report


def all_ones_form(kind: FormKind | str, k: int) -> list:
    """k ones for a linear form, the k×k all-ones matrix otherwise."""
    if FormKind(kind) is FormKind.LINEAR:
        return [1] * k
    return [[1] * k for _ in range(k)]


def decay_profile(kind: FormKind | str, k_list: Iterable[int], p: ProbabilityLike) -> list[tuple[int, Fraction]]:
    """(k, sup_atom) for the all-ones form of each size."""
    return [(k, atom_report(kind, all_ones_form(kind, k), p).sup_atom) for k in k_list]


def decay_slope(profile: list[tuple[int, Fraction]]) -> float:
    """Least-squares slope of log sup_atom against log k."""
    if len(profile) < 2:
        raise InvalidParameterError('A slope needs at least two sizes')
    sizes = np.log([k for k, _ in profile])
    atoms = np.log([float(a) for _, a in profile])
    return float(linregress(sizes, atoms).slope)
