"""
Hand-built fields for exact process tests.
"""

import numpy as np

from apps.core.constants import Model
from apps.process.field import UniformField, probability_bound


def make_field(n, model, probabilities, seed=0):
    """Field whose clocks realise the given probabilities in pair order."""
    clocks = np.array([probability_bound(p) for p in probabilities], dtype=np.uint64)
    return UniformField(n=n, model=Model(model), seed=seed, clocks=clocks)
