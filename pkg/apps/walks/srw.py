"""
Biased simple random walks.

S_0 = 0 and S_k = X_1 + ... + X_k with iid steps, P(X = +1) = beta and
P(X = -1) = 1 - beta. Functions taking a trace accept a single walk or a
batch with one walk per row.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.stats import binom

from apps.core.exceptions import InvalidParameterError
from apps.core.validators import ProbabilityLike, as_probability, as_seed


@dataclass(frozen=True)
class WalkParams:
    beta: float
    length: int
    seed: int

    def __post_init__(self):
        as_probability(self.beta)
        as_seed(self.seed)
        if self.length < 0:
            raise InvalidParameterError('Walk length must be non-negative', details={'length': self.length})


def srw_batch(beta: float, length: int, count: int, seed: int) -> np.ndarray:
    """(count, length + 1) int64 array of independent walks."""
    params = WalkParams(beta=beta, length=length, seed=seed)
    rng = np.random.default_rng(params.seed)
    steps = np.where(rng.random((count, length)) < params.beta, 1, -1).astype(np.int64)
    walks = np.zeros((count, length + 1), dtype=np.int64)
    np.cumsum(steps, axis=1, out=walks[:, 1:])
    return walks


def srw_trace(params: WalkParams) -> np.ndarray:
    return srw_batch(params.beta, params.length, 1, params.seed)[0]


def h_statistic(trace: np.ndarray) -> np.ndarray | int:
    """
    H = |{k : S_k >= 1}| counted over the available horizon.

    The walk is truncated at its length; see ``h_truncation_bound`` for how
    much of E[H] a finite horizon can miss.
    """
    counts = np.count_nonzero(np.asarray(trace) >= 1, axis=-1)
    return int(counts) if np.ndim(counts) == 0 else counts


def expected_h(beta: ProbabilityLike) -> Fraction:
    """E[H] = beta / (1 - beta)^2, finite only for beta < 1/2."""
    b = as_probability(beta)
    if b >= Fraction(1, 2):
        raise InvalidParameterError('H has infinite mean for beta >= 1/2', details={'beta': str(b)})
    return b / (1 - b) ** 2


def h_truncation_bound(beta: float, length: int) -> float:
    """
    Upper bound on E[|{k > length : S_k >= 1}|].

    Hoeffding gives P(S_k >= 1) <= q^k with q = exp(-(1 - 2 beta)^2 / 2),
    and the tail sum is q^(length + 1) / (1 - q).
    """
    if not 0 <= beta < 0.5:
        raise InvalidParameterError('The drift bound needs beta in [0, 1/2)', details={'beta': beta})
    q = math.exp(-((1 - 2 * beta) ** 2) / 2)
    return q ** (length + 1) / (1 - q)


def reflected_gap(trace: np.ndarray) -> np.ndarray:
    """D_k = S_k - min_{i <= k} S_i."""
    trace = np.asarray(trace)
    return trace - np.minimum.accumulate(trace, axis=-1)


@dataclass(frozen=True)
class ShiftedExcess:
    estimate: float
    standard_error: float
    bound: float

    def to_dict(self) -> dict:
        return {'estimate': self.estimate, 'standard_error': self.standard_error, 'bound': self.bound}


def shifted_excess_probability(beta: float, d: int, k: int, traces: np.ndarray) -> ShiftedExcess:
    """
    Empirical P{S_k + d > min(M_k + d, 0)} over a batch of walks, next to
    the bound P{S_k > -d} + beta / (1 - beta)^2.

    P{S_k > -d} is exact: S_k = 2U - k with U ~ Binomial(k, beta).
    """
    traces = np.atleast_2d(np.asarray(traces))
    if d < 0 or k < 0 or k >= traces.shape[1]:
        raise InvalidParameterError(
            'Need d >= 0 and 0 <= k < trace length', details={'d': d, 'k': k, 'length': traces.shape[1]}
        )
    S_k = traces[:, k]
    M_k = traces[:, :k + 1].min(axis=1)
    hits = S_k + d > np.minimum(M_k + d, 0)
    estimate = float(hits.mean())
    standard_error = math.sqrt(estimate * (1 - estimate) / len(hits))
    above = float(binom.sf(math.floor((k - d) / 2), k, beta))
    return ShiftedExcess(
        estimate=estimate,
        standard_error=standard_error,
        bound=above + float(expected_h(Fraction(beta))),
    )
