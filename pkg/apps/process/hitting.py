"""
Hitting times and per-trial observables of the coupled processes.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import Optional

import numpy as np

from apps.core.constants import CLOCK_MAX, DEFAULT_TEMPLATE_K, Model
from apps.core.exceptions import InvalidParameterError
from apps.core.validators import ProbabilityLike, as_probability
from apps.matrix.bitmatrix import ZeroOneMatrix
from apps.matrix.linalg import deficiency, z_value, zero_cols, zero_rows
from apps.matrix.rank import rank_exact
from .field import UniformField, clock_to_probability, field_new, probability_bound
from .templates import Template, validate_template

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HittingTime:
    """tau as an exact rational plus the raw clock that realises it."""

    value: Fraction
    clock: Optional[int]

    @property
    def attained(self) -> bool:
        return self.clock is not None


def tau_zero(field: UniformField, template: Optional[Template] = None) -> HittingTime:
    """
    inf{p : z(M_p) = 0}.

    Every row and column not forced non-empty by the template contributes
    its smallest clock; tau is the largest contribution. A line whose
    entries are all forced to zero makes tau = 1 (clock None). With no
    constrained lines at all tau = 0.
    """
    random, fixed_one = field.availability(template)
    clocks = np.where(random, field.clock_matrix(), np.uint64(CLOCK_MAX))
    worst = 0
    for axis in (1, 0):
        forced = fixed_one.any(axis=axis)
        reachable = random.any(axis=axis)
        if np.any(~forced & ~reachable):
            return HittingTime(value=Fraction(1), clock=None)
        open_lines = ~forced
        if open_lines.any():
            worst = max(worst, int(clocks.min(axis=axis)[open_lines].max()))
    return HittingTime(value=clock_to_probability(worst), clock=worst)


def z_before_tau(field: UniformField, tau: HittingTime, template: Optional[Template] = None) -> int:
    """z of the matrix made of every clock strictly below tau."""
    if not tau.attained:
        return z_value(field.matrix_at_clock(probability_bound(1), template))
    return z_value(field.matrix_at_clock(tau.clock, template, strict=True))


def first_invertibility(field: UniformField, tau: HittingTime,
                        template: Optional[Template] = None) -> Fraction:
    """
    tau_inv: first arrival after which the matrix is non-singular.

    Arrivals are scanned one at a time from tau on (a zero line forces
    singularity, so nothing earlier qualifies); rank is recomputed after each
    arrival because adding ones can destroy invertibility. Returns 1 if the
    matrix never becomes invertible.
    """
    if not tau.attained:
        return Fraction(1)
    random, fixed_one = field.availability(template)
    clocks, rows, cols = field.arrivals()
    symmetric = field.model is Model.SYMMETRIC
    current = fixed_one.copy()
    for clock, i, j in zip(clocks.tolist(), rows.tolist(), cols.tolist()):
        if not random[i, j]:
            continue
        current[i, j] = True
        if symmetric:
            current[j, i] = True
        if clock < tau.clock:
            continue
        M = ZeroOneMatrix.from_array(current)
        if rank_exact(M).rank == field.n:
            return clock_to_probability(clock)
    return Fraction(1)


def extract_template_at(field: UniformField, p1: ProbabilityLike, p_query: ProbabilityLike,
                        K: int) -> Optional[Template]:
    """
    The template read off the process: zero rows (columns) at p1 with their
    out- (in-) neighbourhoods at p_query. Returned only when it is a valid
    non-degenerate template of size at most K.
    """
    low, high = as_probability(p1), as_probability(p_query)
    if not 0 < low < high:
        raise InvalidParameterError('Need 0 < p1 < p_query <= 1', details={'p1': str(low), 'p_query': str(high)})
    early = field.matrix_at(low)
    late = field.matrix_at(high)
    s_plus = {i: late.out_neighbours(i) for i in zero_rows(early)}
    s_minus = {j: late.in_neighbours(j) for j in zero_cols(early)}
    template = Template.from_sets(s_plus, s_minus)
    if template.is_degenerate or template.size > K:
        return None
    if not validate_template(template, field.n, field.model).ok:
        return None
    return template


@dataclass(frozen=True)
class Probes:
    """Optional extra observables of a hitting trial."""

    tau_inv: bool = False
    window_a: Optional[float] = None
    K: int = DEFAULT_TEMPLATE_K


def window_probabilities(n: int, a: float) -> tuple[Fraction, Fraction]:
    """p1 = (ln n - a)/n and p2 = (ln n + a)/n, clipped to [0, 1]."""
    log_n = math.log(n)
    p1 = min(max((log_n - a) / n, 0.0), 1.0)
    p2 = min(max((log_n + a) / n, 0.0), 1.0)
    return Fraction(p1), Fraction(p2)


@dataclass(frozen=True)
class TrialResult:
    seed: int
    n: int
    model: str
    tau: Fraction
    tau_clock: Optional[int]
    z_before_tau: int
    z_at_tau: int
    singular_at_tau: bool
    rank_at_tau: int
    Y_at_tau: int
    template_event_DK: Optional[bool] = None
    tau_above_p2: Optional[bool] = None
    tau_inv: Optional[Fraction] = None
    runtime_ms: float = 0.0

    def to_dict(self) -> dict:
        data = asdict(self)
        data['tau'] = str(self.tau)
        data['tau_inv'] = None if self.tau_inv is None else str(self.tau_inv)
        return data


def hitting_trial(n: int, model: Model | str, seed: int, template: Optional[Template] = None,
                  probes: Optional[Probes] = None) -> TrialResult:
    """Build the matrix at tau (inclusive threshold) and record its rank data."""
    started = time.perf_counter()
    field = field_new(n, model, seed)
    probes = probes or Probes()
    tau = tau_zero(field, template)
    bound = tau.clock if tau.attained else probability_bound(1)
    M = field.matrix_at_clock(bound, template)
    report = rank_exact(M)
    Y = deficiency(M, report)

    event_dk = above_p2 = None
    if probes.window_a is not None:
        p1, p2 = window_probabilities(n, probes.window_a)
        above_p2 = tau.value > p2
        event_dk = False
        if 0 < p1 < tau.value:
            event_dk = extract_template_at(field, p1, tau.value, probes.K) is not None
    tau_inv = first_invertibility(field, tau, template) if probes.tau_inv else None

    result = TrialResult(
        seed=seed,
        n=n,
        model=field.model.value,
        tau=tau.value,
        tau_clock=tau.clock,
        z_before_tau=z_before_tau(field, tau, template),
        z_at_tau=z_value(M),
        singular_at_tau=report.rank < n,
        rank_at_tau=report.rank,
        Y_at_tau=Y,
        template_event_DK=event_dk,
        tau_above_p2=above_p2,
        tau_inv=tau_inv,
        runtime_ms=(time.perf_counter() - started) * 1000.0,
    )
    logger.debug('Hitting trial', extra={'seed': seed, 'n': n, 'singular': result.singular_at_tau})
    return result


@dataclass(frozen=True)
class RankObservation:
    n: int
    p: Fraction
    model: str
    seed: int
    rank: int
    z: int
    Y: int

    @property
    def rank_equals_n_minus_z(self) -> bool:
        return self.Y == 0


def observe_rank(n: int, p: ProbabilityLike, model: Model | str, seed: int,
                 template: Optional[Template] = None) -> RankObservation:
    field = field_new(n, model, seed)
    M = field.matrix_at(p, template)
    report = rank_exact(M)
    return RankObservation(
        n=n,
        p=as_probability(p),
        model=field.model.value,
        seed=seed,
        rank=report.rank,
        z=z_value(M),
        Y=deficiency(M, report),
    )


def rank_equals_n_minus_z_trial(n: int, p: ProbabilityLike, model: Model | str, seed: int,
                                template: Optional[Template] = None) -> bool:
    """True iff deficiency(matrix_at(field, p, template)) == 0."""
    return observe_rank(n, p, model, seed, template).rank_equals_n_minus_z


def almost_full_rank_trial(n: int, p: ProbabilityLike, model: Model | str, seed: int,
                           eps: float) -> bool:
    """rank(R_{n,p}) >= (1 - eps) n."""
    if not 0 < eps < 1:
        raise InvalidParameterError('eps must lie in (0, 1)', details={'eps': eps})
    return observe_rank(n, p, model, seed).rank >= (1 - eps) * n
