"""
Deficiency traces over the iterative exposure of leading minors.

For m = n', ..., n the trace records rank, z and Y = m - z - rank of the
leading minor R[m] of one process instance. Every trace is checked against
the step identity

    Y[m+1] = Y[m] + 1 + (z[m] - z[m+1]) - (rank[m+1] - rank[m])

and against |Y[m+1] - Y[m]| <= 1 whenever z drops by at most one.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from apps.core.constants import Model
from apps.core.exceptions import InternalInvariantError, InvalidParameterError, InvalidTemplateError
from apps.core.stats import Proportion
from apps.core.validators import ProbabilityLike, as_probability
from apps.matrix.linalg import deficiency, z_value
from apps.matrix.rank import rank_exact
from apps.process.field import field_new
from apps.process.templates import Template

logger = logging.getLogger(__name__)

CSV_COLUMNS = ('m', 'rank', 'z', 'Y')


def default_n_prime(n: int) -> int:
    """Smallest admissible start of the exposure window, floor(n/2) + 1."""
    return n // 2 + 1


@dataclass(frozen=True)
class DeficiencyTrace:
    n: int
    p: Fraction
    model: str
    seed: int
    n_prime: int
    rank: tuple[int, ...]
    z: tuple[int, ...]
    Y: tuple[int, ...]
    template: Optional[Template] = None

    @property
    def sizes(self) -> range:
        return range(self.n_prime, self.n_prime + len(self.rank))

    @property
    def delta_Y(self) -> list[int]:
        return [b - a for a, b in zip(self.Y, self.Y[1:])]

    @property
    def delta_z(self) -> list[int]:
        return [b - a for a, b in zip(self.z, self.z[1:])]

    @property
    def delta_rank(self) -> list[int]:
        return [b - a for a, b in zip(self.rank, self.rank[1:])]

    def validate(self) -> None:
        """Raise InternalInvariantError if a step breaks the trace identities."""
        for step, m in enumerate(self.sizes):
            if self.Y[step] != m - self.z[step] - self.rank[step]:
                self._fail('Y differs from m - z - rank', m)
        for step, (dY, dz, dr) in enumerate(zip(self.delta_Y, self.delta_z, self.delta_rank)):
            m = self.n_prime + step
            if dY != 1 - dz - dr:
                self._fail('Step identity broken', m)
            if not 0 <= dr <= 2:
                self._fail('Rank increase outside [0, 2]', m)
            if -dz <= 1 and abs(dY) > 1:
                self._fail('Deficiency moved by more than one without a double z drop', m)

    def _fail(self, message: str, m: int) -> None:
        logger.error(message, extra={'n': self.n, 'seed': self.seed, 'm': m})
        raise InternalInvariantError(message, details={'n': self.n, 'seed': self.seed, 'm': m})

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(CSV_COLUMNS)
        for row in zip(self.sizes, self.rank, self.z, self.Y):
            writer.writerow(row)
        return buffer.getvalue()


def deficiency_trace(n: int, p: ProbabilityLike, model: Model | str, seed: int,
                     template: Optional[Template] = None, n_prime: Optional[int] = None) -> DeficiencyTrace:
    """Rank, z and Y of R[m] for m = n', ..., n; the template must live inside [n']."""
    n_prime = default_n_prime(n) if n_prime is None else n_prime
    if not 1 <= n_prime <= n:
        raise InvalidParameterError("n' must lie in [1, n]", details={'n': n, 'n_prime': n_prime})
    if template is not None and not template.is_permissible(n_prime):
        raise InvalidTemplateError([{
            'code': 'not_permissible',
            'message': f"Template support must lie inside the first {n_prime} indices",
        }])
    field = field_new(n, model, seed)
    M = field.matrix_at(p, template)
    ranks, zs, ys = [], [], []
    for m in range(n_prime, n + 1):
        minor = M.leading_minor(m)
        report = rank_exact(minor)
        ranks.append(report.rank)
        zs.append(z_value(minor))
        ys.append(deficiency(minor, report))
    trace = DeficiencyTrace(
        n=n,
        p=as_probability(p),
        model=field.model.value,
        seed=seed,
        n_prime=n_prime,
        rank=tuple(ranks),
        z=tuple(zs),
        Y=tuple(ys),
        template=template,
    )
    trace.validate()
    return trace


@dataclass(frozen=True)
class CouplingStatistics:
    """
    Step frequencies pooled over a collection of traces.

    up_given_positive: Y rises by one from a positive value.
    up_given_zero: Y leaves zero.
    double_z_drop: z falls by two or more in one step.
    optimal_increase: rank grows by 1 + [Y > 0].
    ends_full: the last minor has Y = 0.
    first_minor_almost_full: rank(R[n']) >= (1 - eps) n', when eps is given.
    """

    traces: int
    steps: int
    up_given_positive: Proportion
    up_given_zero: Proportion
    double_z_drop: Proportion
    optimal_increase: Proportion
    ends_full: Proportion
    first_minor_almost_full: Optional[Proportion] = None

    def to_dict(self) -> dict:
        data = {'traces': self.traces, 'steps': self.steps}
        for name in ('up_given_positive', 'up_given_zero', 'double_z_drop', 'optimal_increase', 'ends_full',
                     'first_minor_almost_full'):
            value = getattr(self, name)
            data[name] = None if value is None else value.to_dict()
        return data


def coupling_statistics(traces: Iterable[DeficiencyTrace], eps: Optional[float] = None) -> CouplingStatistics:
    traces = list(traces)
    if not traces:
        raise InvalidParameterError('coupling_statistics needs at least one trace')
    if eps is not None and not 0 < eps < 1:
        raise InvalidParameterError('eps must lie in (0, 1)', details={'eps': eps})

    positive = [0, 0]
    zero = [0, 0]
    double_drop = optimal = steps = 0
    for trace in traces:
        for step, (dY, dz, dr) in enumerate(zip(trace.delta_Y, trace.delta_z, trace.delta_rank)):
            steps += 1
            Y = trace.Y[step]
            if Y > 0:
                positive[1] += 1
                positive[0] += dY == 1
            else:
                zero[1] += 1
                zero[0] += dY >= 1
            double_drop += -dz >= 2
            optimal += dr == 1 + (Y > 0)

    almost_full = None
    if eps is not None:
        almost_full = Proportion(
            successes=sum(t.rank[0] >= (1 - eps) * t.n_prime for t in traces), trials=len(traces)
        )
    return CouplingStatistics(
        traces=len(traces),
        steps=steps,
        up_given_positive=Proportion(*positive),
        up_given_zero=Proportion(*zero),
        double_z_drop=Proportion(double_drop, steps),
        optimal_increase=Proportion(optimal, steps),
        ends_full=Proportion(sum(t.Y[-1] == 0 for t in traces), len(traces)),
        first_minor_almost_full=almost_full,
    )
