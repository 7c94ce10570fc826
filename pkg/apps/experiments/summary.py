"""
Campaign result files and their aggregation.

A result CSV starts with comment lines carrying the schema and the
provenance of the run:

    # hitmat-schema: rank_vs_z v1
    # config-hash: <sha256>
    # code-version: 1.0.0
    # master-seed: 7

followed by the frozen header and one row per trial in trial order. The
summary is a pure function of that text, so ``summarize`` on a written file
reproduces the summary emitted by the run.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional, Union

import numpy as np

from apps.core.constants import CSV_SCHEMA_VERSION, ErrorMessages, Experiment
from apps.core.exceptions import LabError, MalformedResultsError
from apps.core.stats import Proportion
from apps.lofford.profile import decay_slope
from apps.walks.srw import expected_h, h_truncation_bound
from .config import P_EXPERIMENTS
from .trials import SCHEMAS

logger = logging.getLogger(__name__)

SCHEMA_TAG = 'hitmat-schema'
PROVENANCE_TAGS = ('config-hash', 'code-version', 'master-seed')
TRUE, FALSE = 'true', 'false'


@dataclass(frozen=True)
class CampaignSummary:
    experiment: Experiment
    provenance: dict
    rows: list[dict]
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'experiment': self.experiment.value,
            'schema_version': CSV_SCHEMA_VERSION,
            'provenance': self.provenance,
            'rows': self.rows,
            'extras': self.extras,
        }


@dataclass(frozen=True)
class ResultTable:
    experiment: Experiment
    provenance: dict
    header: tuple[str, ...]
    records: list[dict[str, str]]


# ----------------------------------------------------------------------
# Cells
# ----------------------------------------------------------------------
def format_cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return TRUE if value else FALSE
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _scalar(text: str) -> Union[None, int, float, str]:
    if text == '':
        return None
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


# ----------------------------------------------------------------------
# Reading and writing
# ----------------------------------------------------------------------
def comment_lines(experiment: Experiment, provenance: dict) -> list[str]:
    return [
        f"# {SCHEMA_TAG}: {experiment.value} v{CSV_SCHEMA_VERSION}",
        f"# config-hash: {provenance['config_hash']}",
        f"# code-version: {provenance['code_version']}",
        f"# master-seed: {provenance['master_seed']}",
    ]


def render_csv(experiment: Experiment, provenance: dict, header: Iterable[str],
               records: Iterable[dict[str, str]]) -> str:
    header = list(header)
    buffer = io.StringIO()
    for line in comment_lines(experiment, provenance):
        buffer.write(line + '\n')
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for record in records:
        writer.writerow([record[column] for column in header])
    return buffer.getvalue()


def parse_results(text: str) -> ResultTable:
    lines = text.splitlines()
    comments = {}
    body_start = 0
    for body_start, line in enumerate(lines):
        if not line.startswith('#'):
            break
        tag, _, value = line[1:].partition(':')
        comments[tag.strip()] = value.strip()
    else:
        body_start = len(lines)

    if SCHEMA_TAG not in comments:
        raise MalformedResultsError(f"Missing '# {SCHEMA_TAG}' line")
    name, _, version = comments[SCHEMA_TAG].partition(' ')
    try:
        experiment = Experiment(name)
    except ValueError:
        raise MalformedResultsError(f"Unknown experiment '{name}'", details={'experiment': name})
    if version != f"v{CSV_SCHEMA_VERSION}":
        raise MalformedResultsError(
            f"Unsupported schema version '{version}'", details={'expected': f"v{CSV_SCHEMA_VERSION}"}
        )
    missing = [tag for tag in PROVENANCE_TAGS if tag not in comments]
    if missing:
        raise MalformedResultsError('Provenance lines are missing', details={'missing': missing})
    try:
        master_seed = int(comments['master-seed'])
    except ValueError:
        raise MalformedResultsError('master-seed must be an integer')
    provenance = {
        'config_hash': comments['config-hash'],
        'code_version': comments['code-version'],
        'master_seed': master_seed,
    }

    reader = csv.reader(lines[body_start:])
    header = tuple(next(reader, ()))
    schema = SCHEMAS[experiment]
    if header[:len(schema.columns)] != schema.columns:
        raise MalformedResultsError(
            'Header does not match the schema', details={'expected': list(schema.columns), 'found': list(header)}
        )
    records = []
    for number, values in enumerate(reader, start=1):
        if len(values) != len(header):
            raise MalformedResultsError(
                f"Row {number} has {len(values)} fields, expected {len(header)}", details={'row': number}
            )
        records.append(dict(zip(header, values)))
    if not records:
        raise MalformedResultsError(ErrorMessages.RESULTS_EMPTY)
    return ResultTable(experiment=experiment, provenance=provenance, header=header, records=records)


# ----------------------------------------------------------------------
# Aggregation
# ----------------------------------------------------------------------
def _proportion(records: list[dict[str, str]], column: str) -> Proportion:
    values = [r[column] for r in records]
    unexpected = set(values) - {TRUE, FALSE, ''}
    if unexpected:
        raise MalformedResultsError(
            f"Column '{column}' holds non-boolean values", details={'values': sorted(unexpected)[:5]}
        )
    return Proportion(successes=values.count(TRUE), trials=values.count(TRUE) + values.count(FALSE))


def _mean_ms(records: list[dict[str, str]]) -> Optional[float]:
    values = [r['ms'] for r in records]
    if any(v == '' for v in values):
        return None
    try:
        return float(np.mean([float(v) for v in values]))
    except ValueError:
        raise MalformedResultsError("Column 'ms' holds non-numeric values")


def _column_sum(records: list[dict[str, str]], column: str) -> int:
    try:
        return sum(int(r[column]) for r in records)
    except ValueError:
        raise MalformedResultsError(f"Column '{column}' holds non-integer values")


def _coupling(records: list[dict[str, str]]) -> dict:
    steps = _column_sum(records, 'steps')
    pooled = {
        'up_given_positive': Proportion(_column_sum(records, 'up_positive'), _column_sum(records, 'positive_steps')),
        'up_given_zero': Proportion(_column_sum(records, 'up_zero'), _column_sum(records, 'zero_steps')),
        'double_z_drop': Proportion(_column_sum(records, 'double_z_drops'), steps),
        'optimal_increase': Proportion(_column_sum(records, 'optimal_steps'), steps),
    }
    return {'coupling': {'steps': steps, **{name: p.to_dict() for name, p in pooled.items()}}}


def _walk_statistics(records: list[dict[str, str]]) -> dict:
    beta = float(records[0]['beta'])
    length = int(records[0]['length'])
    try:
        H = np.array([int(r['H']) for r in records], dtype=np.float64)
    except ValueError:
        raise MalformedResultsError("Column 'H' holds non-integer values")
    standard_error = float(H.std(ddof=1) / np.sqrt(len(H))) if len(H) > 1 else 0.0
    return {
        'mean_H': float(H.mean()),
        'H_standard_error': standard_error,
        'expected_H': float(expected_h(beta)),
        'H_truncation_bound': h_truncation_bound(beta, length),
    }


_ROW_EXTRAS = {
    Experiment.DEFICIENCY_TRACES: _coupling,
    Experiment.WALK_H: _walk_statistics,
}


def _lofford_slopes(rows: list[dict]) -> dict:
    slopes = {}
    for kind in dict.fromkeys(row['kind'] for row in rows):
        profile = [(row['k'], Fraction(row['sup_atom'])) for row in rows if row['kind'] == kind]
        slopes[kind] = decay_slope(profile) if len(profile) >= 2 else None
    return {'decay_slopes': slopes}


def summarize_table(table: ResultTable) -> CampaignSummary:
    schema = SCHEMAS[table.experiment]
    groups: dict[tuple, list[dict[str, str]]] = {}
    for record in table.records:
        groups.setdefault(tuple(record[c] for c in schema.group_by), []).append(record)

    outcomes = [c for c in schema.outcomes if c in table.header]
    rows = []
    for key, records in groups.items():
        row = {column: _scalar(value) for column, value in zip(schema.group_by, key)}
        row['trials'] = len(records)
        proportions = {c: _proportion(records, c) for c in outcomes}
        if outcomes:
            headline = proportions[outcomes[0]]
            low, high = headline.interval()
            row.update(estimate=headline.value, decided=headline.trials, ci_low=low, ci_high=high)
        if len(outcomes) > 1:
            row['outcomes'] = {c: p.to_dict() for c, p in proportions.items()}
        for column in schema.carry:
            row[column] = _scalar(records[0][column])
        if table.experiment in _ROW_EXTRAS:
            row.update(_ROW_EXTRAS[table.experiment](records))
        row['mean_ms'] = _mean_ms(records)
        rows.append(row)

    provenance = dict(table.provenance)
    if table.experiment in P_EXPERIMENTS:
        provenance['resolved_p'] = [
            {'n': n, 'c': c, 'p': p} for n, c, p in dict.fromkeys((r['n'], r['c'], r['p']) for r in rows)
        ]
    extras = _lofford_slopes(rows) if table.experiment is Experiment.LOFFORD_PROFILE else {}
    return CampaignSummary(experiment=table.experiment, provenance=provenance, rows=rows, extras=extras)


def summarize(results_csv: Union[str, Path]) -> CampaignSummary:
    """Recompute the campaign summary from a result CSV."""
    path = Path(results_csv)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MalformedResultsError(f"Cannot read {path}: {exc}")
    try:
        summary = summarize_table(parse_results(text))
    except LabError:
        logger.warning('Result file rejected', extra={'path': str(path)})
        raise
    logger.info('Summarized results', extra={'path': str(path), 'experiment': summary.experiment.value})
    return summary
