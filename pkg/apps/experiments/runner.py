"""
Campaign runner.

Trials are planned up front as (trial index, seed, parameter point) tasks.
Seeds come from ``seed_stream(master_seed, trial index)``, so a trial's
result depends only on the config and its index. Tasks run inline or on a
process pool; rows are collected in trial order either way, which makes the
CSV independent of the worker count.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path

from django.conf import settings

from apps.core.constants import Experiment
from apps.core.exceptions import InvalidConfigError, InvalidTemplateError
from apps.core.seeds import seed_stream
from apps.process.templates import require_valid_template
from .config import CampaignConfig, provenance, resolve_points
from .summary import CampaignSummary, format_cell, parse_results, render_csv, summarize_table
from .trials import SCHEMAS, columns_for

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialTask:
    index: int
    seed: int
    point: dict


@dataclass(frozen=True)
class CampaignRun:
    summary: CampaignSummary
    csv_path: Path
    summary_path: Path
    csv_text: str


def plan_trials(config: CampaignConfig) -> list[TrialTask]:
    points = resolve_points(config)
    _check_template(config)
    tasks = []
    for point in points:
        for _ in range(config.effective_trials):
            index = len(tasks)
            tasks.append(TrialTask(index=index, seed=seed_stream(config.master_seed, index), point=point))
    return tasks


def _check_template(config: CampaignConfig) -> None:
    if config.template is None:
        return
    for n in config.n_list:
        require_valid_template(config.template, n, config.model)
        n_prime = config.n_prime(n)
        if config.experiment is Experiment.DEFICIENCY_TRACES and not config.template.is_permissible(n_prime):
            raise InvalidTemplateError([{
                'code': 'not_permissible',
                'message': f"Template support must lie inside the first {n_prime} indices at n = {n}",
            }])


def execute_trial(config: CampaignConfig, task: TrialTask) -> dict:
    started = time.perf_counter()
    values = SCHEMAS[config.experiment].run(config, task.point, task.seed)
    elapsed = (time.perf_counter() - started) * 1000.0
    logger.debug(
        'Trial finished',
        extra={'experiment': config.experiment.value, 'trial': task.index, 'seed': task.seed},
    )
    return {
        'trial': task.index,
        'seed': task.seed,
        **task.point,
        **values,
        'ms': round(elapsed, 3) if config.timings else None,
    }


def _init_worker(lab: dict) -> None:
    """Bring up Django in a fresh worker and install the parent's resolved HITMAT values."""
    import django
    from django.apps import apps

    if not apps.ready:
        os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
        django.setup()
    settings.HITMAT = dict(lab)


def _execute_all(config: CampaignConfig, tasks: list[TrialTask]) -> list[dict]:
    run = partial(execute_trial, config)
    if config.workers <= 1 or len(tasks) <= 1:
        return [run(task) for task in tasks]
    chunksize = max(1, len(tasks) // (config.workers * 4))
    with ProcessPoolExecutor(
        max_workers=config.workers,
        initializer=_init_worker,
        initargs=(dict(settings.HITMAT),),
    ) as pool:
        return list(pool.map(run, tasks, chunksize=chunksize))


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise InvalidConfigError(
            f"Cannot write campaign output to {path}", details={'output_path': str(path), 'reason': str(exc)}
        )


def run_campaign(config: CampaignConfig) -> CampaignRun:
    """Run every trial, write ``<experiment>.csv`` and ``<experiment>.summary.json`` under output_path."""
    started = time.perf_counter()
    tasks = plan_trials(config)
    log_context = {
        'experiment': config.experiment.value,
        'config_hash': config.config_hash,
        'master_seed': config.master_seed,
    }
    logger.info('Campaign started', extra={**log_context, 'trials': len(tasks), 'workers': config.workers})

    rows = _execute_all(config, tasks)
    header = columns_for(config)
    records = [{column: format_cell(row.get(column)) for column in header} for row in rows]
    csv_text = render_csv(config.experiment, provenance(config), header, records)
    summary = summarize_table(parse_results(csv_text))

    out = Path(config.output_path)
    csv_path = out / f"{config.experiment.value}.csv"
    summary_path = out / f"{config.experiment.value}.summary.json"
    _write(csv_path, csv_text)
    _write(summary_path, json.dumps(summary.to_dict(), indent=2) + '\n')

    logger.info(
        'Campaign finished',
        extra={**log_context, 'csv_path': str(csv_path), 'elapsed_s': round(time.perf_counter() - started, 3)},
    )
    return CampaignRun(summary=summary, csv_path=csv_path, summary_path=summary_path, csv_text=csv_text)
