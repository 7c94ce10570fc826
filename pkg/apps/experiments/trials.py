"""
Per-experiment trial functions and their frozen CSV schemas.

A trial function takes the campaign config, one resolved parameter point
and the trial seed, and returns the row values of that trial. Trial
functions are module-level so worker processes can unpickle them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from apps.core.constants import Experiment
from apps.lofford.atoms import atom_report
from apps.lofford.profile import all_ones_form
from apps.process.field import field_new
from apps.process.hitting import hitting_trial, observe_rank
from apps.process.templates import random_template
from apps.structure.blocked import is_n_robust
from apps.structure.params import RobustParams
from apps.structure.separation import is_well_separated, robust_along_exposure
from apps.walks.deficiency import coupling_statistics, deficiency_trace
from apps.walks.srw import WalkParams, h_statistic, reflected_gap, srw_trace
from .config import CampaignConfig

logger = logging.getLogger(__name__)

TrialFunction = Callable[[CampaignConfig, dict, int], dict]


@dataclass(frozen=True)
class ExperimentSchema:
    """
    columns: frozen CSV header.
    group_by: columns identifying a parameter point in the summary.
    outcomes: boolean columns estimated with Wilson intervals; the first is the headline estimate.
    carry: columns copied from the first row of each group into its summary row.
    """

    columns: tuple[str, ...]
    group_by: tuple[str, ...]
    outcomes: tuple[str, ...]
    run: TrialFunction
    carry: tuple[str, ...] = ()


# ----------------------------------------------------------------------
# Trial functions
# ----------------------------------------------------------------------
def run_hitting(config: CampaignConfig, point: dict, seed: int) -> dict:
    result = hitting_trial(point['n'], config.model, seed, config.template, config.probes)
    row = {
        'model': result.model,
        'tau_num': result.tau.numerator,
        'tau_den': result.tau.denominator,
        'z_before': result.z_before_tau,
        'singular_at_tau': result.singular_at_tau,
        'rank_at_tau': result.rank_at_tau,
        'Y_at_tau': result.Y_at_tau,
        'tau_above_p2': result.tau_above_p2,
        'template_event_DK': result.template_event_DK,
    }
    if result.tau_inv is not None:
        row['tau_inv_num'] = result.tau_inv.numerator
        row['tau_inv_den'] = result.tau_inv.denominator
    return row


def hitting_probe_columns(config: CampaignConfig) -> tuple[str, ...]:
    columns = ()
    if config.probes.tau_inv:
        columns += ('tau_inv_num', 'tau_inv_den')
    if config.probes.window_a is not None:
        columns += ('tau_above_p2', 'template_event_DK')
    return columns


def run_rank_vs_z(config: CampaignConfig, point: dict, seed: int) -> dict:
    observation = observe_rank(point['n'], point['p'], config.model, seed, config.template)
    return {
        'model': observation.model,
        'rank': observation.rank,
        'z': observation.z,
        'Y': observation.Y,
        'rank_equals_n_minus_z': observation.rank_equals_n_minus_z,
    }


def _robust_params(point: dict) -> RobustParams:
    return RobustParams.for_p(point['n'], point['p'], point['robust_c'], point['robust_alpha'])


def run_robust_frequency(config: CampaignConfig, point: dict, seed: int) -> dict:
    params = _robust_params(point)
    field = field_new(point['n'], config.model, seed)
    verdict = is_n_robust(field.matrix_at(point['p'], config.template), params, config.mode)
    row = {
        'model': field.model.value,
        'robust': verdict.holds,
        'rows_blocked': verdict.rows_blocked.holds,
        'cols_blocked': verdict.cols_blocked.holds,
        'rows_dense': verdict.rows_dense,
        'cols_dense': verdict.cols_dense,
        'blocked_mode': verdict.rows_blocked.mode.value,
    }
    if config.exposure:
        row['exposure_robust'] = robust_along_exposure(field, point['p'], params, config.template,
                                                       config.mode).holds
    return row


def run_deficiency_traces(config: CampaignConfig, point: dict, seed: int) -> dict:
    n = point['n']
    trace = deficiency_trace(n, point['p'], config.model, seed, config.template, config.n_prime(n))
    stats = coupling_statistics([trace], config.eps)
    return {
        'model': trace.model,
        'n_prime': trace.n_prime,
        'rank_first': trace.rank[0],
        'Y_first': trace.Y[0],
        'Y_last': trace.Y[-1],
        'z_last': trace.z[-1],
        'up_positive': stats.up_given_positive.successes,
        'positive_steps': stats.up_given_positive.trials,
        'up_zero': stats.up_given_zero.successes,
        'zero_steps': stats.up_given_zero.trials,
        'double_z_drops': stats.double_z_drop.successes,
        'optimal_steps': stats.optimal_increase.successes,
        'steps': stats.steps,
        'ends_full': trace.Y[-1] == 0,
        'first_minor_almost_full': (
            None if stats.first_minor_almost_full is None else stats.first_minor_almost_full.successes == 1
        ),
    }


def run_walk_h(config: CampaignConfig, point: dict, seed: int) -> dict:
    trace = srw_trace(WalkParams(beta=point['beta'], length=point['length'], seed=seed))
    return {
        'H': h_statistic(trace),
        'gap_positive': bool(reflected_gap(trace)[-1] > 0),
    }


def run_lofford_profile(config: CampaignConfig, point: dict, seed: int) -> dict:
    report = atom_report(point['kind'], all_ones_form(point['kind'], point['k']), point['p'])
    return {
        'sup_atom': report.sup_atom,
        'sup_atom_float': float(report.sup_atom),
        'argmax': ' '.join(str(r) for r in report.argmax_r),
        'support_size': report.support_size,
    }


def run_well_separated(config: CampaignConfig, point: dict, seed: int) -> dict:
    params = _robust_params(point)
    field = field_new(point['n'], config.model, seed)
    verdict = is_well_separated(field, point['p'], params, config.template)
    witness = verdict.witness or (None, None, None)
    return {
        'model': field.model.value,
        'well_separated': verdict.holds,
        'witness_m': None if witness[0] is None else witness[0] + 1,
        'witness_u': None if witness[1] is None else witness[1] + 1,
        'witness_v': None if witness[2] is None else witness[2] + 1,
    }


def run_almost_full_rank(config: CampaignConfig, point: dict, seed: int) -> dict:
    observation = observe_rank(point['n'], point['p'], config.model, seed)
    return {
        'model': observation.model,
        'eps': config.eps,
        'rank': observation.rank,
        'almost_full': observation.rank >= (1 - config.eps) * point['n'],
    }


def run_template_rank(config: CampaignConfig, point: dict, seed: int) -> dict:
    n = point['n']
    n_prime = config.n_prime(n)
    template = random_template(n, config.template_size, config.model, np.random.default_rng([seed, 1]), n_prime)
    observation = observe_rank(n, point['p'], config.model, seed, template)
    return {
        'model': observation.model,
        'n_prime': n_prime,
        'template_size': template.size,
        'rank': observation.rank,
        'z': observation.z,
        'Y': observation.Y,
        'rank_equals_n_minus_z': observation.rank_equals_n_minus_z,
    }


HITTING_COLUMNS = (
    'trial', 'seed', 'n', 'model', 'tau_num', 'tau_den', 'z_before', 'singular_at_tau', 'rank_at_tau',
    'Y_at_tau', 'ms',
)
_NP = ('trial', 'seed', 'n', 'model', 'c', 'p')
_NP_GROUP = ('n', 'model', 'c', 'p')

SCHEMAS: dict[Experiment, ExperimentSchema] = {
    Experiment.HITTING: ExperimentSchema(
        columns=HITTING_COLUMNS,
        group_by=('n', 'model'),
        outcomes=('singular_at_tau', 'tau_above_p2', 'template_event_DK'),
        run=run_hitting,
    ),
    Experiment.RANK_VS_Z: ExperimentSchema(
        columns=_NP + ('rank', 'z', 'Y', 'rank_equals_n_minus_z', 'ms'),
        group_by=_NP_GROUP,
        outcomes=('rank_equals_n_minus_z',),
        run=run_rank_vs_z,
    ),
    Experiment.ROBUST_FREQUENCY: ExperimentSchema(
        columns=_NP + ('k', 'n_prime', 'robust', 'rows_blocked', 'cols_blocked', 'rows_dense', 'cols_dense',
                       'blocked_mode', 'exposure_robust', 'ms'),
        group_by=_NP_GROUP + ('k',),
        outcomes=('robust', 'exposure_robust'),
        run=run_robust_frequency,
    ),
    Experiment.DEFICIENCY_TRACES: ExperimentSchema(
        columns=_NP + ('n_prime', 'rank_first', 'Y_first', 'Y_last', 'z_last', 'up_positive', 'positive_steps',
                       'up_zero', 'zero_steps', 'double_z_drops', 'optimal_steps', 'steps', 'ends_full',
                       'first_minor_almost_full', 'ms'),
        group_by=_NP_GROUP + ('n_prime',),
        outcomes=('ends_full', 'first_minor_almost_full'),
        run=run_deficiency_traces,
    ),
    Experiment.WALK_H: ExperimentSchema(
        columns=('trial', 'seed', 'beta', 'length', 'H', 'gap_positive', 'ms'),
        group_by=('beta', 'length'),
        outcomes=('gap_positive',),
        run=run_walk_h,
    ),
    Experiment.LOFFORD_PROFILE: ExperimentSchema(
        columns=('trial', 'kind', 'k', 'p', 'sup_atom', 'sup_atom_float', 'argmax', 'support_size', 'ms'),
        group_by=('kind', 'k', 'p'),
        outcomes=(),
        run=run_lofford_profile,
        carry=('sup_atom', 'sup_atom_float'),
    ),
    Experiment.WELL_SEPARATED: ExperimentSchema(
        columns=_NP + ('n_prime', 'well_separated', 'witness_m', 'witness_u', 'witness_v', 'ms'),
        group_by=_NP_GROUP + ('n_prime',),
        outcomes=('well_separated',),
        run=run_well_separated,
    ),
    Experiment.ALMOST_FULL_RANK: ExperimentSchema(
        columns=_NP + ('eps', 'rank', 'almost_full', 'ms'),
        group_by=_NP_GROUP + ('eps',),
        outcomes=('almost_full',),
        run=run_almost_full_rank,
    ),
    Experiment.TEMPLATE_RANK: ExperimentSchema(
        columns=_NP + ('n_prime', 'template_size', 'rank', 'z', 'Y', 'rank_equals_n_minus_z', 'ms'),
        group_by=_NP_GROUP + ('n_prime',),
        outcomes=('rank_equals_n_minus_z',),
        run=run_template_rank,
    ),
}


def columns_for(config: CampaignConfig) -> tuple[str, ...]:
    """CSV header of a campaign: the frozen schema plus any requested hitting probes."""
    columns = SCHEMAS[config.experiment].columns
    if config.experiment is Experiment.HITTING:
        columns += hitting_probe_columns(config)
    return columns
