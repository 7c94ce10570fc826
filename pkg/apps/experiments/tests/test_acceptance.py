"""
Long-running campaign checks at desk scale.

Enabled with HITMAT_ACCEPTANCE=true; run with
    python manage.py test --tag acceptance
"""

import math
from pathlib import Path
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase, tag

from apps.experiments.runner import run_campaign
from .helpers import TemporaryOutputMixin, make_config

ENABLED = settings.HITMAT['ACCEPTANCE']
WORKERS = max(1, settings.HITMAT['WORKERS'])


def overlap(a, b):
    return a['ci_low'] <= b['ci_high'] and b['ci_low'] <= a['ci_high']


@tag('acceptance')
@skipUnless(ENABLED, 'set HITMAT_ACCEPTANCE=true to run the acceptance campaigns')
class AcceptanceCampaignTests(TemporaryOutputMixin, SimpleTestCase):

    def campaign(self, name, **fields):
        return run_campaign(make_config(Path(self.out) / name, workers=WORKERS, master_seed=2024, **fields)).summary

    def test_singularity_at_tau_falls_with_n(self):
        for model in ('asymmetric', 'symmetric'):
            rows = self.campaign(f"hitting-{model}", experiment='hitting', model=model,
                                 n_list=[64, 128, 256, 512], trials=500).rows
            for smaller, larger in zip(rows, rows[1:]):
                self.assertTrue(larger['estimate'] <= smaller['estimate'] or overlap(smaller, larger),
                                (model, smaller['n'], larger['n']))
            self.assertLess(rows[-1]['estimate'], 0.2, model)

    def test_rank_matches_n_minus_z_above_half(self):
        high, low = self.campaign('rank', experiment='rank_vs_z', n_list=[256], c=[0.75, 0.3], trials=500).rows
        self.assertGreater(high['ci_low'], low['ci_high'])

    def test_templates_do_not_move_the_estimate(self):
        plain, = self.campaign('plain', experiment='rank_vs_z', n_list=[128], c=[0.75], trials=500).rows
        templated, = self.campaign('templated', experiment='template_rank', n_list=[128], c=[0.75], trials=100,
                                   template_size=3).rows
        self.assertTrue(plain['ci_low'] <= templated['estimate'] <= plain['ci_high'])

    def test_deficiency_traces_satisfy_the_step_identity(self):
        # Every trace is validated as it is built; a violation raises.
        rows = self.campaign('traces', experiment='deficiency_traces', n_list=[64], c=[0.75, 2.0], trials=200).rows
        self.assertEqual([r['trials'] for r in rows], [200, 200])

    def test_walk_statistic_matches_its_mean(self):
        for row in self.campaign('walks', experiment='walk_h', beta=[0.1, 1 / 3], length=400, trials=10 ** 5).rows:
            tolerance = 3 * row['H_standard_error'] + row['H_truncation_bound']
            self.assertLessEqual(abs(row['mean_H'] - row['expected_H']), tolerance, row['beta'])
            gap_se = math.sqrt(row['estimate'] * (1 - row['estimate']) / row['decided'])
            self.assertLess(row['estimate'] - 3 * gap_se, row['expected_H'], row['beta'])

    def test_linear_profile_slope(self):
        summary = self.campaign('profile', experiment='lofford_profile', kinds=['linear'],
                                k_list=[8, 12, 16, 20, 24], trials=1)
        slope = summary.extras['decay_slopes']['linear']
        self.assertTrue(-0.6 <= slope <= -0.4, slope)
