"""
Tests for the campaign runner: rows, files, determinism and worker invariance.
"""

import json
import math
from fractions import Fraction
from pathlib import Path

from django.test import SimpleTestCase

from apps.core.exceptions import InvalidConfigError
from apps.core.seeds import seed_stream
from apps.core.stats import wilson_interval
from apps.experiments.runner import run_campaign
from apps.experiments.summary import parse_results, summarize
from apps.process.field import clock_to_probability, field_new
from .helpers import TemporaryOutputMixin, make_config

HITTING_HEADER = 'trial,seed,n,model,tau_num,tau_den,z_before,singular_at_tau,rank_at_tau,Y_at_tau,ms'


def body_lines(csv_text):
    return [line for line in csv_text.splitlines() if not line.startswith('#')]


class HittingCampaignTests(TemporaryOutputMixin, SimpleTestCase):

    def test_single_trial_matches_hand_computed_field(self):
        run = run_campaign(make_config(self.out, experiment='hitting', n_list=[2], trials=1))
        header, row = body_lines(run.csv_text)
        self.assertEqual(header, HITTING_HEADER)

        seed = seed_stream(7, 0)
        field = field_new(2, 'asymmetric', seed)
        tau = clock_to_probability(max(field.clock(0, 1), field.clock(1, 0)))
        expected = [0, seed, 2, 'asymmetric', tau.numerator, tau.denominator, 1, 'false', 2, 0, '']
        self.assertEqual(row, ','.join(str(v) for v in expected))

        summary_row, = run.summary.rows
        self.assertEqual(summary_row['estimate'], 0.0)
        self.assertEqual(summary_row['trials'], 1)
        self.assertEqual(summary_row['decided'], 1)
        self.assertEqual((summary_row['ci_low'], summary_row['ci_high']), wilson_interval(0, 1))

    def test_schema_and_provenance_lines(self):
        config = make_config(self.out, experiment='hitting', n_list=[4])
        run = run_campaign(config)
        lines = run.csv_text.splitlines()
        self.assertEqual(lines[0], '# hitmat-schema: hitting v1')
        self.assertEqual(lines[1], f"# config-hash: {config.config_hash}")
        self.assertEqual(lines[3], '# master-seed: 7')
        self.assertEqual(run.summary.provenance['config_hash'], config.config_hash)

    def test_probe_columns_are_appended(self):
        run = run_campaign(make_config(
            self.out, experiment='hitting', n_list=[6], probes={'tau_inv': True, 'window_a': 1.0},
        ))
        header = body_lines(run.csv_text)[0]
        self.assertEqual(header, HITTING_HEADER + ',tau_inv_num,tau_inv_den,tau_above_p2,template_event_DK')
        row = run.summary.rows[0]
        self.assertEqual(set(row['outcomes']), {'singular_at_tau', 'tau_above_p2', 'template_event_DK'})
        for line in body_lines(run.csv_text)[1:]:
            fields = [int(v) if v.isdigit() else v for v in line.split(',')]
            tau, tau_inv = Fraction(fields[4], fields[5]), Fraction(fields[11], fields[12])
            self.assertGreaterEqual(tau_inv, tau)


class DeterminismTests(TemporaryOutputMixin, SimpleTestCase):

    CONFIG = {'experiment': 'rank_vs_z', 'n_list': [8, 12], 'c': [0.75, 1.5], 'trials': 6}

    def test_same_config_gives_identical_csv(self):
        first = run_campaign(make_config(Path(self.out) / 'a', **self.CONFIG))
        second = run_campaign(make_config(Path(self.out) / 'b', **self.CONFIG))
        self.assertEqual(first.csv_path.read_bytes(), second.csv_path.read_bytes())

    def test_worker_count_does_not_change_output(self):
        serial = run_campaign(make_config(Path(self.out) / 'serial', **self.CONFIG))
        parallel = run_campaign(make_config(Path(self.out) / 'parallel', **{**self.CONFIG, 'workers': 2}))
        self.assertEqual(serial.csv_text, parallel.csv_text)
        self.assertEqual(serial.summary_path.read_text(), parallel.summary_path.read_text())

    def test_timings_fill_the_ms_column(self):
        run = run_campaign(make_config(self.out, **{**self.CONFIG, 'timings': True}))
        table = parse_results(run.csv_text)
        self.assertTrue(all(float(r['ms']) >= 0 for r in table.records))
        self.assertIsNotNone(run.summary.rows[0]['mean_ms'])

    def test_summary_file_matches_summarize(self):
        run = run_campaign(make_config(self.out, **self.CONFIG))
        on_disk = json.loads(run.summary_path.read_text())
        self.assertEqual(on_disk, run.summary.to_dict())
        self.assertEqual(summarize(run.csv_path).to_dict(), run.summary.to_dict())

    def test_unwritable_output_path(self):
        blocker = Path(self.out) / 'file'
        blocker.write_text('not a directory')
        with self.assertRaises(InvalidConfigError):
            run_campaign(make_config(blocker / 'results', **self.CONFIG))


class RankCampaignTests(TemporaryOutputMixin, SimpleTestCase):

    def test_complete_matrix_always_has_rank_n_minus_z(self):
        run = run_campaign(make_config(self.out, experiment='rank_vs_z', n_list=list(range(2, 9)), p=['1'],
                                       trials=3))
        self.assertEqual(len(run.summary.rows), 7)
        for row in run.summary.rows:
            self.assertEqual(row['estimate'], 1.0)
            self.assertEqual(row['p'], 1.0)
            self.assertIsNone(row['c'])
            self.assertEqual((row['ci_low'], row['ci_high']), wilson_interval(3, 3))

    def test_resolved_p_is_recorded(self):
        run = run_campaign(make_config(self.out, experiment='rank_vs_z', n_list=[10], c=[0.5]))
        resolved, = run.summary.provenance['resolved_p']
        self.assertEqual(resolved['n'], 10)
        self.assertEqual(resolved['c'], 0.5)
        self.assertEqual(resolved['p'], 0.5 * math.log(10) / 10)

    def test_intervals_shrink_with_trials(self):
        def width(trials):
            row = run_campaign(make_config(Path(self.out) / str(trials), experiment='rank_vs_z', n_list=[10],
                                           c=[0.75], trials=trials)).summary.rows[0]
            return row['ci_high'] - row['ci_low']

        self.assertLess(width(200), width(20))

    def test_almost_full_rank(self):
        run = run_campaign(make_config(self.out, experiment='almost_full_rank', n_list=[12], p=['1'], eps=0.1))
        row = run.summary.rows[0]
        self.assertEqual(row['estimate'], 1.0)
        self.assertEqual(row['eps'], 0.1)

    def test_template_rank(self):
        run = run_campaign(make_config(self.out, experiment='template_rank', n_list=[16], c=[0.75], trials=4,
                                       template_size=2))
        table = parse_results(run.csv_text)
        for record in table.records:
            self.assertTrue(1 <= int(record['template_size']) <= 2)
            self.assertEqual(record['n_prime'], '9')
            self.assertEqual(int(record['Y']), 16 - int(record['z']) - int(record['rank']))


class StructureCampaignTests(TemporaryOutputMixin, SimpleTestCase):

    def test_robust_frequency(self):
        run = run_campaign(make_config(self.out, experiment='robust_frequency', n_list=[12], c=[0.75],
                                       exposure=True, mode='exact'))
        row = run.summary.rows[0]
        self.assertEqual(row['k'], 2)
        self.assertEqual(row['decided'], 2)
        self.assertEqual(set(row['outcomes']), {'robust', 'exposure_robust'})
        for record in parse_results(run.csv_text).records:
            self.assertEqual(record['blocked_mode'], 'exact')
            self.assertIn(record['robust'], ('true', 'false'))

    def test_well_separated(self):
        run = run_campaign(make_config(self.out, experiment='well_separated', n_list=[16], c=[0.75], trials=3))
        for record in parse_results(run.csv_text).records:
            if record['well_separated'] == 'false':
                self.assertTrue(int(record['n_prime']) <= int(record['witness_m']) <= 16)
                self.assertNotEqual(record['witness_u'], record['witness_v'])
            else:
                self.assertEqual(record['witness_m'], '')
        self.assertEqual(run.summary.rows[0]['trials'], 3)

    def test_deficiency_traces(self):
        run = run_campaign(make_config(self.out, experiment='deficiency_traces', n_list=[16], c=[2.0], trials=3,
                                       eps=0.2))
        row = run.summary.rows[0]
        self.assertEqual(row['n_prime'], 9)
        self.assertEqual(row['coupling']['steps'], 3 * 7)
        self.assertEqual(set(row['outcomes']), {'ends_full', 'first_minor_almost_full'})


class WalkAndFormCampaignTests(TemporaryOutputMixin, SimpleTestCase):

    def test_walk_h(self):
        run = run_campaign(make_config(self.out, experiment='walk_h', beta=[0.1, 0.25], length=60, trials=50))
        first, second = run.summary.rows
        self.assertEqual((first['beta'], first['length'], first['trials']), (0.1, 60, 50))
        self.assertAlmostEqual(first['expected_H'], 0.1 / 0.81)
        self.assertAlmostEqual(second['expected_H'], 0.25 / 0.5625)
        self.assertGreaterEqual(first['mean_H'], 0)
        self.assertLess(first['H_truncation_bound'], 1e-3)

    def test_lofford_profile(self):
        run = run_campaign(make_config(self.out, experiment='lofford_profile', kinds=['linear'], k_list=[4, 8],
                                       trials=5))
        rows = run.summary.rows
        self.assertEqual([(r['k'], r['sup_atom']) for r in rows], [(4, '3/8'), (8, '35/128')])
        self.assertEqual(len(parse_results(run.csv_text).records), 2)
        self.assertLess(run.summary.extras['decay_slopes']['linear'], 0)
