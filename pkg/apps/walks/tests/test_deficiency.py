"""
Tests for deficiency traces, coupling statistics and the ``trace`` command.
"""

import math
import tempfile
from fractions import Fraction
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from apps.core.exceptions import InternalInvariantError, InvalidParameterError, InvalidTemplateError
from apps.process.templates import Template
from apps.walks.deficiency import DeficiencyTrace, coupling_statistics, deficiency_trace


class DeficiencyTraceTests(SimpleTestCase):

    def test_complete_matrix_has_no_deficiency(self):
        for n in range(2, 9):
            trace = deficiency_trace(n, 1, 'asymmetric', seed=0)
            self.assertEqual(set(trace.Y), {0})
            self.assertEqual(list(trace.rank), list(trace.sizes))

    def test_empty_matrix(self):
        trace = deficiency_trace(10, 0, 'symmetric', seed=4)
        self.assertEqual(set(trace.rank), {0})
        self.assertEqual(list(trace.z), list(trace.sizes))
        self.assertEqual(set(trace.Y), {0})

    def test_default_window(self):
        trace = deficiency_trace(10, Fraction(1, 3), 'asymmetric', seed=1)
        self.assertEqual(trace.n_prime, 6)
        self.assertEqual(len(trace.rank), 5)
        self.assertEqual(trace.p, Fraction(1, 3))

    def test_identity_along_critical_traces(self):
        n = 64
        p = 0.75 * math.log(n) / n
        for model in ('asymmetric', 'symmetric'):
            for seed in range(3):
                trace = deficiency_trace(n, p, model, seed, n_prime=40)
                self.assertEqual(len(trace.rank), 25)
                for step, m in enumerate(trace.sizes):
                    self.assertEqual(trace.Y[step], m - trace.z[step] - trace.rank[step])
                for dY, dz, dr in zip(trace.delta_Y, trace.delta_z, trace.delta_rank):
                    self.assertEqual(dY, 1 - dz - dr)
                    self.assertIn(dr, (0, 1, 2))

    def test_permissible_template(self):
        template = Template.from_sets({0: [1, 2]})
        trace = deficiency_trace(12, 0.2, 'asymmetric', seed=2, template=template, n_prime=7)
        self.assertEqual(trace.template, template)

    def test_non_permissible_template(self):
        with self.assertRaises(InvalidTemplateError):
            deficiency_trace(8, 0.3, 'asymmetric', seed=0, template=Template.from_sets({6: [0]}), n_prime=5)

    def test_bad_window(self):
        with self.assertRaises(InvalidParameterError):
            deficiency_trace(8, 0.3, 'asymmetric', seed=0, n_prime=9)

    def test_validate_rejects_inconsistent_trace(self):
        forged = DeficiencyTrace(
            n=3, p=Fraction(1, 2), model='asymmetric', seed=0, n_prime=2,
            rank=(0, 3), z=(0, 0), Y=(2, 0),
        )
        with self.assertRaises(InternalInvariantError):
            forged.validate()

    def test_to_csv(self):
        lines = deficiency_trace(4, 1, 'asymmetric', seed=0).to_csv().splitlines()
        self.assertEqual(lines, ['m,rank,z,Y', '3,3,0,0', '4,4,0,0'])


class CouplingStatisticsTests(SimpleTestCase):

    def test_complete_traces(self):
        stats = coupling_statistics([deficiency_trace(8, 1, 'asymmetric', seed) for seed in range(3)], eps=0.1)
        self.assertEqual(stats.traces, 3)
        self.assertEqual(stats.steps, 9)
        self.assertEqual(stats.up_given_positive.trials, 0)
        self.assertIsNone(stats.up_given_positive.value)
        self.assertEqual(stats.up_given_zero.value, 0)
        self.assertEqual(stats.double_z_drop.value, 0)
        self.assertEqual(stats.optimal_increase.value, 1)
        self.assertEqual(stats.ends_full.value, 1)
        self.assertEqual(stats.first_minor_almost_full.value, 1)

    def test_empty_traces(self):
        stats = coupling_statistics([deficiency_trace(8, 0, 'asymmetric', seed) for seed in range(2)])
        self.assertEqual(stats.double_z_drop.value, 0)
        self.assertEqual(stats.optimal_increase.value, 0)
        self.assertEqual(stats.up_given_zero.value, 0)
        self.assertIsNone(stats.first_minor_almost_full)
        self.assertIsNone(stats.to_dict()['first_minor_almost_full'])

    def test_requires_traces(self):
        with self.assertRaises(InvalidParameterError):
            coupling_statistics([])


class TraceCommandTests(SimpleTestCase):

    def test_prints_csv(self):
        out = StringIO()
        call_command('trace', '--n', '4', '--p', '1', stdout=out)
        self.assertEqual(out.getvalue().splitlines()[0], 'm,rank,z,Y')

    def test_writes_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'trace.csv'
            out = StringIO()
            call_command('trace', '--n', '16', '--c', '0.75', '--seed', '2', '--output', str(path), stdout=out)
            self.assertIn('✓', out.getvalue())
            self.assertEqual(len(path.read_text().splitlines()), 1 + 16 - 9 + 1)

    def test_rejects_bad_probability(self):
        with self.assertRaises(CommandError):
            call_command('trace', '--n', '4', '--p', '2')
