"""
Tests for hitting times, trial observables and the template event.
"""

from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from apps.core.exceptions import InvalidParameterError
from apps.matrix.linalg import z_value
from apps.process.field import field_new, probability_bound
from apps.process.hitting import (
    Probes,
    almost_full_rank_trial,
    extract_template_at,
    hitting_trial,
    observe_rank,
    rank_equals_n_minus_z_trial,
    tau_zero,
    window_probabilities,
    z_before_tau,
)
from apps.process.templates import Template
from .helpers import make_field


class TauZeroTests(SimpleTestCase):

    def test_two_by_two_asymmetric(self):
        field = make_field(2, 'asymmetric', [Fraction(3, 10), Fraction(7, 10)])
        tau = tau_zero(field)
        self.assertEqual(tau.clock, probability_bound(Fraction(7, 10)))
        M = field.matrix_at_clock(tau.clock)
        self.assertEqual(M.to_strings(), ['01', '10'])
        self.assertEqual(z_before_tau(field, tau), 1)

    def test_two_by_two_symmetric(self):
        field = make_field(2, 'symmetric', [Fraction(2, 5)])
        tau = tau_zero(field)
        self.assertEqual(tau.clock, probability_bound(Fraction(2, 5)))
        self.assertEqual(field.matrix_at_clock(tau.clock).to_strings(), ['01', '10'])

    def test_symmetric_line_minima(self):
        field = make_field(3, 'symmetric', [Fraction(1, 5), Fraction(1, 2), Fraction(9, 10)])
        self.assertEqual(tau_zero(field).clock, probability_bound(Fraction(1, 2)))

    def test_tau_is_first_clock_without_zero_lines(self):
        for model in ('asymmetric', 'symmetric'):
            for seed in range(20):
                field = field_new(6, model, seed)
                tau = tau_zero(field)
                candidates = sorted(set(field.clocks.tolist()))
                first = next(c for c in candidates if z_value(field.matrix_at_clock(c)) == 0)
                self.assertEqual(tau.clock, first)
                self.assertEqual(tau.value, Fraction(first, 1 << 64))
                self.assertGreaterEqual(z_before_tau(field, tau), 1)

    def test_fully_fixed_template_gives_zero(self):
        field = field_new(2, 'asymmetric', 1)
        template = Template.from_sets({0: {1}, 1: {0}})
        tau = tau_zero(field, template)
        self.assertEqual(tau.value, 0)
        self.assertEqual(tau.clock, 0)

    def test_unreachable_line_gives_one(self):
        field = field_new(3, 'asymmetric', 1)
        template = Template.from_sets({}, {1: {2}, 2: {1}})
        tau = tau_zero(field, template)
        self.assertEqual(tau.value, 1)
        self.assertFalse(tau.attained)


class HittingTrialTests(SimpleTestCase):

    def test_two_by_two_is_never_singular(self):
        # One clock in the symmetric model, so nothing is present just before tau.
        for model, z_before in (('asymmetric', 1), ('symmetric', 2)):
            for seed in range(10):
                result = hitting_trial(2, model, seed)
                self.assertFalse(result.singular_at_tau)
                self.assertEqual(result.rank_at_tau, 2)
                self.assertEqual(result.z_before_tau, z_before)

    def test_observables_are_consistent(self):
        for seed in range(15):
            result = hitting_trial(16, 'asymmetric', seed)
            self.assertEqual(result.singular_at_tau, result.rank_at_tau < 16)
            self.assertEqual(result.z_at_tau, 0)
            self.assertTrue(0 < result.tau <= 1)
            self.assertEqual(result.Y_at_tau, 16 - result.rank_at_tau)
            self.assertIsNone(result.template_event_DK)

    def test_trials_are_deterministic(self):
        first = hitting_trial(12, 'symmetric', 314).to_dict()
        second = hitting_trial(12, 'symmetric', 314).to_dict()
        first.pop('runtime_ms')
        second.pop('runtime_ms')
        self.assertEqual(first, second)

    def test_probes(self):
        probes = Probes(tau_inv=True, window_a=1.0, K=3)
        _, p2 = window_probabilities(32, 1.0)
        for seed in range(5):
            result = hitting_trial(32, 'asymmetric', seed, probes=probes)
            self.assertEqual(result.tau_above_p2, result.tau > p2)
            self.assertIsInstance(result.template_event_DK, bool)
            self.assertGreaterEqual(result.tau_inv, result.tau)
            if not result.singular_at_tau:
                self.assertEqual(result.tau_inv, result.tau)

    def test_window_probabilities(self):
        p1, p2 = window_probabilities(100, 0.5)
        self.assertAlmostEqual(float(p1), (np.log(100) - 0.5) / 100)
        self.assertAlmostEqual(float(p2), (np.log(100) + 0.5) / 100)
        self.assertEqual(window_probabilities(2, 10.0)[0], 0)


class RankTrialTests(SimpleTestCase):

    def test_full_matrix_has_rank_n_minus_z(self):
        for n in range(2, 9):
            for model in ('asymmetric', 'symmetric'):
                self.assertTrue(rank_equals_n_minus_z_trial(n, 1, model, seed=n))

    def test_empty_matrix_has_rank_n_minus_z(self):
        observation = observe_rank(10, 0, 'asymmetric', 3)
        self.assertEqual((observation.rank, observation.z), (0, 10))
        self.assertTrue(rank_equals_n_minus_z_trial(10, 0, 'asymmetric', 3))

    def test_template_trial(self):
        template = Template.from_sets({0: {1}}, {})
        observation = observe_rank(8, 0.5, 'asymmetric', 1, template)
        self.assertGreaterEqual(observation.Y, 0)

    def test_almost_full_rank(self):
        self.assertTrue(almost_full_rank_trial(20, 1, 'asymmetric', 1, eps=0.1))
        self.assertFalse(almost_full_rank_trial(20, 0, 'asymmetric', 1, eps=0.1))
        with self.assertRaises(InvalidParameterError):
            almost_full_rank_trial(20, 0.5, 'asymmetric', 1, eps=0)


class ExtractTemplateTests(SimpleTestCase):

    def test_no_zero_lines_is_degenerate(self):
        field = make_field(3, 'asymmetric', [0.7, 0.9, 0.1, 0.3, 0.95, 0.2])
        self.assertIsNone(extract_template_at(field, 0.75, 0.8, K=3))

    def test_single_zero_row(self):
        field = make_field(3, 'asymmetric', [0.7, 0.9, 0.1, 0.3, 0.95, 0.2])
        template = extract_template_at(field, 0.5, 0.8, K=3)
        self.assertEqual(template, Template.from_sets({0: {1}}))
        self.assertEqual(template.size, 1)

    def test_overlapping_neighbourhoods_are_rejected(self):
        field = make_field(3, 'asymmetric', [0.9, 0.6, 0.9, 0.7, 0.1, 0.2])
        self.assertIsNone(extract_template_at(field, 0.5, 0.8, K=3))

    def test_size_cap(self):
        field = make_field(3, 'asymmetric', [0.7, 0.75, 0.1, 0.3, 0.95, 0.2])
        self.assertEqual(extract_template_at(field, 0.5, 0.8, K=3).size, 2)
        self.assertIsNone(extract_template_at(field, 0.5, 0.8, K=1))

    def test_requires_increasing_probabilities(self):
        field = field_new(4, 'asymmetric', 0)
        with self.assertRaises(InvalidParameterError):
            extract_template_at(field, 0.5, 0.5, K=2)

    def test_symmetric_extraction_is_symmetric(self):
        for seed in range(20):
            field = field_new(24, 'symmetric', seed)
            template = extract_template_at(field, 0.05, 0.2, K=10)
            if template is not None:
                self.assertTrue(template.is_symmetric)
