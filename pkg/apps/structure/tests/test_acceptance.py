"""
Structure checkers against their oracles at full acceptance size.

Enabled with HITMAT_ACCEPTANCE=true; run with
    python manage.py test --tag acceptance
"""

from unittest import skipUnless

import numpy as np
from django.conf import settings
from django.test import SimpleTestCase, tag

from apps.core.seeds import seed_stream
from apps.matrix.bitmatrix import ZeroOneMatrix
from apps.process.field import field_new
from apps.structure.blocked import is_b_blocked
from apps.structure.params import RobustParams
from apps.structure.separation import close_low_degree_pair, is_well_separated
from .test_blocked import brute_force_witness
from .test_separation import bfs_close_pair


@tag('acceptance')
@skipUnless(settings.HITMAT['ACCEPTANCE'], 'set HITMAT_ACCEPTANCE=true to run the acceptance checks')
class StructureOracleAcceptanceTests(SimpleTestCase):

    def test_exact_blocked_matches_subset_enumeration(self):
        rng = np.random.default_rng(16)
        outcomes = set()
        for trial in range(10 ** 3):
            M = ZeroOneMatrix.random(16, (0.5, 0.15)[trial % 2], rng)
            verdict = is_b_blocked(M, 4, mode='exact')
            expected = brute_force_witness(M, 4)
            self.assertEqual(verdict.holds, expected is None, trial)
            self.assertEqual(verdict.witness, expected, trial)
            outcomes.add(verdict.holds)
        self.assertEqual(outcomes, {True, False})

    def test_close_pairs_match_bfs_on_random_digraphs(self):
        rng = np.random.default_rng(32)
        for trial in range(10 ** 3):
            A = rng.random((32, 32)) < 0.06
            np.fill_diagonal(A, False)
            M = ZeroOneMatrix.from_array(A)
            for threshold in (1, 2):
                self.assertEqual(close_low_degree_pair(M, threshold), bfs_close_pair(A, threshold), trial)

    def test_well_separated_matches_bfs_over_the_window(self):
        params = RobustParams.from_c(32, 0.75)
        for trial in range(10 ** 3):
            field = field_new(32, 'asymmetric', seed_stream(2024, trial))
            verdict = is_well_separated(field, params.p, params)
            A = field.matrix_at(params.p).to_array()
            expected = None
            for m in range(params.n_prime, 33):
                pair = bfs_close_pair(A[:m, :m], params.low_degree_threshold)
                if pair is not None:
                    expected = (m - 1, *pair)
                    break
            self.assertEqual(verdict.holds, expected is None, trial)
            self.assertEqual(verdict.witness, expected, trial)
