"""
Tests for zero lines, deficiency and bordering.
"""

import itertools

import numpy as np
from django.test import SimpleTestCase

from apps.core.exceptions import DimensionMismatchError
from apps.matrix.bitmatrix import ZeroOneMatrix
from apps.matrix.linalg import (
    border,
    deficiency,
    in_col_span,
    in_row_span,
    rank_increase_classify,
    z_value,
    zero_cols,
    zero_rows,
)
from apps.matrix.rank import rank_bareiss, rank_exact


class ZeroLineTests(SimpleTestCase):

    def test_zero_rows(self):
        self.assertEqual(zero_rows(ZeroOneMatrix.zeros(3)), {0, 1, 2})
        self.assertEqual(zero_rows(ZeroOneMatrix.identity(3)), frozenset())
        self.assertEqual(zero_rows(ZeroOneMatrix.from_strings(['00', '10'])), {0})

    def test_zero_cols_is_zero_rows_of_transpose(self):
        M = ZeroOneMatrix.from_strings(['00', '10'])
        self.assertEqual(zero_cols(M), {1})
        self.assertEqual(zero_cols(M), zero_rows(M.transpose()))

    def test_z_value(self):
        self.assertEqual(z_value(ZeroOneMatrix.identity(4)), 0)
        self.assertEqual(z_value(ZeroOneMatrix.zeros(3)), 3)
        self.assertEqual(z_value(ZeroOneMatrix.from_strings(['00', '10'])), 1)
        self.assertEqual(z_value(ZeroOneMatrix.from_strings(['111', '000', '000'])), 2)


class DeficiencyTests(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(deficiency(ZeroOneMatrix.identity(5)), 0)
        self.assertEqual(deficiency(ZeroOneMatrix.zeros(4)), 0)
        self.assertEqual(deficiency(ZeroOneMatrix.from_strings(['11', '11'])), 1)

    def test_transpose_invariance(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            M = ZeroOneMatrix.random(int(rng.integers(1, 16)), rng.choice([0.05, 0.2, 0.5]), rng)
            self.assertGreaterEqual(deficiency(M), 0)
            self.assertEqual(deficiency(M), deficiency(M.transpose()))

    def test_requires_square(self):
        with self.assertRaises(DimensionMismatchError):
            deficiency(ZeroOneMatrix.from_strings(['101', '011']))


class BorderTests(SimpleTestCase):

    def test_gamma_layout(self):
        gamma = border(ZeroOneMatrix.identity(2), [1, 0], [0, 1])
        self.assertEqual(gamma.to_strings(), ['100', '011', '100'])

    def test_examples(self):
        I2 = ZeroOneMatrix.identity(2)
        self.assertEqual(rank_exact(border(I2, [1, 0], [0, 1])).rank, 2)
        self.assertEqual(rank_exact(border(I2, [1, 0], [1, 0])).rank, 3)
        self.assertEqual(rank_exact(border(ZeroOneMatrix.zeros(1), [1], [1])).rank, 2)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            border(ZeroOneMatrix.identity(2), [1, 0, 1], [0, 1])
        with self.assertRaises(DimensionMismatchError):
            border(ZeroOneMatrix.identity(2), [1, 0], [1])


class RankIncreaseTests(SimpleTestCase):

    def test_examples(self):
        I2 = ZeroOneMatrix.identity(2)
        self.assertEqual(rank_increase_classify(I2, [1, 0], [0, 1]).increase, 0)
        Q = ZeroOneMatrix.from_strings(['10', '00'])
        result = rank_increase_classify(Q, [0, 1], [0, 1])
        self.assertEqual(result.increase, 2)
        self.assertEqual(result.witness, (False, False))

    def test_full_rank_q_never_gains_two(self):
        I2 = ZeroOneMatrix.identity(2)
        for x in itertools.product((0, 1), repeat=2):
            for y in itertools.product((0, 1), repeat=2):
                self.assertLess(rank_increase_classify(I2, x, y).increase, 2)

    def test_fuzzed_bordering_bounds(self):
        rng = np.random.default_rng(8)
        for _ in range(300):
            m = int(rng.integers(1, 9))
            Q = ZeroOneMatrix.random(m, rng.choice([0.2, 0.5]), rng)
            x = (rng.random(m) < 0.4).astype(int)
            y = (rng.random(m) < 0.4).astype(int)
            result = rank_increase_classify(Q, x, y)
            self.assertEqual(result.rank_q, rank_bareiss(Q))
            self.assertEqual(result.rank_border, rank_bareiss(border(Q, x, y)))
            self.assertIn(result.increase, (0, 1, 2))
            self.assertEqual(result.x_in_row_span, in_row_span(Q, x))
            self.assertEqual(result.y_in_col_span, in_col_span(Q, y))
