"""
Tests for per-trial seed derivation.
"""

from django.test import SimpleTestCase

from apps.core.exceptions import InvalidParameterError
from apps.core.seeds import GOLDEN, MASK64, mix64, seed_stream


class SeedStreamTests(SimpleTestCase):

    def test_master_zero_reproduces_reference_splitmix64(self):
        self.assertEqual(seed_stream(0, 0), 0xE220A8397B1DCDAF)
        self.assertEqual(seed_stream(0, 1), 0x6E789E6AA1B965F4)
        self.assertEqual(seed_stream(0, 2), 0x06C45D188009454F)

    def test_frozen_vector(self):
        self.assertEqual(seed_stream(7, 0), 0x863B891F4C0ABD4F)
        self.assertEqual(seed_stream(7, 1), 0x4D58FBD282EAF415)

    def test_deterministic_and_in_range(self):
        for index in (0, 1, 17, 10 ** 9, MASK64 - 1):
            seed = seed_stream(12345, index)
            self.assertEqual(seed, seed_stream(12345, index))
            self.assertTrue(0 <= seed <= MASK64)

    def test_distinct_indices_never_collide(self):
        seeds = {seed_stream(2024, i) for i in range(10 ** 6)}
        self.assertEqual(len(seeds), 10 ** 6)

    def test_masters_give_different_streams(self):
        first = [seed_stream(1, i) for i in range(1000)]
        second = [seed_stream(2, i) for i in range(1000)]
        self.assertFalse(set(first) & set(second))

    def test_no_identity_leak(self):
        for s in range(1, 10 ** 4):
            self.assertNotEqual(seed_stream(s, 0), s)
        self.assertNotEqual(seed_stream(0xDEADBEEF, 0), 0xDEADBEEF)

    def test_mix64_of_zero_and_golden(self):
        self.assertEqual(mix64(0), 0)
        self.assertEqual(mix64(GOLDEN), seed_stream(0, 0))

    def test_rejects_out_of_range_inputs(self):
        with self.assertRaises(InvalidParameterError):
            seed_stream(-1, 0)
        with self.assertRaises(InvalidParameterError):
            seed_stream(0, 1 << 64)
