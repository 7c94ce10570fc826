"""
Tests for the rank endpoint and the ``rank`` management command.
"""

import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from rest_framework.test import APIClient

from apps.matrix.bitmatrix import ZeroOneMatrix
from apps.matrix.fileformat import parse_matrix_text, write_matrix_file
from apps.core.exceptions import DimensionMismatchError


class MatrixRankEndpointTests(SimpleTestCase):

    def setUp(self):
        self.client = APIClient()

    def test_rank_of_all_ones_off_diagonal(self):
        response = self.client.post('/api/v1/matrix/rank/', {'rows': ['011', '101', '110']}, format='json')
        self.assertEqual(response.status_code, 200)
        body = response.json()
        self.assertEqual(body['rank'], 3)
        self.assertEqual(body['z'], 0)
        self.assertEqual(body['deficiency'], 0)
        self.assertTrue(body['certified'])

    def test_zero_lines_are_one_based(self):
        response = self.client.post('/api/v1/matrix/rank/', {'rows': ['00', '10']}, format='json')
        body = response.json()
        self.assertEqual(body['zero_rows'], [1])
        self.assertEqual(body['zero_cols'], [2])

    def test_non_square_is_rejected(self):
        response = self.client.post('/api/v1/matrix/rank/', {'rows': ['011', '10']}, format='json')
        self.assertEqual(response.status_code, 400)
        body = response.json()
        self.assertEqual(body['status_code'], 400)
        self.assertIn('rows', body['error']['details'])


class MatrixFileTests(SimpleTestCase):

    def test_parse_rejects_wrong_row_length(self):
        with self.assertRaises(DimensionMismatchError):
            parse_matrix_text('2\n01\n1\n')

    def test_rank_command_prints_json(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'm.txt'
            write_matrix_file(path, ZeroOneMatrix.from_strings(['11', '11']))
            out = StringIO()
            call_command('rank', str(path), stdout=out)
        report = json.loads(out.getvalue())
        self.assertEqual(report['rank'], 1)
        self.assertEqual(report['deficiency'], 1)

    def test_rank_command_reports_bad_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'bad.txt'
            path.write_text('2\n0a\n00\n')
            with self.assertRaises(CommandError):
                call_command('rank', str(path))
