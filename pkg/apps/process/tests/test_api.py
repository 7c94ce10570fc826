"""
Tests for the template validation endpoint and ``template_check``.
"""

import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from rest_framework.test import APIClient


VALID = {'I_plus': [1], 'S_plus': {'1': [2]}, 'I_minus': [], 'S_minus': {}}
OVERLAPPING = {'I_plus': [1, 2], 'S_plus': {'1': [3], '2': [3]}, 'I_minus': [], 'S_minus': {}}


class TemplateValidateEndpointTests(SimpleTestCase):

    def setUp(self):
        self.client = APIClient()

    def post(self, body):
        return self.client.post('/api/v1/templates/validate/', body, format='json')

    def test_valid_template(self):
        response = self.post({'n': 4, 'model': 'asymmetric', 'template': VALID})
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json(), {'ok': True, 'violations': []})

    def test_violations_are_listed(self):
        response = self.post({'n': 4, 'template': OVERLAPPING})
        self.assertEqual(response.status_code, 200)
        body = response.json()
        self.assertFalse(body['ok'])
        self.assertEqual(body['violations'][0]['code'], 'not_disjoint')

    def test_symmetric_model_flags_asymmetric_template(self):
        body = self.post({'n': 4, 'model': 'symmetric', 'template': VALID}).json()
        self.assertIn('not_symmetric', [v['code'] for v in body['violations']])

    def test_malformed_template_is_a_bad_request(self):
        response = self.post({'n': 4, 'template': {'I_plus': [1], 'S_plus': {}}})
        self.assertEqual(response.status_code, 400)
        self.assertIn('template', response.json()['error']['details'])


class TemplateCheckCommandTests(SimpleTestCase):

    def run_command(self, payload, *args):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'template.json'
            path.write_text(json.dumps(payload))
            out = StringIO()
            call_command('template_check', str(path), *args, stdout=out)
        return out.getvalue()

    def test_valid_template_reports_size_and_permissibility(self):
        output = self.run_command(VALID, '--n', '8', '--n-prime', '2')
        self.assertIn('Valid template of size 1', output)
        self.assertIn('is permissible', output)

    def test_invalid_template_fails(self):
        with self.assertRaises(CommandError):
            self.run_command(OVERLAPPING, '--n', '8')
