"""
Shared fixtures for campaign tests.
"""

import tempfile

from apps.experiments.config import CampaignConfig


def make_config(output_path, **fields):
    payload = {'trials': 2, 'master_seed': 7, 'output_path': str(output_path), 'workers': 1, **fields}
    return CampaignConfig.from_json(payload)


class TemporaryOutputMixin:
    """Gives each test a scratch output directory in ``self.out``."""

    def setUp(self):
        super().setUp()
        self._tmp = tempfile.TemporaryDirectory()
        self.out = self._tmp.name
        self.addCleanup(self._tmp.cleanup)
