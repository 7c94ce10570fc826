"""
Management command running a Monte Carlo campaign.

Usage:
    python manage.py run campaign.json
    python manage.py run campaign.json --workers 4 --seed 11 --out results/rank
"""

import json

from django.core.management.base import BaseCommand, CommandError

from apps.core.exceptions import LabError
from apps.experiments.config import CampaignConfig
from apps.experiments.runner import run_campaign


_SUMMARY_FIELDS = frozenset({
    'trials', 'estimate', 'decided', 'ci_low', 'ci_high', 'outcomes', 'mean_ms', 'coupling',
    'mean_H', 'H_standard_error', 'expected_H', 'H_truncation_bound',
})


def _fmt(value):
    return 'n/a' if value is None else f"{value:.4f}"


class Command(BaseCommand):
    help = 'Run a campaign from a JSON config and write its CSV and summary'

    def add_arguments(self, parser):
        parser.add_argument('config_file', type=str, help='Path to the campaign JSON')
        parser.add_argument('--workers', type=int, help='Worker processes (default HITMAT_WORKERS)')
        parser.add_argument('--seed', type=int, help='Override the master seed')
        parser.add_argument('--out', type=str, help='Output directory (default HITMAT_OUTPUT_DIR)')

    def handle(self, *args, **options):
        try:
            with open(options['config_file']) as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CommandError(f"Cannot read {options['config_file']}: {exc}")

        try:
            config = CampaignConfig.from_json(
                payload,
                workers=options['workers'],
                master_seed=options['seed'],
                output_path=options['out'],
            )
            result = run_campaign(config)
        except LabError as exc:
            detail = f" {json.dumps(exc.details)}" if exc.details else ''
            raise CommandError(f"{exc.default_code}: {exc.message}{detail}")

        self.stdout.write(self.style.SUCCESS(
            f"✓ {config.experiment.value}: {len(result.summary.rows)} parameter points, "
            f"config {config.config_hash[:12]}"
        ))
        self.stdout.write(f"  CSV:     {result.csv_path}")
        self.stdout.write(f"  Summary: {result.summary_path}")
        for row in result.summary.rows:
            if 'estimate' in row:
                point = ', '.join(f"{k}={row[k]}" for k in row if k not in _SUMMARY_FIELDS and row[k] is not None)
                self.stdout.write(
                    f"  {point}: {_fmt(row['estimate'])} [{_fmt(row['ci_low'])}, {_fmt(row['ci_high'])}] "
                    f"over {row['decided']} trials"
                )
