"""
Management command recomputing a campaign summary from its CSV.

Usage:
    python manage.py summarize results/hitting.csv
"""

import json

from django.core.management.base import BaseCommand, CommandError

from apps.core.exceptions import LabError
from apps.experiments.summary import summarize


class Command(BaseCommand):
    help = 'Print the summary of a campaign result CSV as JSON'

    def add_arguments(self, parser):
        parser.add_argument('results_csv', type=str, help='Path to a CSV written by the run command')

    def handle(self, *args, **options):
        try:
            summary = summarize(options['results_csv'])
        except LabError as exc:
            raise CommandError(f"{exc.default_code}: {exc.message}")
        self.stdout.write(json.dumps(summary.to_dict(), indent=2))
