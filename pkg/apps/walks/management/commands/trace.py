"""
Management command dumping a deficiency trace as CSV.

Usage:
    python manage.py trace --n 64 --p 0.05
    python manage.py trace --n 64 --c 0.75 --seed 3 --template t.json --output trace.csv
"""

import json
import math

from django.core.management.base import BaseCommand, CommandError

from apps.core.constants import Model
from apps.core.exceptions import LabError
from apps.process.templates import Template
from apps.walks.deficiency import deficiency_trace


class Command(BaseCommand):
    help = 'Compute rank, z and Y along the exposure of leading minors and write them as CSV'

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True, help='Matrix dimension')
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument('--p', type=str, help='Edge probability (decimal or fraction)')
        group.add_argument('--c', type=float, help='Use p = c ln n / n')
        parser.add_argument(
            '--model',
            type=str,
            default=Model.ASYMMETRIC.value,
            choices=[m.value for m in Model],
            help='Process model (asymmetric, symmetric)'
        )
        parser.add_argument('--seed', type=int, default=0, help='Field seed')
        parser.add_argument('--n-prime', type=int, dest='n_prime', help='First minor size (default n/2 + 1)')
        parser.add_argument('--template', type=str, help='Path to a template JSON file')
        parser.add_argument('--output', type=str, help='Write the CSV here instead of stdout')

    def handle(self, *args, **options):
        n = options['n']
        p = options['p'] if options['p'] is not None else options['c'] * math.log(n) / n

        template = None
        if options['template']:
            try:
                with open(options['template']) as fh:
                    template = Template.from_json(json.load(fh))
            except (OSError, json.JSONDecodeError) as exc:
                raise CommandError(f"Cannot read {options['template']}: {exc}")
            except LabError as exc:
                raise CommandError(f"{exc.default_code}: {exc.message}")

        try:
            trace = deficiency_trace(n, p, options['model'], options['seed'], template, options['n_prime'])
        except LabError as exc:
            raise CommandError(f"{exc.default_code}: {exc.message}")

        if options['output']:
            try:
                with open(options['output'], 'w', newline='') as fh:
                    fh.write(trace.to_csv())
            except OSError as exc:
                raise CommandError(f"Cannot write {options['output']}: {exc}")
            self.stdout.write(self.style.SUCCESS(
                f"✓ Wrote {len(trace.rank)} minors to {options['output']} (final Y = {trace.Y[-1]})"
            ))
        else:
            self.stdout.write(trace.to_csv(), ending='')
