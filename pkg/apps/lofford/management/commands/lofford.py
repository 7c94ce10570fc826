"""
Management command printing the maximum atom of a Bernoulli form.

The form file holds {"kind": ..., "coefficients": ..., "p": ...}.

Usage:
    python manage.py lofford form.json
    python manage.py lofford form.json --distribution
"""

import json

from django.core.management.base import BaseCommand, CommandError

from apps.core.exceptions import LabError
from apps.lofford.atoms import atom_distribution, atom_report
from apps.lofford.serializers import AtomRequestSerializer


class Command(BaseCommand):
    help = 'Print the exact maximum atom of a Bernoulli form as JSON'

    def add_arguments(self, parser):
        parser.add_argument('form_file', type=str, help='Path to the form JSON')
        parser.add_argument(
            '--distribution',
            action='store_true',
            help='Also print every atom of the distribution'
        )

    def handle(self, *args, **options):
        try:
            with open(options['form_file']) as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CommandError(f"Cannot read {options['form_file']}: {exc}")

        serializer = AtomRequestSerializer(data=payload)
        if not serializer.is_valid():
            raise CommandError(f"invalid_parameter: {json.dumps(serializer.errors)}")
        data = serializer.validated_data

        try:
            output = atom_report(data['kind'], data['coefficients'], data['p']).to_json()
            if options['distribution']:
                distribution = atom_distribution(data['kind'], data['coefficients'], data['p'])
                output['distribution'] = {str(r): str(prob) for r, prob in distribution.items()}
        except LabError as exc:
            raise CommandError(f"{exc.default_code}: {exc.message}")
        self.stdout.write(json.dumps(output, indent=2))
