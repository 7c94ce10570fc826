"""
Management command validating a template file.

Usage:
    python manage.py template_check template.json --n 128
    python manage.py template_check template.json --n 128 --model symmetric --n-prime 96
"""

import json

from django.core.management.base import BaseCommand, CommandError

from apps.core.constants import Model
from apps.process.serializers import TemplateValidationRequestSerializer
from apps.process.templates import validate_template


class Command(BaseCommand):
    help = 'Validate a template JSON file for a given dimension and model'

    def add_arguments(self, parser):
        parser.add_argument('template_file', type=str, help='Path to the template JSON')
        parser.add_argument('--n', type=int, required=True, help='Matrix dimension')
        parser.add_argument(
            '--model',
            type=str,
            default=Model.ASYMMETRIC.value,
            choices=[m.value for m in Model],
            help='Process model (asymmetric, symmetric)'
        )
        parser.add_argument(
            '--n-prime',
            type=int,
            dest='n_prime',
            help='Also report whether the support lies in the first n-prime indices'
        )

    def handle(self, *args, **options):
        try:
            with open(options['template_file']) as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CommandError(f"Cannot read {options['template_file']}: {exc}")

        serializer = TemplateValidationRequestSerializer(
            data={'n': options['n'], 'model': options['model'], 'template': payload}
        )
        if not serializer.is_valid():
            raise CommandError(f"invalid_template: {json.dumps(serializer.errors)}")

        template = serializer.validated_data['template']
        result = validate_template(template, options['n'], options['model'])
        if result.ok:
            self.stdout.write(self.style.SUCCESS(
                f"✓ Valid template of size {template.size}"
                f"{' (degenerate)' if template.is_degenerate else ''}"
            ))
        else:
            for violation in result.violations:
                self.stdout.write(self.style.ERROR(f"✗ {violation['code']}: {violation['message']}"))

        if options['n_prime'] is not None:
            verdict = 'permissible' if template.is_permissible(options['n_prime']) else 'not permissible'
            self.stdout.write(f"Support {sorted(v + 1 for v in template.support)} is {verdict}")

        if not result.ok:
            raise CommandError(f"Template has {len(result.violations)} violation(s)")
