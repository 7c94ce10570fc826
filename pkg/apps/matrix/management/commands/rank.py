"""
Management command printing the rank report of a matrix file.

The file holds n on the first line, then n lines of 0/1 characters.

Usage:
    python manage.py rank matrix.txt
"""

import json

from django.core.management.base import BaseCommand, CommandError

from apps.core.exceptions import LabError
from apps.matrix.fileformat import read_matrix_file
from apps.matrix.utils import matrix_report


class Command(BaseCommand):
    help = 'Print the exact rank report of a 0-1 matrix file as JSON'

    def add_arguments(self, parser):
        parser.add_argument('matrix_file', type=str, help='Path to the matrix file')

    def handle(self, *args, **options):
        try:
            matrix = read_matrix_file(options['matrix_file'])
            report = matrix_report(matrix)
        except OSError as exc:
            raise CommandError(f"Cannot read {options['matrix_file']}: {exc}")
        except LabError as exc:
            raise CommandError(f"{exc.default_code}: {exc.message}")
        self.stdout.write(json.dumps(report, indent=2))
