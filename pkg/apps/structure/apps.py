"""
Structure app configuration.
"""

from django.apps import AppConfig


class StructureConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.structure'
    verbose_name = 'Structural Predicates'
