"""
Process app configuration.
"""

from django.apps import AppConfig


class ProcessConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.process'
    verbose_name = 'Coupled Matrix Processes'
