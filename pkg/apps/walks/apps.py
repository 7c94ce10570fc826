"""
Walks app configuration.
"""

from django.apps import AppConfig


class WalksConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.walks'
    verbose_name = 'Biased Walks and Deficiency Traces'
