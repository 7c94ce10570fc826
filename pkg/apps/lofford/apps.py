"""
Littlewood-Offord app configuration.
"""

from django.apps import AppConfig


class LoffordConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.lofford'
    verbose_name = 'Anticoncentration of Bernoulli Forms'
