"""
URL configuration for experiment endpoints.
"""

from django.urls import path

from .views import SeedView

app_name = 'experiments'

urlpatterns = [
    path('experiments/seeds/', SeedView.as_view(), name='seeds'),
]
