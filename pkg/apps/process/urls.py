"""
URL configuration for process endpoints.
"""

from django.urls import path

from .views import TemplateValidateView

app_name = 'process'

urlpatterns = [
    path('templates/validate/', TemplateValidateView.as_view(), name='template-validate'),
]
