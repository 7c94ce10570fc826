"""
URL configuration for Littlewood-Offord endpoints.
"""

from django.urls import path

from .views import AtomView

app_name = 'lofford'

urlpatterns = [
    path('lofford/atoms/', AtomView.as_view(), name='atoms'),
]
