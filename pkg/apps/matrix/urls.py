"""
URL configuration for matrix endpoints.
"""

from django.urls import path

from .views import MatrixRankView

app_name = 'matrix'

urlpatterns = [
    path('matrix/rank/', MatrixRankView.as_view(), name='rank'),
]
