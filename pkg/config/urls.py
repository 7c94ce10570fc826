"""
URL configuration for the hitmat laboratory.
All endpoints are versioned under /api/v1/
"""

from django.urls import path, include
from drf_spectacular.views import (
    SpectacularAPIView,
    SpectacularSwaggerView,
)

urlpatterns = [
    # API v1 endpoints
    path('api/v1/', include('apps.matrix.urls')),
    path('api/v1/', include('apps.process.urls')),
    path('api/v1/', include('apps.lofford.urls')),
    path('api/v1/', include('apps.experiments.urls')),

    # API Documentation
    path('api/schema/', SpectacularAPIView.as_view(), name='schema'),
    path('api/docs/', SpectacularSwaggerView.as_view(url_name='schema'), name='swagger-ui'),
]
