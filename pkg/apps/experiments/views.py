"""
API views for campaign plumbing.
"""

from drf_spectacular.utils import extend_schema, OpenApiResponse
from rest_framework import status
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView

from apps.core.seeds import seed_stream
from .serializers import SeedRequestSerializer, SeedResponseSerializer


class SeedView(APIView):
    """
    Derive the seed of one trial from a campaign master seed.

    POST /api/v1/experiments/seeds/
    {
        "master_seed": 7,
        "index": 0
    }
    """

    permission_classes = [AllowAny]
    serializer_class = SeedRequestSerializer

    @extend_schema(
        request=SeedRequestSerializer,
        responses={
            200: SeedResponseSerializer,
            400: OpenApiResponse(description='master_seed or index outside [0, 2^64)'),
        },
        tags=['Experiments'],
        summary='Derive a trial seed',
    )
    def post(self, request, *args, **kwargs):
        serializer = self.serializer_class(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        seed = seed_stream(data['master_seed'], data['index'])
        payload = {**data, 'seed': seed, 'seed_hex': f"{seed:016x}"}
        return Response(SeedResponseSerializer(payload).data, status=status.HTTP_200_OK)
