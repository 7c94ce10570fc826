"""
API views for exact matrix algebra.
"""

from drf_spectacular.utils import extend_schema, OpenApiResponse
from rest_framework import status
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView

from .serializers import MatrixRankRequestSerializer, RankReportSerializer
from .utils import matrix_report


class MatrixRankView(APIView):
    """
    Exact rank, z and deficiency of a square 0-1 matrix.

    POST /api/v1/matrix/rank/
    {
        "rows": ["011", "101", "110"]
    }
    """

    permission_classes = [AllowAny]
    serializer_class = MatrixRankRequestSerializer

    @extend_schema(
        request=MatrixRankRequestSerializer,
        responses={
            200: RankReportSerializer,
            400: OpenApiResponse(description='Matrix is not square or has non 0/1 entries'),
        },
        tags=['Matrix'],
        summary='Exact rank of a 0-1 matrix',
    )
    def post(self, request, *args, **kwargs):
        serializer = self.serializer_class(data=request.data)
        serializer.is_valid(raise_exception=True)
        report = matrix_report(serializer.to_matrix())
        return Response(RankReportSerializer(report).data, status=status.HTTP_200_OK)
