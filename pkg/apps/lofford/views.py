"""
API views for Bernoulli form atoms.
"""

from drf_spectacular.utils import extend_schema, OpenApiResponse
from rest_framework import status
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView

from .atoms import atom_report
from .serializers import AtomReportSerializer, AtomRequestSerializer


class AtomView(APIView):
    """
    Exact maximum atom of a linear, bilinear or quadratic Bernoulli form.

    POST /api/v1/lofford/atoms/
    {
        "kind": "linear",
        "coefficients": [1, 1, 2],
        "p": "1/3"
    }
    """

    permission_classes = [AllowAny]
    serializer_class = AtomRequestSerializer

    @extend_schema(
        request=AtomRequestSerializer,
        responses={
            200: AtomReportSerializer,
            400: OpenApiResponse(description='Malformed form, p outside (0, 1/2] or size above the enumeration cap'),
        },
        tags=['Littlewood-Offord'],
        summary='Maximum atom of a Bernoulli form',
    )
    def post(self, request, *args, **kwargs):
        serializer = self.serializer_class(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        report = atom_report(data['kind'], data['coefficients'], data['p'])
        return Response(AtomReportSerializer(report.to_json()).data, status=status.HTTP_200_OK)
