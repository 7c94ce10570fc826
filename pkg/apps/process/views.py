"""
API views for the coupled processes.
"""

from drf_spectacular.utils import extend_schema, OpenApiResponse
from rest_framework import status
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView

from .serializers import TemplateValidationRequestSerializer, TemplateValidationSerializer
from .templates import validate_template


class TemplateValidateView(APIView):
    """
    Check a template against the template conditions.

    POST /api/v1/templates/validate/
    {
        "n": 4,
        "model": "asymmetric",
        "template": {"I_plus": [1], "S_plus": {"1": [2]}, "I_minus": [], "S_minus": {}}
    }

    A template that parses but breaks the conditions is answered with 200
    and ok=false; only malformed JSON is a 400.
    """

    permission_classes = [AllowAny]
    serializer_class = TemplateValidationRequestSerializer

    @extend_schema(
        request=TemplateValidationRequestSerializer,
        responses={
            200: TemplateValidationSerializer,
            400: OpenApiResponse(description='Malformed template JSON'),
        },
        tags=['Processes'],
        summary='Validate a template',
    )
    def post(self, request, *args, **kwargs):
        serializer = self.serializer_class(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        result = validate_template(data['template'], data['n'], data['model'])
        return Response(TemplateValidationSerializer(result.to_dict()).data, status=status.HTTP_200_OK)
