"""
Serializers for Bernoulli form requests.
"""

from rest_framework import serializers

from apps.core.constants import FormKind
from apps.core.exceptions import LabError
from .atoms import parse_matrix, parse_vector


class AtomRequestSerializer(serializers.Serializer):
    """
    {"kind": "bilinear", "coefficients": [[1, 0], [0, 1]], "p": "1/2"}

    Linear forms take a list of coefficients, the other kinds a square
    matrix. Numbers may be given as JSON numbers or as strings like "2/3".
    """

    kind = serializers.ChoiceField(choices=FormKind.choices())
    coefficients = serializers.JSONField()
    p = serializers.CharField(default='1/2')

    def validate(self, attrs):
        try:
            if attrs['kind'] == FormKind.LINEAR.value:
                parse_vector(attrs['coefficients'])
            else:
                parse_matrix(attrs['coefficients'])
        except LabError as exc:
            raise serializers.ValidationError({'coefficients': exc.message})
        return attrs


class AtomReportSerializer(serializers.Serializer):
    form_kind = serializers.ChoiceField(choices=FormKind.choices())
    k = serializers.IntegerField()
    p = serializers.CharField()
    sup_atom = serializers.CharField()
    sup_atom_float = serializers.FloatField()
    argmax_r = serializers.ListField(child=serializers.CharField())
    support_size = serializers.IntegerField()
    l_parameter = serializers.IntegerField(allow_null=True)
