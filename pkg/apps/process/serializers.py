"""
Serializers for templates.

The same serializers validate the HTTP bodies and the JSON files read by
the management commands.
"""

from rest_framework import serializers

from apps.core.constants import Model
from apps.core.exceptions import InvalidTemplateError
from .templates import Template


class TemplateField(serializers.JSONField):
    """JSON template object parsed into a Template."""

    def to_internal_value(self, data):
        data = super().to_internal_value(data)
        try:
            return Template.from_json(data)
        except InvalidTemplateError as exc:
            raise serializers.ValidationError([v['message'] for v in exc.violations])

    def to_representation(self, value):
        return value.to_json() if isinstance(value, Template) else value


class TemplateValidationRequestSerializer(serializers.Serializer):
    """
    POST body of the template validation endpoint:
    {"n": 8, "model": "asymmetric", "template": {...}}
    """

    n = serializers.IntegerField(min_value=1)
    model = serializers.ChoiceField(choices=Model.choices(), default=Model.ASYMMETRIC.value)
    template = TemplateField()


class TemplateValidationSerializer(serializers.Serializer):
    ok = serializers.BooleanField()
    violations = serializers.ListField(child=serializers.DictField())
