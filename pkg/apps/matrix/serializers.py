"""
Serializers for matrix requests.
"""

from rest_framework import serializers

from apps.core.exceptions import LabError
from .bitmatrix import ZeroOneMatrix


class MatrixRankRequestSerializer(serializers.Serializer):
    """
    A square 0-1 matrix given as one string of 0/1 characters per row.
    """

    rows = serializers.ListField(
        child=serializers.RegexField(r'^[01]+$'),
        allow_empty=False,
    )

    def validate_rows(self, value):
        n = len(value)
        bad = [i + 1 for i, row in enumerate(value) if len(row) != n]
        if bad:
            raise serializers.ValidationError(
                f"Matrix must be square: rows {bad} do not have {n} entries"
            )
        return value

    def to_matrix(self) -> ZeroOneMatrix:
        try:
            return ZeroOneMatrix.from_strings(self.validated_data['rows'])
        except LabError as exc:
            raise serializers.ValidationError({'rows': exc.message})


class RankReportSerializer(serializers.Serializer):
    rank = serializers.IntegerField()
    certified = serializers.BooleanField()
    primes_used = serializers.ListField(child=serializers.IntegerField())
    oracle_checked = serializers.BooleanField()
    upper_bound = serializers.IntegerField(allow_null=True)
    n = serializers.IntegerField()
    z = serializers.IntegerField()
    deficiency = serializers.IntegerField()
    zero_rows = serializers.ListField(child=serializers.IntegerField())
    zero_cols = serializers.ListField(child=serializers.IntegerField())
