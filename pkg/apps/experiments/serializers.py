"""
Serializers for campaign configuration files and the seed endpoint.
"""

from fractions import Fraction

from rest_framework import serializers

from apps.core.conf import lab_setting
from apps.core.constants import DEFAULT_TEMPLATE_K, Experiment, FormKind, Model, VerdictMode
from apps.process.hitting import Probes
from apps.process.serializers import TemplateField
from .config import P_EXPERIMENTS, CampaignConfig

MAX_SEED = (1 << 64) - 1


class ProbesSerializer(serializers.Serializer):
    tau_inv = serializers.BooleanField(default=False)
    window_a = serializers.FloatField(required=False, allow_null=True, default=None, min_value=0)
    K = serializers.IntegerField(default=DEFAULT_TEMPLATE_K, min_value=1)


class CampaignConfigSerializer(serializers.Serializer):
    """
    Campaign JSON file:

    {
        "experiment": "rank_vs_z",
        "n_list": [64, 128],
        "model": "asymmetric",
        "c": [0.3, 0.75],
        "trials": 500,
        "master_seed": 1
    }

    Probabilities are given either as absolute values ("p") or as multiples
    of ln n / n ("c"), never both.
    """

    experiment = serializers.ChoiceField(choices=Experiment.choices())
    trials = serializers.IntegerField(min_value=1)
    master_seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED)
    n_list = serializers.ListField(child=serializers.IntegerField(min_value=1), required=False, default=list)
    model = serializers.ChoiceField(choices=Model.choices(), default=Model.ASYMMETRIC.value)
    p = serializers.ListField(child=serializers.CharField(), required=False, default=list)
    c = serializers.ListField(child=serializers.FloatField(min_value=0), required=False, default=list)
    template = TemplateField(required=False, allow_null=True, default=None)
    template_size = serializers.IntegerField(min_value=1, default=DEFAULT_TEMPLATE_K)
    probes = ProbesSerializer(required=False, default=None, allow_null=True)
    eps = serializers.FloatField(required=False, allow_null=True, default=None)
    alpha = serializers.FloatField(required=False, allow_null=True, default=None)
    mode = serializers.ChoiceField(
        choices=[(m.value, m.name.title()) for m in VerdictMode], required=False, allow_null=True, default=None
    )
    exposure = serializers.BooleanField(default=False)
    beta = serializers.ListField(child=serializers.FloatField(), required=False, default=list)
    length = serializers.IntegerField(min_value=0, default=0)
    kinds = serializers.ListField(child=serializers.ChoiceField(choices=FormKind.choices()), required=False,
                                  default=list)
    k_list = serializers.ListField(child=serializers.IntegerField(min_value=1), required=False, default=list)
    form_p = serializers.CharField(default='1/2')
    output_path = serializers.CharField(required=False, allow_null=True, default=None)
    workers = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    timings = serializers.BooleanField(default=False)

    def validate_p(self, value):
        resolved = []
        for text in value:
            try:
                p = float(Fraction(text))
            except (ValueError, ZeroDivisionError):
                raise serializers.ValidationError(f"'{text}' is not a number")
            if not 0 < p <= 1:
                raise serializers.ValidationError(f"p = {text} lies outside (0, 1]")
            resolved.append(p)
        return resolved

    def validate_form_p(self, value):
        try:
            p = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise serializers.ValidationError(f"'{value}' is not a number")
        if not 0 < p <= Fraction(1, 2):
            raise serializers.ValidationError('form_p must lie in (0, 1/2]')
        return str(p)

    def validate(self, attrs):
        experiment = Experiment(attrs['experiment'])
        errors = {}
        if experiment is Experiment.HITTING or experiment in P_EXPERIMENTS:
            if not attrs['n_list']:
                errors['n_list'] = 'At least one dimension is required'
        if experiment in P_EXPERIMENTS:
            if bool(attrs['p']) == bool(attrs['c']):
                errors['p'] = "Give exactly one of 'p' (absolute) or 'c' (multiples of ln n / n)"
            if any(c <= 0 for c in attrs['c']):
                errors['c'] = 'Multiples must be positive'
        if attrs['eps'] is not None and not 0 < attrs['eps'] < 1:
            errors['eps'] = 'eps must lie in (0, 1)'
        if experiment is Experiment.ALMOST_FULL_RANK and attrs['eps'] is None:
            errors['eps'] = 'almost_full_rank needs eps'
        if attrs['alpha'] is not None and not 0 < attrs['alpha'] <= 1:
            errors['alpha'] = 'alpha must lie in (0, 1]'
        if experiment is Experiment.WALK_H:
            if not attrs['beta']:
                errors['beta'] = 'At least one beta is required'
            elif any(not 0 <= b < 0.5 for b in attrs['beta']):
                errors['beta'] = 'beta must lie in [0, 1/2)'
        if experiment is Experiment.LOFFORD_PROFILE:
            if not attrs['kinds']:
                errors['kinds'] = 'At least one form kind is required'
            if not attrs['k_list']:
                errors['k_list'] = 'At least one size is required'
        if errors:
            raise serializers.ValidationError(errors)
        return attrs

    def to_config(self) -> CampaignConfig:
        data = self.validated_data
        probes = data['probes']
        return CampaignConfig(
            experiment=Experiment(data['experiment']),
            trials=data['trials'],
            master_seed=data['master_seed'],
            output_path=data['output_path'] or str(lab_setting('OUTPUT_DIR')),
            workers=data['workers'] or lab_setting('WORKERS'),
            n_list=tuple(data['n_list']),
            model=Model(data['model']),
            p_values=tuple(data['p']),
            c_values=tuple(data['c']),
            template=data['template'],
            template_size=data['template_size'],
            probes=Probes(**probes) if probes else Probes(),
            eps=data['eps'],
            alpha=data['alpha'],
            mode=VerdictMode(data['mode']) if data['mode'] else None,
            exposure=data['exposure'],
            betas=tuple(data['beta']),
            walk_length=data['length'],
            kinds=tuple(FormKind(k) for k in data['kinds']),
            k_list=tuple(data['k_list']),
            form_p=data['form_p'],
            timings=data['timings'],
        )


class SeedRequestSerializer(serializers.Serializer):
    master_seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED)
    index = serializers.IntegerField(min_value=0, max_value=MAX_SEED)


class SeedResponseSerializer(serializers.Serializer):
    master_seed = serializers.IntegerField()
    index = serializers.IntegerField()
    seed = serializers.IntegerField()
    seed_hex = serializers.CharField()
