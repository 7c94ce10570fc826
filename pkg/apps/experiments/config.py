"""
Campaign configuration.

A CampaignConfig is the validated, immutable form of a campaign JSON file.
Probabilities given as multiples of ln n / n are resolved per dimension by
``resolve_points`` before any trial is dispatched; workers only ever see
absolute values.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Optional

from apps.core.constants import CODE_VERSION, DEFAULT_TEMPLATE_K, Experiment, FormKind, Model, VerdictMode
from apps.core.exceptions import InvalidConfigError, InvalidParameterError
from apps.process.hitting import Probes
from apps.process.templates import Template
from apps.structure.params import RobustParams
from apps.walks.deficiency import default_n_prime

logger = logging.getLogger(__name__)

# Experiments whose points are (n, p) pairs.
P_EXPERIMENTS = frozenset({
    Experiment.RANK_VS_Z,
    Experiment.ROBUST_FREQUENCY,
    Experiment.DEFICIENCY_TRACES,
    Experiment.WELL_SEPARATED,
    Experiment.ALMOST_FULL_RANK,
    Experiment.TEMPLATE_RANK,
})

# Fields that change the trial rows of each experiment; only these enter the config hash.
_HASHED_FIELDS = {
    Experiment.HITTING: ('n_list', 'model', 'template', 'probes'),
    Experiment.RANK_VS_Z: ('n_list', 'model', 'p_values', 'c_values', 'template'),
    Experiment.ROBUST_FREQUENCY: ('n_list', 'model', 'p_values', 'c_values', 'template', 'alpha', 'mode',
                                  'exposure'),
    Experiment.DEFICIENCY_TRACES: ('n_list', 'model', 'p_values', 'c_values', 'template', 'alpha', 'eps'),
    Experiment.WALK_H: ('betas', 'walk_length'),
    Experiment.LOFFORD_PROFILE: ('kinds', 'k_list', 'form_p'),
    Experiment.WELL_SEPARATED: ('n_list', 'model', 'p_values', 'c_values', 'template', 'alpha'),
    Experiment.ALMOST_FULL_RANK: ('n_list', 'model', 'p_values', 'c_values', 'eps'),
    Experiment.TEMPLATE_RANK: ('n_list', 'model', 'p_values', 'c_values', 'alpha', 'template_size'),
}


@dataclass(frozen=True)
class CampaignConfig:
    experiment: Experiment
    trials: int
    master_seed: int
    output_path: str
    workers: int = 1
    n_list: tuple[int, ...] = ()
    model: Model = Model.ASYMMETRIC
    p_values: tuple[float, ...] = ()
    c_values: tuple[float, ...] = ()
    template: Optional[Template] = None
    template_size: int = DEFAULT_TEMPLATE_K
    probes: Probes = field(default_factory=Probes)
    eps: Optional[float] = None
    alpha: Optional[float] = None
    mode: Optional[VerdictMode] = None
    exposure: bool = False
    betas: tuple[float, ...] = ()
    walk_length: int = 0
    kinds: tuple[FormKind, ...] = ()
    k_list: tuple[int, ...] = ()
    form_p: str = '1/2'
    timings: bool = False

    @classmethod
    def from_json(cls, payload: Any, **overrides) -> 'CampaignConfig':
        """Validate a campaign JSON object; ``overrides`` replace top-level keys (CLI flags)."""
        from .serializers import CampaignConfigSerializer

        if not isinstance(payload, dict):
            raise InvalidConfigError('Campaign configuration must be a JSON object')
        data = {**payload, **{k: v for k, v in overrides.items() if v is not None}}
        serializer = CampaignConfigSerializer(data=data)
        if not serializer.is_valid():
            raise InvalidConfigError(details=serializer.errors)
        return serializer.to_config()

    def semantic_dict(self) -> dict:
        """The fields that determine the trial rows, in canonical JSON-ready form."""
        data: dict[str, Any] = {
            'experiment': self.experiment.value,
            'trials': self.trials,
            'master_seed': self.master_seed,
        }
        for name in _HASHED_FIELDS[self.experiment]:
            value = getattr(self, name)
            if isinstance(value, Template):
                value = value.to_json()
            elif isinstance(value, Probes):
                value = {'tau_inv': value.tau_inv, 'window_a': value.window_a, 'K': value.K}
            elif isinstance(value, (Model, VerdictMode)):
                value = value.value
            elif isinstance(value, tuple):
                value = [v.value if isinstance(v, FormKind) else v for v in value]
            data[name] = value
        return data

    @property
    def config_hash(self) -> str:
        canonical = json.dumps(self.semantic_dict(), sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    @property
    def effective_trials(self) -> int:
        # Atom profiles are exact; one row per size is enough.
        return 1 if self.experiment is Experiment.LOFFORD_PROFILE else self.trials

    def n_prime(self, n: int) -> int:
        return default_n_prime(n) if self.alpha is None else max(1, min(n, math.ceil(self.alpha * n)))


def resolve_points(config: CampaignConfig) -> list[dict]:
    """
    Parameter points of the campaign in dispatch order.

    Multiples c of ln n / n become absolute p here; every resolved value is
    logged at INFO.
    """
    experiment = config.experiment
    if experiment is Experiment.HITTING:
        return [{'n': n} for n in config.n_list]
    if experiment is Experiment.WALK_H:
        return [{'beta': beta, 'length': config.walk_length} for beta in config.betas]
    if experiment is Experiment.LOFFORD_PROFILE:
        return [{'kind': kind.value, 'k': k, 'p': config.form_p} for kind in config.kinds for k in config.k_list]

    points = []
    for n in config.n_list:
        if config.c_values:
            pairs = [(c, c * math.log(n) / n) for c in config.c_values]
        else:
            pairs = [(None, p) for p in config.p_values]
        for c, p in pairs:
            if not 0 < p <= 1:
                raise InvalidConfigError(
                    f"Resolved p = {p!r} at n = {n} lies outside (0, 1]", details={'n': n, 'c': c, 'p': p}
                )
            point = {'n': n, 'c': c, 'p': p}
            if experiment in (Experiment.ROBUST_FREQUENCY, Experiment.WELL_SEPARATED):
                point.update(_robust_point(config, n, c, p))
            logger.info(
                'Resolved probability',
                extra={'experiment': experiment.value, 'n': n, 'c': c, 'p': p},
            )
            points.append(point)
    return points


def _robust_point(config: CampaignConfig, n: int, c: Optional[float], p: float) -> dict:
    if n < 3:
        raise InvalidConfigError('Structure experiments need n >= 3', details={'n': n})
    c = p * n / math.log(n) if c is None else c
    try:
        params = RobustParams.for_p(n, p, c, config.alpha)
    except InvalidParameterError as exc:
        raise InvalidConfigError(exc.message, details={'n': n, 'p': p, **exc.details})
    return {'k': params.k, 'n_prime': params.n_prime, 'robust_c': params.c, 'robust_alpha': params.alpha}


def provenance(config: CampaignConfig) -> dict:
    return {
        'config_hash': config.config_hash,
        'code_version': CODE_VERSION,
        'master_seed': config.master_seed,
    }
