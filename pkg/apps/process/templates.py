"""
Templates: deterministic overrides of selected rows and columns.

A template fixes the out-neighbourhood of every row i in I_plus to S_plus[i]
and the in-neighbourhood of every column j in I_minus to S_minus[j].
Indices are 0-based here and 1-based in the JSON form:

    {"I_plus": [1], "S_plus": {"1": [2]}, "I_minus": [], "S_minus": {}}
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np

from apps.core.constants import Model
from apps.core.exceptions import InvalidParameterError, InvalidTemplateError
from apps.core.validators import as_model

logger = logging.getLogger(__name__)

_Family = tuple[tuple[int, frozenset[int]], ...]


def _freeze(family: Mapping[int, Iterable[int]]) -> _Family:
    return tuple(sorted((int(i), frozenset(int(j) for j in s)) for i, s in family.items()))


@dataclass(frozen=True)
class Template:
    """Pair of families ((S_i^+)_{i in I_plus}, (S_j^-)_{j in I_minus})."""

    plus: _Family = field(default_factory=tuple)
    minus: _Family = field(default_factory=tuple)

    @classmethod
    def from_sets(cls, s_plus: Optional[Mapping[int, Iterable[int]]] = None,
                  s_minus: Optional[Mapping[int, Iterable[int]]] = None) -> 'Template':
        return cls(plus=_freeze(s_plus or {}), minus=_freeze(s_minus or {}))

    @classmethod
    def degenerate(cls) -> 'Template':
        return cls()

    @property
    def S_plus(self) -> dict[int, frozenset[int]]:
        return dict(self.plus)

    @property
    def S_minus(self) -> dict[int, frozenset[int]]:
        return dict(self.minus)

    @property
    def I_plus(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.plus)

    @property
    def I_minus(self) -> frozenset[int]:
        return frozenset(j for j, _ in self.minus)

    @property
    def union_plus(self) -> frozenset[int]:
        return frozenset().union(*(s for _, s in self.plus))

    @property
    def union_minus(self) -> frozenset[int]:
        return frozenset().union(*(s for _, s in self.minus))

    @property
    def size(self) -> int:
        return max(
            len(self.plus),
            len(self.minus),
            max((len(s) for _, s in self.plus), default=0),
            max((len(s) for _, s in self.minus), default=0),
        )

    @property
    def is_degenerate(self) -> bool:
        return not self.plus and not self.minus

    @property
    def is_symmetric(self) -> bool:
        return self.plus == self.minus

    @property
    def support(self) -> frozenset[int]:
        """I_plus, I_minus and every S set together."""
        return self.I_plus | self.I_minus | self.union_plus | self.union_minus

    def is_permissible(self, n_prime: int) -> bool:
        """Support inside the first n_prime indices."""
        return all(v < n_prime for v in self.support)

    def permute(self, perm: Sequence[int]) -> 'Template':
        """Relabel every index v as perm[v] in both families."""
        return Template.from_sets(
            {perm[i]: [perm[j] for j in s] for i, s in self.plus},
            {perm[i]: [perm[j] for j in s] for i, s in self.minus},
        )

    def permissible_permutation(self, n: int, n_prime: int) -> list[int]:
        """
        A permutation of range(n) moving the support into range(n_prime),
        keeping relative order. ``self.permute(perm)`` is then permissible.
        """
        support = sorted(self.support)
        if len(support) > n_prime:
            raise InvalidTemplateError(
                [{'code': 'not_permissible',
                  'message': f"Support of size {len(support)} cannot fit in the first {n_prime} indices"}]
            )
        order = support + [v for v in range(n) if v not in self.support]
        perm = [0] * n
        for new, old in enumerate(order):
            perm[old] = new
        return perm

    def fixed_masks(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """
        Boolean n×n arrays (fixed, fixed_one): which entries the template
        decides, and which of those are 1.
        """
        fixed = np.zeros((n, n), dtype=bool)
        fixed_one = np.zeros((n, n), dtype=bool)
        for i, s in self.plus:
            fixed[i, :] = True
            fixed_one[i, list(s)] = True
        for j, s in self.minus:
            fixed[:, j] = True
            fixed_one[list(s), j] = True
        return fixed, fixed_one

    def to_json(self) -> dict[str, Any]:
        return {
            'I_plus': [i + 1 for i, _ in self.plus],
            'S_plus': {str(i + 1): sorted(j + 1 for j in s) for i, s in self.plus},
            'I_minus': [j + 1 for j, _ in self.minus],
            'S_minus': {str(j + 1): sorted(i + 1 for i in s) for j, s in self.minus},
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> 'Template':
        """Parse the 1-based JSON form; structural problems raise InvalidTemplateError."""
        if not isinstance(data, Mapping):
            raise InvalidTemplateError([{'code': 'malformed', 'message': 'Template must be a JSON object'}])
        errors = []
        families = {}
        for side in ('plus', 'minus'):
            index_key, sets_key = f'I_{side}', f'S_{side}'
            indices = data.get(index_key, [])
            sets = data.get(sets_key, {})
            if not isinstance(indices, list) or not all(isinstance(v, int) for v in indices):
                errors.append({'code': 'malformed', 'message': f"{index_key} must be a list of integers"})
                continue
            if not isinstance(sets, Mapping):
                errors.append({'code': 'malformed', 'message': f"{sets_key} must be an object"})
                continue
            try:
                parsed = {int(k): v for k, v in sets.items()}
            except (TypeError, ValueError):
                errors.append({'code': 'malformed', 'message': f"{sets_key} keys must be integers"})
                continue
            if set(parsed) != set(indices) or len(set(indices)) != len(indices):
                errors.append({
                    'code': 'malformed',
                    'message': f"{sets_key} keys must match the distinct entries of {index_key}",
                })
                continue
            if not all(isinstance(s, list) and all(isinstance(v, int) for v in s) for s in parsed.values()):
                errors.append({'code': 'malformed', 'message': f"{sets_key} values must be lists of integers"})
                continue
            if any(v < 1 for v in indices) or any(v < 1 for s in parsed.values() for v in s):
                errors.append({'code': 'out_of_range', 'message': 'Template indices are 1-based'})
                continue
            families[side] = {i - 1: [j - 1 for j in s] for i, s in parsed.items()}
        if errors:
            raise InvalidTemplateError(errors)
        return cls.from_sets(families['plus'], families['minus'])


@dataclass(frozen=True)
class TemplateValidation:
    ok: bool
    violations: tuple[dict, ...] = ()

    def to_dict(self) -> dict:
        return {'ok': self.ok, 'violations': list(self.violations)}


def _check_family(family: _Family, excluded: frozenset[int], n: int, sign: str, other: str) -> list[dict]:
    errors = []
    seen: dict[int, int] = {}
    for i, s in family:
        if not 0 <= i < n or any(not 0 <= v < n for v in s):
            errors.append({
                'code': 'out_of_range',
                'message': f"S_{sign}[{i + 1}] or its index lies outside [1, {n}]",
            })
            continue
        if not s:
            errors.append({'code': 'empty_set', 'message': f"S_{sign}[{i + 1}] must be non-empty"})
        if i in s:
            errors.append({
                'code': 'self_loop',
                'message': f"S_{sign}[{i + 1}] contains its own index; the diagonal is structurally zero",
            })
        for v in sorted(s):
            if v in seen:
                errors.append({
                    'code': 'not_disjoint',
                    'message': f"S_{sign}[{seen[v] + 1}] and S_{sign}[{i + 1}] must be pairwise disjoint "
                               f"(both contain {v + 1})",
                })
            else:
                seen[v] = i
        clash = sorted(v + 1 for v in s & excluded)
        if clash:
            errors.append({
                'code': 'containment',
                'message': f"S_{sign}[{i + 1}] meets I_{other} at {clash}",
            })
    return errors


def validate_template(template: Template, n: int, model: Model | str = Model.ASYMMETRIC) -> TemplateValidation:
    """
    Check the template conditions for dimension n; never raises.

    Reports out-of-range indices, empty sets, self-loops, overlapping sets
    within a family, S_plus sets meeting I_minus (and S_minus meeting
    I_plus), and asymmetry under the symmetric model.
    """
    violations = []
    violations.extend(_check_family(template.plus, template.I_minus, n, '+', '-'))
    violations.extend(_check_family(template.minus, template.I_plus, n, '-', '+'))
    if as_model(model) is Model.SYMMETRIC and not template.is_symmetric:
        violations.append({
            'code': 'not_symmetric',
            'message': 'The symmetric model requires S_plus and S_minus to coincide',
        })
    return TemplateValidation(ok=not violations, violations=tuple(violations))


def require_valid_template(template: Template, n: int, model: Model | str) -> None:
    result = validate_template(template, n, model)
    if not result.ok:
        logger.warning('Rejected template', extra={'n': n, 'violations': len(result.violations)})
        raise InvalidTemplateError(list(result.violations))


def _draw_disjoint(rng: np.random.Generator, owners: Sequence[int], pool: Sequence[int],
                   size: int) -> dict[int, list[int]]:
    available = list(pool)
    sets = {}
    for owner in owners:
        choices = [v for v in available if v != owner]
        k = int(rng.integers(1, size + 1))
        if len(choices) < k:
            raise InvalidParameterError('Dimension too small to draw a random template of this size')
        picked = [int(v) for v in rng.choice(choices, size=k, replace=False)]
        sets[owner] = picked
        available = [v for v in available if v not in picked]
    return sets


def random_template(n: int, size: int, model: Model | str, rng: np.random.Generator,
                    n_prime: Optional[int] = None) -> Template:
    """
    A random non-degenerate template of size at most ``size``.

    With ``n_prime`` the support lies in range(n_prime); under the symmetric
    model the two families coincide.
    """
    if size < 1:
        raise InvalidParameterError('Template size must be at least 1', details={'size': size})
    universe = list(range(n if n_prime is None else n_prime))
    if as_model(model) is Model.SYMMETRIC:
        count = int(rng.integers(1, size + 1))
        owners = sorted(int(v) for v in rng.choice(universe, size=count, replace=False))
        sets = _draw_disjoint(rng, owners, [v for v in universe if v not in owners], size)
        template = Template.from_sets(sets, sets)
    else:
        while True:
            a, b = (int(v) for v in rng.integers(0, size + 1, size=2))
            if a + b:
                break
        i_plus = sorted(int(v) for v in rng.choice(universe, size=a, replace=False))
        i_minus = sorted(int(v) for v in rng.choice(universe, size=b, replace=False))
        s_plus = _draw_disjoint(rng, i_plus, [v for v in universe if v not in i_minus], size)
        s_minus = _draw_disjoint(rng, i_minus, [v for v in universe if v not in i_plus], size)
        template = Template.from_sets(s_plus, s_minus)
    require_valid_template(template, n, model)
    return template
