"""Value types shared by the regression, simulation and ingest layers.

All of them are frozen dataclasses validated on construction, so a value that
exists is a valid one.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

from .exceptions import (
    DuplicateConfiguration,
    EmptyInput,
    InconsistentDimension,
    InvalidConfig,
)


def _as_count(value, what):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        if isinstance(value, numbers.Real) and float(value).is_integer():
            value = int(value)
        else:
            raise InvalidConfig(f"{what} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class ParameterVector:
    """Configuration parameter values of one experiment (maps, reduces, ...)."""
    values: tuple

    def __post_init__(self):
        values = tuple(_as_count(v, 'parameter value') for v in self.values)
        if not values:
            raise InvalidConfig('a parameter vector needs at least one value')
        if any(v < 1 for v in values):
            raise InvalidConfig(f"parameter values must be >= 1, got {values}")
        object.__setattr__(self, 'values', values)

    @property
    def n(self):
        return len(self.values)

    @property
    def maps(self):
        return self.values[0]

    @property
    def reduces(self):
        return self.values[1]

    def __iter__(self):
        return iter(self.values)

    def __str__(self):
        return '(' + ', '.join(str(v) for v in self.values) + ')'


@dataclass(frozen=True)
class Observation:
    config: ParameterVector
    load: float

    def __post_init__(self):
        load = float(self.load)
        if not math.isfinite(load) or load < 0:
            raise InvalidConfig(f"load must be a finite non-negative number, got {self.load!r}")
        object.__setattr__(self, 'load', load)


@dataclass(frozen=True)
class ProfileDataset:
    """Averaged training or test data: one observation per configuration."""
    observations: tuple
    input_bytes: int
    meta: str = ''

    def __post_init__(self):
        observations = tuple(self.observations)
        if not observations:
            raise EmptyInput('a profile dataset needs at least one observation')
        dims = {o.config.n for o in observations}
        if len(dims) > 1:
            raise InconsistentDimension(f"observations mix parameter counts {sorted(dims)}")
        seen = set()
        for o in observations:
            if o.config in seen:
                raise DuplicateConfiguration(
                    f"configuration {o.config} appears twice; average repeated runs first"
                )
            seen.add(o.config)
        object.__setattr__(self, 'observations', observations)

    @property
    def num_params(self):
        return self.observations[0].config.n

    @property
    def configs(self):
        return [o.config for o in self.observations]

    @property
    def loads(self):
        return [o.load for o in self.observations]

    def __len__(self):
        return len(self.observations)


@dataclass(frozen=True)
class RunRecord:
    """Shuffle load measured (or simulated) for one run of one configuration."""
    num_maps: int
    num_reduces: int
    run_index: int
    input_bytes: int
    shuffle_bytes: float
    app: str = ''

    def __post_init__(self):
        for name in ('num_maps', 'num_reduces', 'run_index', 'input_bytes'):
            value = _as_count(getattr(self, name), name)
            if value < 1:
                raise InvalidConfig(f"{name} must be >= 1, got {value}")
            object.__setattr__(self, name, value)
        load = float(self.shuffle_bytes)
        if not math.isfinite(load) or load < 0:
            raise InvalidConfig(f"shuffle_bytes must be finite and >= 0, got {self.shuffle_bytes!r}")
        object.__setattr__(self, 'shuffle_bytes', load)

    @property
    def config(self):
        return ParameterVector((self.num_maps, self.num_reduces))
