"""Loading cluster and workload descriptions from JSON config files.

A workload file is either a full description::

    {"name": "logs", "input_bytes": 1073741824, "map_output_ratio": 0.4}

or a bundled preset with overrides::

    {"preset": "exim-like", "noise_sigma": 0.1}

A cluster file names the node count and, optionally, placement and racks::

    {"num_nodes": 6, "placement": "random",
     "rack_map": {"0": "a", "1": "a", "2": "a", "3": "b", "4": "b", "5": "b"},
     "cross_rack_weight": 2.0}
"""
import json
import logging
from dataclasses import asdict
from pathlib import Path

from django.conf import settings

from .exceptions import ArtifactIOError, InvalidConfig
from .serializers import ClusterSpecSerializer, WorkloadProfileSerializer
from . import simulator

logger = logging.getLogger(__name__)


def _read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding='utf-8'))
    except OSError as exc:
        raise ArtifactIOError(f"cannot read {path}: {exc.strerror or exc}", path=path) from exc
    except UnicodeDecodeError as exc:
        raise InvalidConfig(f"{path} is not UTF-8 text (byte {exc.start}: {exc.reason})") from exc
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def _validated(serializer_class, data, source):
    serializer = serializer_class(data=data)
    if not serializer.is_valid():
        raise InvalidConfig(f"{source}: {dict(serializer.errors)}")
    return serializer.validated_data


def cluster_from_dict(data, source='cluster config'):
    if not isinstance(data, dict):
        raise InvalidConfig(f"{source}: expected a JSON object")
    return simulator.ClusterSpec(**_validated(ClusterSpecSerializer, data, source))


def workload_from_dict(data, source='workload config'):
    if not isinstance(data, dict):
        raise InvalidConfig(f"{source}: expected a JSON object")
    data = dict(data)
    name = data.pop('preset', None)
    if name is not None:
        base = asdict(simulator.preset(name))
        base.update(data)
        data = base
    return simulator.WorkloadProfile(**_validated(WorkloadProfileSerializer, data, source))


def default_cluster():
    defaults = settings.NETLOAD
    return simulator.ClusterSpec(num_nodes=defaults['NUM_NODES'], placement=defaults['PLACEMENT'])


def load_cluster(path=None):
    """Cluster from a JSON file, or the settings default when no path is given."""
    if not path:
        return default_cluster()
    return cluster_from_dict(_read_json(path), source=str(path))


def load_workload(spec):
    """Workload from a preset name or a JSON file path."""
    if spec in simulator.WORKLOAD_PRESETS:
        return simulator.WORKLOAD_PRESETS[spec]
    path = Path(spec)
    if not path.exists():
        return simulator.preset(spec)
    workload = workload_from_dict(_read_json(path), source=str(path))
    logger.debug("loaded workload %s from %s", workload.name, path)
    return workload


def parse_values(text):
    """Grid values from ``"4:32:4"`` (inclusive start:stop:step) or ``"4,8,16"``."""
    text = text.strip()
    try:
        if ':' in text:
            parts = [int(p) for p in text.split(':')]
            if len(parts) == 2:
                parts.append(1)
            start, stop, step = parts
            if step < 1:
                raise ValueError('step must be positive')
            values = list(range(start, stop + 1, step))
        else:
            values = [int(p) for p in text.split(',') if p.strip()]
    except ValueError as exc:
        raise InvalidConfig(f"bad grid specification {text!r} ({exc})") from None
    if not values:
        raise InvalidConfig(f"grid specification {text!r} selects no values")
    if len(set(values)) != len(values) or min(values) < 1:
        raise InvalidConfig(f"grid values must be distinct positive integers, got {values}")
    return values


def parse_range(text):
    """An inclusive ``LO:HI`` integer range."""
    parts = text.split(':')
    try:
        lo, hi = int(parts[0]), int(parts[-1])
    except ValueError:
        raise InvalidConfig(f"bad range {text!r}, expected LO:HI") from None
    if len(parts) > 2 or lo < 1 or hi < lo:
        raise InvalidConfig(f"bad range {text!r}, need LO:HI with 1 <= LO <= HI")
    return lo, hi
