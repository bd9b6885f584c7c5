"""Seeded simulator of shuffle-phase network load on a MapReduce cluster.

One run of a job with ``m`` map tasks and ``r`` reduce tasks:

1. map and reduce tasks are placed on nodes (round-robin or random);
2. the intermediate data ``D = input_bytes * map_output_ratio`` is split evenly
   across the maps;
3. every map output is partitioned across the reducers with Zipf weights
   ``w_j ~ j ** -s`` (``s = 0`` is uniform);
4. every (map, reduce) pair on different nodes moves its partition plus a fixed
   per-connection overhead, and pairs crossing racks are weighted;
5. the total is multiplied by ``max(0, 1 + sigma * g)`` with ``g`` a standard
   normal draw.

Randomness comes only from the seed handed to each run. Grids derive run
seeds from ``(base_seed, m, r, run_index)`` so results do not depend on
execution order.

Byte counts are floats. Without overhead, local plus remote bytes equals ``D``
to within a few ulps of ``D``, not bit for bit: the partition weights and the
per-pair products are rounded before they are summed.
"""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .domain import ParameterVector, RunRecord
from .exceptions import ExhaustedSpace, InvalidConfig
from .ingest import aggregate_runs

logger = logging.getLogger(__name__)

ROUND_ROBIN = 'round-robin'
RANDOM = 'random'
PLACEMENTS = (ROUND_ROBIN, RANDOM)

KIB = 1024
MIB = 1024 * KIB
DEFAULT_PAIR_OVERHEAD = 256 * KIB
ENUMERATION_LIMIT = 100_000
DEFAULT_NOISE_SIGMA = 0.05

# stream tags for seeds that are not per-run
SAMPLER_STREAM = 1
UNSEEN_RUN_STREAM = 2


def derive_seed(base_seed, *coords):
    """Mix a base seed with integer coordinates into an independent 64-bit seed."""
    if base_seed < 0 or any(c < 0 for c in coords):
        raise InvalidConfig('seeds and seed coordinates must be non-negative')
    sequence = np.random.SeedSequence([int(base_seed), *(int(c) for c in coords)])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class ClusterSpec:
    num_nodes: int
    placement: str = ROUND_ROBIN
    rack_map: dict | None = None
    cross_rack_weight: float = 1.0

    def __post_init__(self):
        if self.num_nodes < 1:
            raise InvalidConfig(f"num_nodes must be >= 1, got {self.num_nodes}")
        if self.placement not in PLACEMENTS:
            raise InvalidConfig(f"placement must be one of {PLACEMENTS}, got {self.placement!r}")
        if self.cross_rack_weight < 1:
            raise InvalidConfig(f"cross_rack_weight must be >= 1, got {self.cross_rack_weight}")
        if self.rack_map is not None:
            missing = [n for n in range(self.num_nodes) if n not in self.rack_map]
            if missing:
                raise InvalidConfig(f"rack_map does not cover nodes {missing}")

    def racks(self):
        if self.rack_map is None:
            return None
        labels = {}
        return np.array([labels.setdefault(self.rack_map[n], len(labels))
                         for n in range(self.num_nodes)])


@dataclass(frozen=True)
class WorkloadProfile:
    name: str
    input_bytes: int
    map_output_ratio: float = 1.0
    partition_skew: float = 0.0
    per_pair_overhead_bytes: float = DEFAULT_PAIR_OVERHEAD
    noise_sigma: float = DEFAULT_NOISE_SIGMA

    def __post_init__(self):
        if self.input_bytes <= 0:
            raise InvalidConfig(f"input_bytes must be > 0, got {self.input_bytes}")
        if self.map_output_ratio <= 0:
            raise InvalidConfig(f"map_output_ratio must be > 0, got {self.map_output_ratio}")
        if self.partition_skew < 0:
            raise InvalidConfig(f"partition_skew must be >= 0, got {self.partition_skew}")
        if self.per_pair_overhead_bytes < 0:
            raise InvalidConfig('per_pair_overhead_bytes must be >= 0')
        if not 0 <= self.noise_sigma < 1:
            raise InvalidConfig(f"noise_sigma must be in [0, 1), got {self.noise_sigma}")

    @property
    def intermediate_bytes(self):
        return self.input_bytes * self.map_output_ratio


# Synthetic stand-ins for WordCount, TeraSort and Exim log parsing. They are not
# calibrated against any real cluster. Input is sized so that per-connection
# overhead is commensurate with data volume at 4..32 tasks.
WORKLOAD_PRESETS = {
    'wordcount-like': WorkloadProfile(
        name='wordcount-like', input_bytes=256 * MIB, map_output_ratio=1.0, partition_skew=0.0,
    ),
    'terasort-like': WorkloadProfile(
        name='terasort-like', input_bytes=256 * MIB, map_output_ratio=1.0, partition_skew=0.0,
        per_pair_overhead_bytes=4 * DEFAULT_PAIR_OVERHEAD,
    ),
    'exim-like': WorkloadProfile(
        name='exim-like', input_bytes=256 * MIB, map_output_ratio=0.3, partition_skew=0.5,
    ),
}


def preset(name):
    try:
        return WORKLOAD_PRESETS[name]
    except KeyError:
        raise InvalidConfig(
            f"unknown workload preset {name!r}; choose from {', '.join(WORKLOAD_PRESETS)}"
        ) from None


def partition_weights(num_reduces, skew):
    ranks = np.arange(1, num_reduces + 1, dtype=float)
    weights = ranks ** (-float(skew))
    return weights / weights.sum()


def place_tasks(cluster, count, rng):
    if cluster.placement == ROUND_ROBIN:
        return np.arange(count) % cluster.num_nodes
    return rng.integers(0, cluster.num_nodes, size=count)


@dataclass(frozen=True)
class ShuffleTraffic:
    """Noise-free breakdown of one run's intermediate data movement."""
    remote_bytes: float
    local_bytes: float
    overhead_bytes: float
    cross_rack_pairs: int = 0
    remote_pairs: int = 0
    map_nodes: tuple = field(default=(), repr=False)
    reduce_nodes: tuple = field(default=(), repr=False)


def shuffle_traffic(cluster, workload, config, rng):
    """Place tasks with ``rng`` and account bytes per (map, reduce) pair."""
    if config.n != 2:
        raise InvalidConfig(f"expected (maps, reduces), got {config}")
    m, r = config.maps, config.reduces

    map_nodes = place_tasks(cluster, m, rng)
    reduce_nodes = place_tasks(cluster, r, rng)

    per_map = workload.intermediate_bytes / m
    pair_bytes = np.broadcast_to(per_map * partition_weights(r, workload.partition_skew), (m, r))
    remote = map_nodes[:, None] != reduce_nodes[None, :]

    weight = np.ones((m, r))
    cross_rack_pairs = 0
    racks = cluster.racks()
    if racks is not None:
        cross = racks[map_nodes][:, None] != racks[reduce_nodes][None, :]
        weight[cross] = cluster.cross_rack_weight
        cross_rack_pairs = int(np.count_nonzero(cross))

    overhead = workload.per_pair_overhead_bytes
    remote_bytes = float(np.sum(((pair_bytes + overhead) * weight)[remote]))
    return ShuffleTraffic(
        remote_bytes=remote_bytes,
        local_bytes=float(np.sum(pair_bytes[~remote])),
        overhead_bytes=float(np.sum((overhead * weight)[remote])),
        cross_rack_pairs=cross_rack_pairs,
        remote_pairs=int(np.count_nonzero(remote)),
        map_nodes=tuple(map_nodes.tolist()),
        reduce_nodes=tuple(reduce_nodes.tolist()),
    )


def simulate_shuffle(cluster, workload, config, seed, run_index=1):
    """One simulated run; identical arguments give an identical record."""
    if not isinstance(config, ParameterVector):
        config = ParameterVector(tuple(config))
    if config.n != 2 or config.maps < 1 or config.reduces < 1:
        raise InvalidConfig(f"a run needs >= 1 map and >= 1 reduce task, got {config}")
    rng = np.random.default_rng(seed)
    traffic = shuffle_traffic(cluster, workload, config, rng)
    noise = max(0.0, 1.0 + workload.noise_sigma * rng.standard_normal())
    shuffle_bytes = traffic.remote_bytes * noise
    logger.debug("run %s #%d: remote=%.0f local=%.0f noise=%.4f",
                 config, run_index, traffic.remote_bytes, traffic.local_bytes, noise)
    return RunRecord(
        app=workload.name,
        num_maps=config.maps,
        num_reduces=config.reduces,
        input_bytes=workload.input_bytes,
        run_index=run_index,
        shuffle_bytes=shuffle_bytes,
    )


def _check_values(values, what):
    values = list(values)
    if not values:
        raise InvalidConfig(f"{what} must not be empty")
    if len(set(values)) != len(values):
        raise InvalidConfig(f"{what} must be distinct, got {values}")
    if any(v < 1 for v in values):
        raise InvalidConfig(f"{what} must be >= 1, got {values}")
    return values


def run_configs(cluster, workload, configs, repetitions, seed, max_workers=1):
    """Simulate ``repetitions`` runs of every configuration.

    Records come back sorted by (maps, reduces, run_index) whatever the
    number of workers.
    """
    if repetitions < 1:
        raise InvalidConfig(f"repetitions must be >= 1, got {repetitions}")
    jobs = [
        (config, run)
        for config in configs
        for run in range(1, repetitions + 1)
    ]

    def one(job):
        config, run = job
        run_seed = derive_seed(seed, config.maps, config.reduces, run)
        return simulate_shuffle(cluster, workload, config, run_seed, run_index=run)

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            records = list(pool.map(one, jobs))
    else:
        records = [one(job) for job in jobs]
    records.sort(key=lambda rec: (rec.num_maps, rec.num_reduces, rec.run_index))
    return records


def run_profile_grid(cluster, workload, map_values, reduce_values, repetitions, seed, max_workers=1):
    """Profile every (maps, reduces) in the cross product and average repeats."""
    map_values = _check_values(map_values, 'map values')
    reduce_values = _check_values(reduce_values, 'reduce values')
    configs = [ParameterVector((m, r)) for m, r in itertools.product(map_values, reduce_values)]
    records = run_configs(cluster, workload, configs, repetitions, seed, max_workers=max_workers)
    dataset = aggregate_runs(records, meta=workload.name)
    logger.info("profiled %s: %d configurations x %d runs", workload.name, len(configs), repetitions)
    return dataset, records


def sample_unseen_configs(n, lo, hi, exclude=(), seed=0, num_params=2):
    """``n`` distinct integer configurations from ``[lo, hi] ** num_params`` minus ``exclude``.

    Boxes of up to ``ENUMERATION_LIMIT`` points are enumerated and sampled
    without replacement. Larger boxes draw points one at a time and skip
    repeats and excluded points, so cost follows ``n`` instead of the box.
    """
    if n < 1:
        raise InvalidConfig(f"n must be >= 1, got {n}")
    if lo < 1 or hi < lo:
        raise InvalidConfig(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    excluded = {ParameterVector(tuple(c)) for c in exclude}
    rng = np.random.default_rng(seed)
    box = (hi - lo + 1) ** num_params
    if box > ENUMERATION_LIMIT:
        return _reject_sample(rng, n, lo, hi, excluded, box, num_params)
    candidates = [
        values for values in itertools.product(range(lo, hi + 1), repeat=num_params)
        if ParameterVector(values) not in excluded
    ]
    if len(candidates) < n:
        raise ExhaustedSpace(
            f"only {len(candidates)} configurations remain in [{lo}, {hi}]^{num_params}, {n} requested"
        )
    picks = rng.choice(len(candidates), size=n, replace=False)
    return [ParameterVector(candidates[i]) for i in picks]


def _reject_sample(rng, n, lo, hi, excluded, box, num_params):
    inside = sum(1 for c in excluded if c.n == num_params and all(lo <= v <= hi for v in c))
    if box - inside < n:
        raise ExhaustedSpace(
            f"only {box - inside} configurations remain in [{lo}, {hi}]^{num_params}, {n} requested"
        )
    picked, seen = [], set(excluded)
    while len(picked) < n:
        config = ParameterVector(tuple(rng.integers(lo, hi + 1, size=num_params).tolist()))
        if config in seen:
            continue
        seen.add(config)
        picked.append(config)
    return picked


def with_noise(workload, noise_sigma):
    return replace(workload, noise_sigma=noise_sigma)
