"""Turning external measurements into profile datasets.

Two inputs are understood: the measurement CSV written by the ``profile``
command (or by any external harness using the same header), and a
whitespace-aligned network device report in the shape sysstat prints::

    # timestamp interface rxkB/s txkB/s
    0    eth0  100.0  50.0
    10   eth0  120.0  40.0

Rates are kilobytes per second with 1 kB = 1000 bytes. The load of one job is
the trapezoidal integral of rx + tx over a caller-supplied shuffle window, so
one transfer between two profiled nodes is counted at both ends.
"""
from __future__ import annotations

import csv
import io
import logging
import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .domain import Observation, ProfileDataset, RunRecord, ParameterVector
from .exceptions import (
    EmptyInput,
    InvalidConfig,
    MissingHeader,
    MixedInputSize,
    NegativeValue,
    NonMonotonicTimestamps,
    ParseError,
    TooFewSamples,
    UnknownInterface,
    WindowOutOfRange,
)

logger = logging.getLogger(__name__)

MEASUREMENT_HEADER = ('app', 'maps', 'reduces', 'input_bytes', 'run', 'shuffle_bytes')
AVERAGED_HEADER = ('maps', 'reduces', 'input_bytes', 'runs', 'load')
KILOBYTE = 1000


# ---------------- MEASUREMENT CSV ----------------

def _int_cell(text, line, column):
    try:
        value = int(text.strip())
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}", line=line, field=column) from None
    if value < 0:
        raise NegativeValue(f"value {value} is negative", line=line, field=column)
    if value == 0:
        raise ParseError('value must be >= 1', line=line, field=column)
    return value


def _float_cell(text, line, column):
    try:
        value = float(text.strip())
    except ValueError:
        raise ParseError(f"expected a number, got {text!r}", line=line, field=column) from None
    if not math.isfinite(value):
        raise ParseError(f"expected a finite number, got {text!r}", line=line, field=column)
    if value < 0:
        raise NegativeValue(f"value {value} is negative", line=line, field=column)
    return value


def parse_measurements_csv(text):
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != MEASUREMENT_HEADER:
        raise MissingHeader(f"expected header {','.join(MEASUREMENT_HEADER)}", line=1)

    records = []
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < len(MEASUREMENT_HEADER):
            raise ParseError(f"missing column, got {len(row)} of {len(MEASUREMENT_HEADER)}",
                             line=line, field=MEASUREMENT_HEADER[len(row)])
        if len(row) > len(MEASUREMENT_HEADER):
            raise ParseError(f"unexpected column, got {len(row)} of {len(MEASUREMENT_HEADER)}",
                             line=line, field=f"column {len(MEASUREMENT_HEADER) + 1}")
        cells = dict(zip(MEASUREMENT_HEADER, row))
        records.append(RunRecord(
            app=cells['app'].strip(),
            num_maps=_int_cell(cells['maps'], line, 'maps'),
            num_reduces=_int_cell(cells['reduces'], line, 'reduces'),
            input_bytes=_int_cell(cells['input_bytes'], line, 'input_bytes'),
            run_index=_int_cell(cells['run'], line, 'run'),
            shuffle_bytes=_float_cell(cells['shuffle_bytes'], line, 'shuffle_bytes'),
        ))
    logger.debug("parsed %d measurement rows", len(records))
    return records


def _write(header, rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


def serialize_measurements_csv(records):
    # repr() of a float reads back to the same double
    return _write(MEASUREMENT_HEADER, (
        (r.app, r.num_maps, r.num_reduces, r.input_bytes, r.run_index, repr(r.shuffle_bytes))
        for r in records
    ))


def serialize_averaged_csv(dataset, run_counts=None):
    run_counts = run_counts or {}
    return _write(AVERAGED_HEADER, (
        (*o.config.values, dataset.input_bytes, run_counts.get(o.config, 1), repr(o.load))
        for o in dataset.observations
    ))


# ---------------- AGGREGATION ----------------

def aggregate_runs(records, meta=''):
    """Average repeated runs into one observation per (maps, reduces)."""
    records = list(records)
    if not records:
        raise EmptyInput('no run records to aggregate')
    sizes = {r.input_bytes for r in records}
    if len(sizes) > 1:
        raise MixedInputSize(
            f"records mix input sizes {sorted(sizes)}; the model assumes a fixed input size"
        )
    groups = defaultdict(list)
    for r in records:
        groups[(r.num_maps, r.num_reduces)].append(r.shuffle_bytes)

    observations = []
    for key in sorted(groups):
        # sort the group so the mean does not depend on record order
        loads = sorted(groups[key])
        observations.append(Observation(ParameterVector(key), math.fsum(loads) / len(loads)))
    apps = sorted({r.app for r in records if r.app})
    return ProfileDataset(
        observations=tuple(observations),
        input_bytes=sizes.pop(),
        meta=meta or ','.join(apps),
    )


def run_counts(records):
    counts = defaultdict(int)
    for r in records:
        counts[r.config] += 1
    return dict(counts)


# ---------------- NETWORK RATE LOGS ----------------

@dataclass(frozen=True)
class NetRateSample:
    timestamp: float
    rx_rate: float
    tx_rate: float
    interface: str

    @property
    def total_rate(self):
        return self.rx_rate + self.tx_rate


@dataclass(frozen=True)
class ShuffleWindow:
    t_start: float
    t_end: float

    def __post_init__(self):
        if not self.t_end > self.t_start:
            raise InvalidConfig(f"window end {self.t_end} must be after start {self.t_start}")


def parse_net_rate_log(text, interface):
    samples = []
    seen_interfaces = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ParseError(f"expected 4 columns (timestamp interface rxkB/s txkB/s), got {len(parts)}",
                             line=line_no)
        stamp, iface, rx, tx = parts
        seen_interfaces.add(iface)
        if iface != interface:
            continue
        try:
            timestamp = float(stamp)
        except ValueError:
            raise ParseError(f"bad timestamp {stamp!r}", line=line_no, field='timestamp') from None
        rates = []
        for column, cell in (('rxkB/s', rx), ('txkB/s', tx)):
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(f"bad rate {cell!r}", line=line_no, field=column) from None
            if value < 0:
                raise NegativeValue(f"rate {value} is negative", line=line_no, field=column)
            rates.append(value * KILOBYTE)
        if samples and timestamp <= samples[-1].timestamp:
            raise NonMonotonicTimestamps(
                f"timestamp {timestamp} does not follow {samples[-1].timestamp}",
                line=line_no, field='timestamp',
            )
        samples.append(NetRateSample(timestamp=timestamp, rx_rate=rates[0], tx_rate=rates[1],
                                     interface=iface))
    if not samples:
        known = ', '.join(sorted(seen_interfaces)) or 'none'
        raise UnknownInterface(f"no samples for interface {interface!r} (found: {known})")
    return samples


def integrate_window(samples, window):
    """Bytes moved during ``window``: trapezoid rule over rx + tx rates."""
    if len(samples) < 2:
        raise TooFewSamples(f"need at least 2 samples, got {len(samples)}")
    t = np.array([s.timestamp for s in samples], dtype=float)
    rate = np.array([s.total_rate for s in samples], dtype=float)
    if window.t_start < t[0] or window.t_end > t[-1]:
        raise WindowOutOfRange(
            f"window [{window.t_start}, {window.t_end}] is outside the samples [{t[0]}, {t[-1]}]"
        )
    inside = (t > window.t_start) & (t < window.t_end)
    knots = np.concatenate([[window.t_start], t[inside], [window.t_end]])
    values = np.interp(knots, t, rate)
    return float(np.sum(0.5 * (values[1:] + values[:-1]) * np.diff(knots)))
