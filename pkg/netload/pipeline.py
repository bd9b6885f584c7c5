"""Stages of the profile -> fit -> predict -> evaluate protocol and their artifacts.

Every management command is a thin wrapper over these functions, so running
the commands one by one produces the same files as ``run_protocol``.
"""
import json
import logging
import os
import tempfile
from pathlib import Path

from . import ingest, metrics, regression, simulator
from .domain import ParameterVector
from .exceptions import ArtifactIOError, ParseError

logger = logging.getLogger(__name__)

REPORT_JSON = 'report.json'
REPORT_TABLE = 'report.txt'
PLOT_CSV = 'prediction.csv'
PLOT_DAT = 'prediction.dat'


class ArtifactWriter:
    """Writes files atomically and remembers them so a failed command can undo its output."""

    def __init__(self):
        self.written = []

    def write(self, path, text):
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with tempfile.NamedTemporaryFile('w', encoding='utf-8', newline='', dir=path.parent,
                                             prefix=f".{path.name}.", delete=False) as tmp:
                tmp.write(text)
            os.replace(tmp.name, path)
        except OSError as exc:
            raise ArtifactIOError(f"cannot write {path}: {exc.strerror or exc}", path=path) from exc
        self.written.append(path)
        logger.debug("wrote %s (%d bytes)", path, len(text))
        return path

    def rollback(self):
        for path in reversed(self.written):
            try:
                path.unlink()
            except FileNotFoundError:
                pass
        self.written.clear()


def read_text(path):
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise ArtifactIOError(f"cannot read {path}: {exc.strerror or exc}", path=path) from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8 text (byte {exc.start}: {exc.reason})") from exc


def averaged_path(path):
    path = Path(path)
    return path.with_name(f"{path.stem}.averaged{path.suffix or '.csv'}")


# ---------------- PROFILE ----------------

def grid_configs(map_values, reduce_values):
    return [ParameterVector((m, r)) for m in map_values for r in reduce_values]


def profile_grid(cluster, workload, map_values, reduce_values, repetitions, seed, max_workers=1):
    return simulator.run_profile_grid(cluster, workload, map_values, reduce_values,
                                      repetitions, seed, max_workers=max_workers)


def profile_unseen(cluster, workload, map_values, reduce_values, test_size, test_range,
                   repetitions, seed, max_workers=1):
    """Simulate ``test_size`` random configurations that are not on the training grid."""
    lo, hi = test_range or (min(map_values + reduce_values), max(map_values + reduce_values))
    configs = simulator.sample_unseen_configs(
        test_size, lo, hi,
        exclude=grid_configs(map_values, reduce_values),
        seed=simulator.derive_seed(seed, simulator.SAMPLER_STREAM),
    )
    records = simulator.run_configs(
        cluster, workload, configs, repetitions,
        seed=simulator.derive_seed(seed, simulator.UNSEEN_RUN_STREAM),
        max_workers=max_workers,
    )
    return ingest.aggregate_runs(records, meta=workload.name), records


def write_measurements(writer, path, records, dataset):
    writer.write(path, ingest.serialize_measurements_csv(records))
    writer.write(averaged_path(path),
                 ingest.serialize_averaged_csv(dataset, ingest.run_counts(records)))


# ---------------- FIT / EVALUATE ----------------

def load_dataset(path):
    records = ingest.parse_measurements_csv(read_text(path))
    return ingest.aggregate_runs(records)


def fit_measurements(path, degree, standardize=True):
    dataset = load_dataset(path)
    return regression.fit(dataset, degree, standardize=standardize), dataset


def load_model_file(path):
    return regression.load_model(read_text(path))


def evaluate_measurements(model, path):
    return metrics.evaluate(model, load_dataset(path))


def report_document(report, application=''):
    return json.dumps({'application': application, **report.to_dict()}, indent=2) + '\n'


def plot_csv(report):
    lines = ['index,actual,predicted']
    lines += [f"{i},{r.actual!r},{r.predicted!r}" for i, r in enumerate(report.residuals, start=1)]
    return '\n'.join(lines) + '\n'


def plot_dat(report, application=''):
    """Whitespace columns for ``plot 'prediction.dat' using 1:2, '' using 1:3``."""
    lines = [f"# {application or 'shuffle load'}: actual vs predicted per unseen experiment",
             '# index actual predicted relative_error']
    lines += [f"{i} {r.actual!r} {r.predicted!r} {r.relative_error!r}"
              for i, r in enumerate(report.residuals, start=1)]
    return '\n'.join(lines) + '\n'


def write_report(writer, out_dir, report, application=''):
    out_dir = Path(out_dir)
    writer.write(out_dir / REPORT_JSON, report_document(report, application))
    writer.write(out_dir / REPORT_TABLE, metrics.render_table({application or 'application': report}))
    writer.write(out_dir / PLOT_CSV, plot_csv(report))
    writer.write(out_dir / PLOT_DAT, plot_dat(report, application))
