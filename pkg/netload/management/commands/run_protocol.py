import json
from contextlib import contextmanager
from pathlib import Path

from netload import config, metrics, pipeline, regression, simulator
from netload.exceptions import InvalidConfig, NetloadError
from netload.management.base import NetloadCommand, as_command_error, positive_int

SUMMARY_TABLE = 'summary.txt'
SUMMARY_JSON = 'summary.json'


@contextmanager
def stage(name):
    try:
        yield
    except NetloadError as exc:
        raise as_command_error(exc, stage=name) from exc


class Command(NetloadCommand):
    help = ('Run the whole protocol per workload: profile the grid, fit, profile unseen '
            'configurations, evaluate, and write every intermediate artifact')

    def add_arguments(self, parser):
        defaults = self.defaults()
        self.add_protocol_arguments(parser, multiple_workloads=True)
        parser.add_argument('--degree', type=positive_int, default=defaults['DEGREE'])
        parser.add_argument('--test-size', type=positive_int, default=defaults['TEST_SIZE'])
        parser.add_argument('--test-range', default=None, help='LO:HI box for unseen configurations')
        parser.add_argument('--out', default='protocol-output', help='Artifact directory')

    def workloads(self, options):
        specs = options['workload'] or [self.defaults()['WORKLOAD']]
        if 'all' in specs:
            specs = list(simulator.WORKLOAD_PRESETS)
        workloads = [config.load_workload(spec) for spec in specs]
        if options['noise'] is not None:
            workloads = [simulator.with_noise(w, options['noise']) for w in workloads]
        names = [w.name for w in workloads]
        if len(set(names)) != len(names):
            raise InvalidConfig(f"workload names must be unique, got {names}")
        return workloads

    def run(self, writer, **options):
        out = Path(options['out'])
        with stage('configure'):
            values = config.parse_values(options['grid'])
            test_range = config.parse_range(options['test_range']) if options['test_range'] else None
            cluster = config.load_cluster(options['cluster'])
            workloads = self.workloads(options)

        reports = {}
        for workload in workloads:
            reports[workload.name] = self.run_workload(writer, out / workload.name, cluster, workload,
                                                       values, test_range, options)

        summary = {
            name: {k: v for k, v in report.to_dict().items() if k != 'residuals'}
            for name, report in reports.items()
        }
        with stage('summary'):
            table = metrics.render_table(reports)
            writer.write(out / SUMMARY_TABLE, table)
            writer.write(out / SUMMARY_JSON, json.dumps(summary, indent=2) + '\n')
        self.stdout.write(table)
        self.stdout.write(self.style.SUCCESS(f"Wrote protocol artifacts to {out}"))

    def run_workload(self, writer, out, cluster, workload, values, test_range, options):
        seed, reps, workers = options['seed'], options['reps'], options['workers']
        self.stdout.write(self.style.NOTICE(f"== {workload.name}"))

        with stage('profile'):
            dataset, records = pipeline.profile_grid(cluster, workload, values, values, reps, seed,
                                                     max_workers=workers)
            pipeline.write_measurements(writer, out / 'train.csv', records, dataset)
            self.stdout.write(f"  profiled {len(dataset)} configurations from {len(records)} runs")

        with stage('fit'):
            model, fitted_on = pipeline.fit_measurements(out / 'train.csv', options['degree'])
            writer.write(out / 'model.json', regression.save_model(model, workload=fitted_on.meta))
            self.stdout.write(f"  fitted {len(model.coefficients)} coefficients "
                              f"(condition {model.fit_meta.condition_number:.3g})")

        with stage('profile-unseen'):
            test, test_records = pipeline.profile_unseen(
                cluster, workload, values, values, options['test_size'], test_range, reps, seed,
                max_workers=workers,
            )
            pipeline.write_measurements(writer, out / 'test.csv', test_records, test)

        with stage('evaluate'):
            report = pipeline.evaluate_measurements(pipeline.load_model_file(out / 'model.json'),
                                                    out / 'test.csv')
            pipeline.write_report(writer, out, report, workload.name)
            self.stdout.write(f"  R^2={report.r_squared:.3f} PRED(25)={report.pred25:.2f} "
                              f"MAPE={report.mape:.2f}%")
        return report
