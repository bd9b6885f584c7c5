from django.template.defaultfilters import filesizeformat

from netload import config, pipeline, simulator
from netload.management.base import NetloadCommand, positive_int


class Command(NetloadCommand):
    help = 'Simulate the profiling grid (or unseen test configurations) and write measurement CSVs'

    def add_arguments(self, parser):
        self.add_protocol_arguments(parser)
        parser.add_argument('--test-size', type=positive_int, default=None,
                            help='Simulate this many random configurations off the grid instead of the grid')
        parser.add_argument('--test-range', default=None,
                            help='LO:HI box for --test-size (default: grid min:max)')
        parser.add_argument('--out', default='measurements.csv', help='Raw measurement CSV path')

    def run(self, writer, **options):
        values = config.parse_values(options['grid'])
        cluster = config.load_cluster(options['cluster'])
        workload = config.load_workload(options['workload'])
        if options['noise'] is not None:
            workload = simulator.with_noise(workload, options['noise'])

        if options['test_size']:
            test_range = config.parse_range(options['test_range']) if options['test_range'] else None
            dataset, records = pipeline.profile_unseen(
                cluster, workload, values, values, options['test_size'], test_range,
                options['reps'], options['seed'], max_workers=options['workers'],
            )
            label = f"{len(dataset)} unseen configurations"
        else:
            dataset, records = pipeline.profile_grid(
                cluster, workload, values, values, options['reps'], options['seed'],
                max_workers=options['workers'],
            )
            label = f"{len(values)}x{len(values)} grid"

        pipeline.write_measurements(writer, options['out'], records, dataset)

        loads = dataset.loads
        self.stdout.write(f"Profiled {workload.name} on {cluster.num_nodes} nodes: {label}, "
                          f"{options['reps']} runs each, {len(records)} records")
        self.stdout.write(f"  mean shuffle load per configuration: "
                          f"min {filesizeformat(min(loads))}, max {filesizeformat(max(loads))}")
        self.stdout.write(self.style.SUCCESS(
            f"Wrote {options['out']} and {pipeline.averaged_path(options['out'])}"
        ))
