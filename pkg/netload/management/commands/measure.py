from django.template.defaultfilters import filesizeformat

from netload import ingest, pipeline
from netload.management.base import NetloadCommand


class Command(NetloadCommand):
    help = 'Integrate the shuffle-window traffic of one interface from a net-rate log'

    def add_arguments(self, parser):
        parser.add_argument('log', help='Whitespace log: timestamp interface rxkB/s txkB/s')
        parser.add_argument('--interface', default='eth0')
        parser.add_argument('--start', type=float, required=True, help='Shuffle window start (s)')
        parser.add_argument('--end', type=float, required=True, help='Shuffle window end (s)')

    def run(self, writer, **options):
        samples = ingest.parse_net_rate_log(pipeline.read_text(options['log']), options['interface'])
        window = ingest.ShuffleWindow(options['start'], options['end'])
        total = ingest.integrate_window(samples, window)
        self.stdout.write(f"{options['interface']}: {len(samples)} samples, "
                          f"window [{window.t_start:g}, {window.t_end:g}] s")
        self.stdout.write(f"shuffle load: {total!r} bytes ({filesizeformat(total)})")
