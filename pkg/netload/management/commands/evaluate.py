from netload import metrics, pipeline
from netload.management.base import NetloadCommand


class Command(NetloadCommand):
    help = 'Score a model against test measurements and write the report and plot data'

    def add_arguments(self, parser):
        parser.add_argument('model', help='Model document path')
        parser.add_argument('measurements', help='Test measurement CSV')
        parser.add_argument('--out', default='report', help='Report directory')
        parser.add_argument('--name', default='', help='Application label used in the report')

    def run(self, writer, **options):
        model = pipeline.load_model_file(options['model'])
        report = pipeline.evaluate_measurements(model, options['measurements'])
        pipeline.write_report(writer, options['out'], report, options['name'])
        self.stdout.write(metrics.render_table({options['name'] or 'application': report}))
        self.stdout.write(self.style.SUCCESS(f"Wrote report for {report.m} experiments to {options['out']}"))
