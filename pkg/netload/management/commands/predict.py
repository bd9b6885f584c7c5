from django.template.defaultfilters import filesizeformat

from netload import pipeline, regression
from netload.domain import ParameterVector
from netload.management.base import NetloadCommand, positive_int


class Command(NetloadCommand):
    help = 'Predict the shuffle load of one (maps, reduces) configuration'

    def add_arguments(self, parser):
        parser.add_argument('model', help='Model document path')
        parser.add_argument('maps', type=positive_int)
        parser.add_argument('reduces', type=positive_int)

    def run(self, writer, **options):
        model = pipeline.load_model_file(options['model'])
        load = regression.predict(model, ParameterVector((options['maps'], options['reduces'])))
        self.stdout.write(f"predicted shuffle load for {options['maps']} maps x {options['reduces']} reduces: "
                          f"{load:.17g} bytes ({filesizeformat(load)})")
