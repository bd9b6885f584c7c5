from django.conf import settings

from netload import pipeline, regression
from netload.management.base import NetloadCommand, positive_int
from netload.models import ShuffleModel


class Command(NetloadCommand):
    help = 'Fit the polynomial shuffle-load model to a measurement CSV'

    def add_arguments(self, parser):
        parser.add_argument('measurements', help='Measurement CSV (app,maps,reduces,input_bytes,run,shuffle_bytes)')
        parser.add_argument('--degree', type=positive_int, default=settings.NETLOAD['DEGREE'])
        parser.add_argument('--out', default='model.json', help='Model document path')
        parser.add_argument('--no-standardize', action='store_true',
                            help='Factor the raw design matrix instead of standardized columns')
        parser.add_argument('--name', default=None,
                            help='Also register the model in the database under this name')

    def run(self, writer, **options):
        model, dataset = pipeline.fit_measurements(
            options['measurements'], options['degree'], standardize=not options['no_standardize'],
        )
        writer.write(options['out'], regression.save_model(model, workload=dataset.meta))

        self.stdout.write(f"Fitted degree-{model.degree} model on {len(dataset)} configurations")
        labels = ['alpha_0'] + [
            f"alpha_{name}^{power}" for name in model.param_names for power in range(1, model.degree + 1)
        ]
        for label, value in zip(labels, model.coefficients):
            self.stdout.write(f"  {label:<20} {value!r}")
        meta = model.fit_meta
        self.stdout.write(f"  rss={meta.rss!r} condition={meta.condition_number:.6g} "
                          f"standardized={meta.standardized}")

        if options['name']:
            ShuffleModel.register(options['name'], model, workload=dataset.meta)
            self.stdout.write(self.style.NOTICE(f"Registered model {options['name']!r}"))
        self.stdout.write(self.style.SUCCESS(f"Wrote {options['out']}"))
