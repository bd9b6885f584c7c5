"""Shared plumbing for the netload management commands."""
import argparse

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from netload.exceptions import ArtifactIOError, NetloadError
from netload.pipeline import ArtifactWriter

# Exit codes. 2 is what argparse already uses for usage errors.
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_IO = 3


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def non_negative_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def as_command_error(exc, stage=None):
    prefix = f"stage '{stage}' failed: " if stage else ''
    if isinstance(exc, ArtifactIOError):
        return CommandError(f"{prefix}{exc}", returncode=EXIT_IO)
    return CommandError(f"{prefix}{type(exc).__name__}: {exc}", returncode=EXIT_DATA)


class NetloadCommand(BaseCommand):
    """Runs ``run(writer, **options)`` and removes every written file if it fails."""

    def defaults(self):
        return settings.NETLOAD

    def add_protocol_arguments(self, parser, multiple_workloads=False):
        defaults = self.defaults()
        if multiple_workloads:
            parser.add_argument('--workload', action='append', default=None,
                                help='Workload preset or JSON file; repeat it, or pass "all" for every preset')
        else:
            parser.add_argument('--workload', default=defaults['WORKLOAD'],
                                help='Workload preset name or JSON workload file')
        parser.add_argument('--cluster', default=None, help='JSON cluster file (default: settings)')
        parser.add_argument('--grid', default=defaults['GRID'],
                            help='Map/reduce values, "start:stop:step" or "a,b,c"')
        parser.add_argument('--reps', type=positive_int, default=defaults['REPETITIONS'],
                            help='Runs per configuration')
        parser.add_argument('--seed', type=non_negative_int, default=defaults['SEED'])
        parser.add_argument('--noise', type=float, default=None,
                            help='Override the workload noise sigma')
        parser.add_argument('--workers', type=positive_int, default=defaults['WORKERS'],
                            help='Threads used to simulate grid cells')

    def run(self, writer, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        writer = ArtifactWriter()
        try:
            self.run(writer, **options)
        except CommandError:
            writer.rollback()
            raise
        except NetloadError as exc:
            writer.rollback()
            raise as_command_error(exc) from exc
        except BaseException:
            writer.rollback()
            raise
