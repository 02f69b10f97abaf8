from __future__ import absolute_import
from fractions import Fraction
import argparse
import logging
import sys

from django.core.management.base import BaseCommand, CommandError

from gradarg import acceptability, local, reports, tuples
from gradarg.exceptions import (ConvergenceError, EnumerationBoundExceeded,
                                FrameworkSyntaxError, GraphHasCycles,
                                GradargError, TupleSyntaxError,
                                UndecidableLabelling)
from gradarg.graph import AttackGraph

logger = logging.getLogger('gradarg')


COMMANDS = ('value', 'compare', 'solve', 'classify', 'well-defended',
            'export-dot')
MODELS = ('categoriser', 'labelling', 'tuples', 'max-based')

USAGE_ERROR, PARSE_ERROR, COMPUTATION_ERROR = 1, 2, 3

_LABELS = {'+': local.Label.PLUS, '?': local.Label.UNDECIDED,
           '-': local.Label.MINUS}


def positive_int(value):
    try:
        number = int(value)
    except ValueError:
        number = 0
    if number < 1:
        raise argparse.ArgumentTypeError(
            "expected a positive integer, got {0!r}".format(value))
    return number


def valuation_list(value):
    names = [v.strip() for v in value.split(',') if v.strip()]
    unknown = [v for v in names if v not in acceptability.VALUATIONS]
    if unknown:
        raise argparse.ArgumentTypeError(
            "unknown valuation(s): {0}".format(', '.join(unknown)))
    return names


def _instance(model):
    return {'categoriser': local.categoriser,
            'labelling': local.rooted_labelling,
            'max-based': local.max_based}[model]()


def _local_outcome(a, b):
    if a > b:
        verdict = tuples.FIRST_BETTER
    elif a < b:
        verdict = tuples.SECOND_BETTER
    else:
        verdict = tuples.EQUIVALENT
    return tuples.ComparisonOutcome(verdict)


class Command(BaseCommand):
    help = ("Compute gradual valuations, extensions and acceptability levels"
            " of an argumentation framework.")

    requires_system_checks = []
    stealth_options = ('stdin',)

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super(Command, self).create_parser(
            prog_name, subcommand, **kwargs)

        def usage_error(message):
            if parser.called_from_command_line:
                parser.print_usage(sys.stderr)
                parser.exit(USAGE_ERROR, '{0}: error: {1}\n'.format(
                    parser.prog, message))
            raise CommandError('Error: {0}'.format(message),
                               returncode=USAGE_ERROR)

        parser.error = usage_error
        return parser

    def add_arguments(self, parser):
        parser.add_argument('command', choices=COMMANDS)
        parser.add_argument(
            'operands', nargs='*',
            help="Two values (or, with --input, two argument names) to"
                 " compare.")
        parser.add_argument(
            '--input', dest='input',
            help="Framework file to read; standard input by default.")
        parser.add_argument('--model', choices=MODELS, default='categoriser')
        parser.add_argument('--semantics', choices=acceptability.SEMANTICS,
                            default=acceptability.PREFERRED)
        parser.add_argument(
            '--depth', type=positive_int, default=None,
            help="Maximum number of runs through a cycle for the tuples"
                 " model.")
        parser.add_argument('--format', dest='output_format',
                            choices=('text', 'json'), default='text')
        parser.add_argument(
            '--valuations', type=valuation_list,
            default=['categoriser', 'tuples'],
            help="Comma separated valuations whose well-defended arguments"
                 " are reported by classify.")

    def handle(self, *args, **options):
        verbosity = options.get('verbosity', 1)
        if verbosity >= 2:
            logger.setLevel(logging.DEBUG if verbosity >= 3 else logging.INFO)

        command = options['command']
        try:
            report = getattr(self, 'handle_' + command.replace('-', '_'))(
                options)
        except (FrameworkSyntaxError, TupleSyntaxError) as e:
            logger.error("Could not parse the input: {0}".format(e))
            raise CommandError(str(e), returncode=PARSE_ERROR)
        except (ConvergenceError, EnumerationBoundExceeded,
                UndecidableLabelling, GraphHasCycles) as e:
            logger.error("The {0} command failed: {1}".format(command, e))
            raise CommandError(str(e), returncode=COMPUTATION_ERROR)
        except GradargError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR)

        self.stdout.write(report.render(options['output_format']), ending='')

    def read_graph(self, options):
        path = options.get('input')
        if path is None:
            stdin = options.get('stdin') or sys.stdin
            return AttackGraph.from_file(getattr(stdin, 'buffer', stdin))
        try:
            with open(path, 'rb') as f:
                return AttackGraph.from_file(f)
        except (IOError, OSError) as e:
            raise CommandError("Cannot read '{0}': {1}".format(
                path, e.strerror or e), returncode=USAGE_ERROR)

    def evaluate(self, graph, options):
        if options['model'] == 'tuples':
            return tuples.evaluate(graph, options.get('depth'))
        return local.evaluate_local(graph, _instance(options['model']))

    def handle_value(self, options):
        graph = self.read_graph(options)
        return reports.values_report(
            graph, self.evaluate(graph, options), options['model'])

    def parse_literal(self, text, model):
        if model == 'tuples':
            return tuples.parse_tupled_value(text)
        if model == 'labelling':
            try:
                return _LABELS[text.strip()]
            except KeyError:
                raise TupleSyntaxError(
                    "Expected one of +, ? or -, got {0!r}.".format(text))
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise TupleSyntaxError(
                "Expected a number, got {0!r}.".format(text))

    def handle_compare(self, options):
        operands = options.get('operands') or []
        if len(operands) != 2:
            raise CommandError(
                "compare expects exactly two operands, got {0}.".format(
                    len(operands)), returncode=USAGE_ERROR)
        model = options['model']

        if options.get('input') is not None:
            graph = self.read_graph(options)
            for name in operands:
                graph.index_of(name)
            values = self.evaluate(graph, options)
            first, second = values[operands[0]], values[operands[1]]
        else:
            first, second = [self.parse_literal(text, model)
                             for text in operands]

        if model == 'tuples':
            outcome = tuples.compare(first, second)
        else:
            outcome = _local_outcome(first, second)
        return reports.compare_report(
            outcome, reports.render_value(first), reports.render_value(second))

    def handle_solve(self, options):
        graph = self.read_graph(options)
        return reports.extensions_report(
            graph, options['semantics'],
            acceptability.extensions(graph, options['semantics']))

    def handle_classify(self, options):
        graph = self.read_graph(options)
        return reports.classify_report(graph, acceptability.report(
            graph, options['semantics'], options['valuations'],
            depth=options.get('depth')))

    def handle_well_defended(self, options):
        graph = self.read_graph(options)
        model = options['model']
        strictly_better = acceptability.valuation_preorder(
            graph, model, depth=options.get('depth'))
        return reports.well_defended_report(
            graph, model, acceptability.well_defended(graph, strictly_better))

    def handle_export_dot(self, options):
        return reports.dot_report(self.read_graph(options))
