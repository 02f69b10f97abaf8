from __future__ import absolute_import
from fractions import Fraction
import json

from .local import Label
from .tuples import TupledValue, render


def render_value(value):
    if isinstance(value, TupledValue):
        return render(value)
    if isinstance(value, Label):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_extension(graph, extension):
    return '{{{0}}}'.format(','.join(n for n in graph if n in extension))


def _ordered(graph, names):
    return [n for n in graph if n in names]


class Report(object):
    """The text lines and the structured document of one invocation."""

    def __init__(self, lines, document):
        self.lines = lines
        self.document = document

    def as_text(self):
        return ''.join(line + '\n' for line in self.lines)

    def as_json(self):
        return json.dumps(self.document, indent=2, sort_keys=True) + '\n'

    def render(self, output_format='text'):
        if output_format == 'json':
            return self.as_json()
        return self.as_text()


def values_report(graph, values, model):
    rendered = [(name, render_value(values[name])) for name in graph]
    return Report(
        ['{0} {1}'.format(name, value) for name, value in rendered],
        {'command': 'value',
         'model': model,
         'values': [{'argument': name, 'value': value}
                    for name, value in rendered]})


def compare_report(outcome, first, second):
    return Report(
        [str(outcome)],
        {'command': 'compare',
         'first': first,
         'second': second,
         'verdict': outcome.verdict,
         'exact': outcome.exact})


def extensions_report(graph, semantics, extensions):
    return Report(
        [render_extension(graph, e) for e in extensions],
        {'command': 'solve',
         'semantics': semantics,
         'extensions': [_ordered(graph, e) for e in extensions]})


def classify_report(graph, report):
    lines, arguments = [], []
    for name in graph:
        defended = [valuation for valuation in sorted(report.well_defended)
                    if name in report.well_defended[valuation]]
        line = '{0} {1}'.format(name, report.level[name])
        if defended:
            line += ' well-defended:{0}'.format(','.join(defended))
        lines.append(line)
        arguments.append({'argument': name,
                          'level': report.level[name],
                          'well_defended': defended})
    return Report(
        lines,
        {'command': 'classify',
         'semantics': report.semantics,
         'extensions': [_ordered(graph, e) for e in report.extensions],
         'arguments': arguments})


def well_defended_report(graph, valuation, names):
    ordered = _ordered(graph, names)
    return Report(
        ordered,
        {'command': 'well-defended',
         'valuation': valuation,
         'arguments': ordered})


def dot_report(graph):
    dot = graph.to_dot()
    return Report(dot.splitlines(),
                  {'command': 'export-dot', 'dot': dot})
