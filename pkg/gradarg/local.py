from __future__ import absolute_import
from collections import namedtuple
from enum import IntEnum
from fractions import Fraction
import itertools
import logging
import numbers

from . import conf
from .exceptions import (ConvergenceError, MixedValueKinds,
                         UndecidableLabelling)

logger = logging.getLogger(__name__)


ZERO = Fraction(0)
ONE = Fraction(1)

# Slack allowed when checking axioms on floating point values.
EPSILON = 1e-9


class Label(IntEnum):
    MINUS = 0
    UNDECIDED = 1
    PLUS = 2

    def __str__(self):
        return {Label.MINUS: '-', Label.UNDECIDED: '?', Label.PLUS: '+'}[self]


class LocalInstance(object):
    """One local valuation semantics: v(A) = g(h(v(A1), ..., v(An))).

    ``h`` receives the list of the direct attackers' values.  Label
    instances need a ``cycle_rule`` to be evaluated on graphs with cycles.
    """

    RATIONAL = 'rational'
    FLOATING = 'floating'
    LABEL = 'label'

    def __init__(self, name, v_min, v_max, g, h, kind=RATIONAL,
                 cycle_rule=None):
        self.name = name
        self.v_min = v_min
        self.v_max = v_max
        self.g = g
        self.h = h
        self.kind = kind
        self.cycle_rule = cycle_rule

    def __repr__(self):
        return '<LocalInstance: {0}>'.format(self.name)


class FixpointConfig(object):
    def __init__(self, tolerance=None, max_iterations=None):
        if tolerance is None:
            tolerance = conf.get('GRADARG_TOLERANCE')
        if max_iterations is None:
            max_iterations = conf.get('GRADARG_MAX_ITERATIONS')
        if not tolerance > 0:
            raise ValueError("The tolerance must be positive.")
        if max_iterations < 1:
            raise ValueError("At least one iteration is required.")
        self.tolerance = tolerance
        self.max_iterations = max_iterations


def _reciprocal(x):
    return ONE / (ONE + x)


def _sum(values):
    return sum(values, ZERO)


def _max_or(minimum):
    def h(values):
        return max(values) if values else minimum
    return h


def categoriser():
    return LocalInstance('categoriser', ZERO, ONE, _reciprocal, _sum)


def max_based(g=None):
    return LocalInstance('max-based', ZERO, ONE, g or _reciprocal,
                         _max_or(ZERO))


_LABEL_G = {Label.MINUS: Label.PLUS,
            Label.UNDECIDED: Label.UNDECIDED,
            Label.PLUS: Label.MINUS}


def _rooted_cycle_rule(graph, component, values):
    members = set(component)
    labels = dict((i, None) for i in component)

    changed = True
    while changed:
        changed = False
        for i in component:
            if labels[i] is not None:
                continue
            attackers = [labels[b] if b in members else values[b]
                         for b in graph.attacker_indices(i)]
            if Label.PLUS in attackers:
                labels[i] = Label.MINUS
                changed = True
            elif all(label == Label.MINUS for label in attackers):
                labels[i] = Label.PLUS
                changed = True

    for i in component:
        values[i] = Label.UNDECIDED if labels[i] is None else labels[i]


def rooted_labelling():
    return LocalInstance('rooted-labelling', Label.MINUS, Label.PLUS,
                         _LABEL_G.__getitem__, _max_or(Label.MINUS),
                         kind=LocalInstance.LABEL,
                         cycle_rule=_rooted_cycle_rule)


def builtin_instances():
    return {
        'categoriser': categoriser(),
        'rooted_labelling': rooted_labelling(),
        'max_based': max_based(),
    }


def _fixpoint(graph, component, instance, config, values):
    members = set(component)
    current = dict((i, float(instance.v_max)) for i in component)

    for iteration in range(1, config.max_iterations + 1):
        updated = {}
        for i in component:
            inputs = [current[b] if b in members else values[b]
                      for b in sorted(graph.attacker_indices(i))]
            updated[i] = float(instance.g(instance.h(inputs)))
        distance = max(abs(updated[i] - current[i]) for i in component)
        current = updated
        if distance < config.tolerance:
            logger.debug(
                "Mcycle {0} converged after {1} iterations.".format(
                    [graph.name_of(i) for i in component], iteration))
            break
    else:
        raise ConvergenceError(
            "No fixpoint within {0} iterations on the mcycle {1}.".format(
                config.max_iterations,
                [graph.name_of(i) for i in component]))

    for i in component:
        values[i] = current[i]


def evaluate_local(graph, instance, config=None):
    """Values of every argument under a local instance.

    Arguments outside of cycles are evaluated exactly from their attackers'
    values; mcycles are settled by iteration from V_Max (numbers) or by the
    instance's cycle rule (labels).
    """
    if config is None:
        config = FixpointConfig()

    values = [None] * len(graph)
    for component in graph.condensation():
        if graph.is_cyclic_component(component):
            if instance.kind != LocalInstance.LABEL:
                _fixpoint(graph, component, instance, config, values)
            elif instance.cycle_rule is not None:
                instance.cycle_rule(graph, component, values)
            else:
                raise UndecidableLabelling(
                    "The {0} instance cannot label the mcycle {1}.".format(
                        instance.name,
                        [graph.name_of(i) for i in component]))
            continue

        a = component[0]
        attackers = sorted(graph.attacker_indices(a))
        if not attackers:
            values[a] = instance.v_max
        else:
            values[a] = instance.g(instance.h([values[b] for b in attackers]))

    logger.info("Evaluated {0} arguments with the {1} instance.".format(
        len(graph), instance.name))
    return dict((graph.name_of(a), value) for a, value in enumerate(values))


def _leq(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return a <= b + EPSILON
    return a <= b


def _same(a, b):
    return _leq(a, b) and _leq(b, a)


def iterate_g(instance, depth):
    """g(V_Max), g(g(V_Max)), ... up to ``depth`` applications."""
    result, value = [], instance.v_max
    for _ in range(depth):
        value = instance.g(value)
        result.append(value)
    return result


Violation = namedtuple('Violation', ['axiom', 'sample'])


class InstanceReport(object):
    def __init__(self, instance, violations):
        self.instance = instance
        self.violations = violations

    def __repr__(self):
        return '<InstanceReport: {0}, {1} violation(s)>'.format(
            self.instance.name, len(self.violations))

    def __bool__(self):
        return not self.violations

    @property
    def violated_axioms(self):
        return sorted(set(v.axiom for v in self.violations))


def validate_instance(instance, samples, chain_depth=8):
    """Check the axioms a local instance must satisfy on sample points.

    Every violation is recorded; nothing is raised.
    """
    g, h = instance.g, instance.h
    samples = [tuple(sample) for sample in samples]
    pool = sorted(set(itertools.chain.from_iterable(samples)))
    violations = []

    def violated(axiom, sample=None):
        violations.append(Violation(axiom, sample))

    for x in pool:
        if not _same(h([x]), x):
            violated('h(x) = x', (x,))
    if not _same(h([]), instance.v_min):
        violated('h() = V_Min')

    for sample in samples:
        if not sample:
            continue
        base = h(list(sample))
        if len(sample) <= 6 and any(
                not _same(h(list(p)), base)
                for p in itertools.permutations(sample)):
            violated('h is permutation invariant', sample)
        for i, y in itertools.product(range(len(sample)), pool):
            if y >= sample[i]:
                raised = sample[:i] + (y,) + sample[i + 1:]
                if not _leq(base, h(list(raised))):
                    violated('h is monotone', sample)
                    break
        if any(not _leq(base, h(list(sample) + [y])) for y in pool):
            violated('h is non-decreasing when appending', sample)
        if not _leq(max(sample), base):
            violated('h(x1..xn) >= max(x1..xn)', sample)

    if not _same(g(instance.v_min), instance.v_max):
        violated('g(V_Min) = V_Max')
    if _leq(instance.v_max, g(instance.v_max)):
        violated('g(V_Max) < V_Max')

    points = sorted(set([h(list(s)) for s in samples] + pool
                        + [instance.v_min]))
    for w1, w2 in zip(points, points[1:]):
        if not _leq(g(w2), g(w1)):
            violated('g is non-increasing', (w1, w2))

    chain = iterate_g(instance, chain_depth)
    odd, even = chain[0::2], chain[1::2]
    if (any(not _leq(a, b) for a, b in zip(odd, odd[1:]))
            or any(not _leq(b, a) for a, b in zip(even, even[1:]))
            or (odd and even and not _leq(max(odd), min(even)))
            or any(not _leq(e, instance.v_max) for e in even)):
        violated('g(V_Max) <= g3(V_Max) <= ... <= g2(V_Max) <= V_Max',
                 tuple(chain))

    return InstanceReport(instance, violations)


PASS = 'pass'
FAIL = 'fail'
PREMISE_NOT_MET = 'premise-not-met'

StarCheck = namedtuple('StarCheck', ['sample', 'outcome'])


def check_condition_star(instance, samples):
    """If g(xi) >= xi for every xi, is g(h(x1..xn)) >= h(x1..xn)?"""
    g, h = instance.g, instance.h
    result = []
    for sample in samples:
        sample = tuple(sample)
        if not all(_leq(x, g(x)) for x in sample):
            outcome = PREMISE_NOT_MET
        else:
            w = h(list(sample))
            outcome = PASS if _leq(w, g(w)) else FAIL
        result.append(StarCheck(sample, outcome))
    return result


def _value_kind(value):
    if isinstance(value, Label):
        return 'label'
    if isinstance(value, numbers.Real):
        return 'number'
    raise MixedValueKinds("Unsupported value {0!r}.".format(value))


class CompletePreorder(object):
    """A >= B iff v(A) >= v(B)."""

    def __init__(self, values):
        kinds = set(_value_kind(v) for v in values.values())
        if len(kinds) > 1:
            raise MixedValueKinds(
                "Cannot order labels together with numbers.")
        self.values = dict(values)

    @property
    def levels(self):
        """Equivalence classes, best first."""
        groups = {}
        for name, value in self.values.items():
            groups.setdefault(value, set()).add(name)
        return [frozenset(groups[value])
                for value in sorted(groups, reverse=True)]

    def geq(self, a, b):
        return self.values[a] >= self.values[b]

    def strictly_better(self, a, b):
        return self.values[a] > self.values[b]


def induced_preorder(values):
    return CompletePreorder(values)
