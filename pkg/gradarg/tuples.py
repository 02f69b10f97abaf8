from __future__ import absolute_import
from collections import deque
import logging
import re

from . import conf
from .exceptions import TupleSyntaxError
from .graph import strongly_connected

logger = logging.getLogger(__name__)


INF = float('inf')

LESS = 'less'
EQUAL = 'equal'
GREATER = 'greater'
UNKNOWN = 'unknown'

FIRST_BETTER = 'first-better'
SECOND_BETTER = 'second-better'
EQUIVALENT = 'equivalent'
INCOMPARABLE = 'incomparable'

_MIRROR = {FIRST_BETTER: SECOND_BETTER, SECOND_BETTER: FIRST_BETTER,
           EQUIVALENT: EQUIVALENT, INCOMPARABLE: INCOMPARABLE}


class GradTuple(object):
    """A sorted multiset of non-negative integers, stored as (value, count)
    runs.

    A count may be ``INF`` (as in 0^inf and 1^inf).  When ``horizon`` is set
    the tuple is infinite and only certified up to it: every element
    ``<= horizon`` is present and infinitely many elements exceed it.
    """

    def __init__(self, runs=(), horizon=None):
        merged = {}
        for value, count in runs:
            if value < 0 or count < 0:
                raise ValueError(
                    "Invalid run ({0}, {1}) in a tuple.".format(value, count))
            if horizon is not None and value > horizon:
                continue
            if count:
                merged[value] = merged.get(value, 0) + count
        self.runs = tuple(sorted(merged.items()))
        self.horizon = horizon

    @classmethod
    def from_values(cls, values, horizon=None):
        return cls([(value, 1) for value in values], horizon)

    def __eq__(self, other):
        if not isinstance(other, GradTuple):
            return NotImplemented
        return (self.runs, self.horizon) == (other.runs, other.horizon)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.runs, self.horizon))

    def __repr__(self):
        return '<GradTuple {0}>'.format(render_tuple(self))

    def __str__(self):
        return render_tuple(self)

    @property
    def is_empty(self):
        return not self.runs and self.horizon is None

    @property
    def is_truncated(self):
        return self.horizon is not None

    @property
    def is_infinite(self):
        return self.is_truncated or any(c == INF for v, c in self.runs)

    def values(self):
        """The known elements in order; infinite runs are not expanded."""
        for value, count in self.runs:
            if count == INF:
                raise ValueError(
                    "Cannot list the elements of {0}.".format(self))
            for _ in range(count):
                yield value


EMPTY = GradTuple()
ZERO_INF = GradTuple([(0, INF)])
ONE_INF = GradTuple([(1, INF)])


def concat(t1, t2):
    if t1.is_empty:
        return t2
    if t2.is_empty:
        return t1
    if t1 == ZERO_INF:
        return t2
    if t2 == ZERO_INF:
        return t1

    horizons = [t.horizon for t in (t1, t2) if t.horizon is not None]
    return GradTuple(t1.runs + t2.runs, min(horizons) if horizons else None)


def shift(t, k):
    if t == ZERO_INF:
        return GradTuple([(k, 1)])
    if t.is_empty:
        return t
    return GradTuple([(v + k, c) for v, c in t.runs],
                     None if t.horizon is None else t.horizon + k)


def cardinality(t):
    if t.is_infinite:
        return INF
    return sum(count for value, count in t.runs)


def lex_compare(t1, t2):
    """Lexicographic ordering of possibly infinite tuples.

    Truncated tuples are compared within what their horizons certify;
    ``UNKNOWN`` is returned when that is not enough to decide.
    """
    runs1, runs2 = t1.runs, t2.runs
    i = j = 0
    left1 = runs1[0][1] if runs1 else 0
    left2 = runs2[0][1] if runs2 else 0

    while i < len(runs1) and j < len(runs2):
        v1, v2 = runs1[i][0], runs2[j][0]
        if v1 != v2:
            return LESS if v1 < v2 else GREATER
        if left1 == INF and left2 == INF:
            return EQUAL

        step = min(left1, left2)
        left1 -= step
        left2 -= step
        if not left1:
            i += 1
            left1 = runs1[i][1] if i < len(runs1) else 0
        if not left2:
            j += 1
            left2 = runs2[j][1] if j < len(runs2) else 0

    done1, done2 = i >= len(runs1), j >= len(runs2)
    if done1 and done2:
        if t1.horizon is None and t2.horizon is None:
            return EQUAL
        if t1.horizon is None:
            return LESS
        if t2.horizon is None:
            return GREATER
        return UNKNOWN
    if done1:
        if t1.horizon is None:
            return LESS
        return GREATER if runs2[j][0] <= t1.horizon else UNKNOWN
    if t2.horizon is None:
        return GREATER
    return LESS if runs1[i][0] <= t2.horizon else UNKNOWN


class TupledValue(object):
    """The pair [vp, vi] of even and odd branch lengths of an argument."""

    def __init__(self, vp, vi):
        if any(v % 2 for v, c in vp.runs):
            raise ValueError(
                "The even component {0} has odd elements.".format(vp))
        if any(not v % 2 for v, c in vi.runs):
            raise ValueError(
                "The odd component {0} has even elements.".format(vi))
        if vp.is_empty and vi.is_empty:
            raise ValueError("A tupled value cannot be [(),()].")
        self.vp = vp
        self.vi = vi

    def __eq__(self, other):
        if not isinstance(other, TupledValue):
            return NotImplemented
        return (self.vp, self.vi) == (other.vp, other.vi)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.vp, self.vi))

    def __repr__(self):
        return '<TupledValue {0}>'.format(render(self))

    def __str__(self):
        return render(self)

    @property
    def is_truncated(self):
        return self.vp.is_truncated or self.vi.is_truncated


LEAF_VALUE = TupledValue(ZERO_INF, EMPTY)
MINIMUM_VALUE = TupledValue(EMPTY, ONE_INF)


class ComparisonOutcome(object):
    def __init__(self, verdict, exact=True):
        self.verdict = verdict
        self.exact = exact

    def __eq__(self, other):
        if not isinstance(other, ComparisonOutcome):
            return NotImplemented
        return (self.verdict, self.exact) == (other.verdict, other.exact)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.verdict, self.exact))

    def __repr__(self):
        return '<ComparisonOutcome: {0}>'.format(self)

    def __str__(self):
        return '{0} ({1})'.format(
            self.verdict, 'exact' if self.exact else 'truncated')

    def mirror(self):
        return ComparisonOutcome(_MIRROR[self.verdict], self.exact)


def compare(v, w):
    """Compare two tupled values: number of branches first, then their
    lengths, each stage aggregating the defence and attack criteria
    cautiously.
    """
    if v == w:
        return ComparisonOutcome(
            EQUIVALENT, not (v.is_truncated or w.is_truncated))

    v_odd, v_even = cardinality(v.vi), cardinality(v.vp)
    w_odd, w_even = cardinality(w.vi), cardinality(w.vp)
    if (v_odd, v_even) != (w_odd, w_even):
        if v_odd >= w_odd and v_even <= w_even:
            return ComparisonOutcome(SECOND_BETTER)
        if v_odd <= w_odd and v_even >= w_even:
            return ComparisonOutcome(FIRST_BETTER)
        return ComparisonOutcome(INCOMPARABLE)

    # Shorter defences and longer attacks are better.
    even = lex_compare(v.vp, w.vp)
    odd = lex_compare(v.vi, w.vi)

    if UNKNOWN not in (even, odd):
        if even == odd == EQUAL:
            return ComparisonOutcome(EQUIVALENT)
        if even in (LESS, EQUAL) and odd in (GREATER, EQUAL):
            return ComparisonOutcome(FIRST_BETTER)
        if even in (GREATER, EQUAL) and odd in (LESS, EQUAL):
            return ComparisonOutcome(SECOND_BETTER)
        return ComparisonOutcome(INCOMPARABLE)

    if even == LESS or (even == UNKNOWN and odd == GREATER):
        return ComparisonOutcome(FIRST_BETTER, exact=False)
    if even == GREATER or (even == UNKNOWN and odd == LESS):
        return ComparisonOutcome(SECOND_BETTER, exact=False)
    if even in (EQUAL, UNKNOWN) and odd in (EQUAL, UNKNOWN):
        return ComparisonOutcome(EQUIVALENT, exact=False)
    return ComparisonOutcome(INCOMPARABLE, exact=False)


def _check_depth(depth):
    if not isinstance(depth, int) or depth < 1:
        raise ValueError(
            "Invalid propagation depth {0!r}: must be an integer >= 1.".format(
                depth))


def certified_horizon(graph, depth=None):
    if depth is None:
        depth = conf.get('GRADARG_DEPTH')
    _check_depth(depth)
    return 2 * len(graph) + 2 * depth


def evaluate_acyclic(graph):
    """Tupled values of a graph without cycles.

    Raises GraphHasCycles otherwise.
    """
    order = graph.topological_order()
    values = [None] * len(graph)
    for a in order:
        attackers = graph.attacker_indices(a)
        if not attackers:
            values[a] = LEAF_VALUE
            continue
        even, odd = EMPTY, EMPTY
        for b in sorted(attackers):
            even = concat(even, shift(values[b].vi, 1))
            odd = concat(odd, shift(values[b].vp, 1))
        values[a] = TupledValue(even, odd)

    logger.info("Evaluated tupled values for {0} arguments.".format(
        len(graph)))
    return dict((graph.name_of(a), value) for a, value in enumerate(values))


def _unattacked_cycle_value(horizon):
    return TupledValue(
        GradTuple([(k, 1) for k in range(2, horizon + 1, 2)], horizon),
        GradTuple([(k, 1) for k in range(1, horizon + 1, 2)], horizon))


def evaluate_cyclic(graph, depth=None):
    """Tupled values of any graph, propagated up to a certified horizon.

    Branch lengths are the lengths of the walks reaching an argument from
    a leaf, or from a member of an unattacked mcycle into that mcycle.
    Counts are exact for every length up to the horizon; an argument's
    even or odd component is infinite when such walks can go around a
    cycle of the matching parity, and finite components are complete.
    """
    if graph.is_well_founded():
        return evaluate_acyclic(graph)

    horizon = certified_horizon(graph, depth)
    size = len(graph)
    leaves = graph.leaf_indices

    mcycle_of, unattacked, closed_form = {}, set(), set()
    for number, component in enumerate(graph.condensation()):
        if not graph.is_cyclic_component(component):
            continue
        members = set(component)
        for i in component:
            mcycle_of[i] = number
        if all(graph.attacker_indices(i) <= members for i in component):
            unattacked.add(number)
            internal = sum(len(graph.attacker_indices(i)) for i in component)
            if internal == len(component):
                closed_form.update(component)

    def starts_walk(b, a):
        return b in leaves or (b in mcycle_of and a in mcycle_of
                               and mcycle_of[b] == mcycle_of[a]
                               and mcycle_of[b] in unattacked)

    counts = [[0] * (horizon + 1) for _ in range(size)]
    for k in range(1, horizon + 1):
        for a in range(size):
            total = 0
            for b in graph.attacker_indices(a):
                total += counts[b][k - 1]
                if k == 1 and starts_walk(b, a):
                    total += 1
            counts[a][k] = total

    # Walks of a given parity are infinite in number exactly when they
    # can pass through a cycle of the (argument, parity) product graph.
    successors = [set() for _ in range(2 * size)]
    for b, a in ((graph.index_of(x), graph.index_of(y))
                 for x, y in graph.attacks):
        for parity in (0, 1):
            successors[2 * b + parity].add(2 * a + 1 - parity)

    seeds = set(2 * leaf for leaf in leaves)
    seeds.update(2 * a + 1 for a in range(size) for b in
                 graph.attacker_indices(a) if starts_walk(b, a)
                 and b not in leaves)
    reached = _reachable(successors, seeds)

    cyclic = set()
    for component in strongly_connected(successors):
        state = component[0]
        if len(component) > 1 or state in successors[state]:
            cyclic.update(component)
    infinite = _reachable(successors, reached & cyclic)

    values = {}
    for a in range(size):
        name = graph.name_of(a)
        if a in leaves:
            values[name] = LEAF_VALUE
        elif a in closed_form:
            values[name] = _unattacked_cycle_value(horizon)
        else:
            values[name] = TupledValue(
                GradTuple([(k, counts[a][k])
                           for k in range(2, horizon + 1, 2)],
                          horizon if 2 * a in infinite else None),
                GradTuple([(k, counts[a][k])
                           for k in range(1, horizon + 1, 2)],
                          horizon if 2 * a + 1 in infinite else None))

    logger.info(
        "Evaluated tupled values for {0} arguments ({1} mcycles,"
        " horizon {2}).".format(size, len(graph.find_mcycles()), horizon))
    return values


def _reachable(successors, starts):
    seen = set(starts)
    queue = deque(seen)
    while queue:
        state = queue.popleft()
        for succ in successors[state]:
            if succ not in seen:
                seen.add(succ)
                queue.append(succ)
    return seen


def evaluate(graph, depth=None):
    if graph.is_well_founded():
        return evaluate_acyclic(graph)
    return evaluate_cyclic(graph, depth)


# Rendering and parsing.

def render_tuple(t, expand=None):
    if expand is None:
        expand = conf.get('GRADARG_RENDER_EXPAND')
    if len(t.runs) == 1 and t.runs[0][1] == INF and t.horizon is None:
        return '{0}^inf'.format(t.runs[0][0])

    items = []
    for value, count in t.runs:
        if count == INF:
            items.append('{0}^inf'.format(value))
        elif expand is not None and count > expand:
            items.append('{0}^{1}'.format(value, count))
        else:
            items.extend([str(value)] * count)
    if t.horizon is not None:
        items.append('...')
    return '({0})'.format(','.join(items))


def render(value, expand=None):
    return '[{0},{1}]'.format(render_tuple(value.vp, expand),
                              render_tuple(value.vi, expand))


_TUPLE = re.compile(r'\s*(?:\((?P<items>[^()]*)\)|(?P<const>\d+\^inf))\s*')
_ITEM = re.compile(r'^(?P<value>\d+)(?:\^(?P<count>\d+|inf))?$')


def _parse_tuple(text, pos):
    match = _TUPLE.match(text, pos)
    if match is None:
        raise TupleSyntaxError(
            "Expected a tuple at position {0} of {1!r}.".format(pos, text))
    if match.group('const'):
        value = int(match.group('const').split('^')[0])
        return GradTuple([(value, INF)]), match.end()

    content = match.group('items').strip()
    items = [item.strip() for item in content.split(',')] if content else []
    runs, horizon, last = [], None, None
    for n, item in enumerate(items):
        if item == '...':
            if n != len(items) - 1 or last is None:
                raise TupleSyntaxError(
                    "'...' must follow at least one element and end the"
                    " tuple in {0!r}.".format(text))
            horizon = last
            continue
        item_match = _ITEM.match(item)
        if item_match is None:
            raise TupleSyntaxError(
                "Invalid tuple element {0!r} in {1!r}.".format(item, text))
        value = int(item_match.group('value'))
        count = item_match.group('count')
        count = 1 if count is None else (
            INF if count == 'inf' else int(count))
        if last is not None and value < last:
            raise TupleSyntaxError(
                "Tuple elements must be sorted in {0!r}.".format(text))
        runs.append((value, count))
        last = value
    return GradTuple(runs, horizon), match.end()


def parse_tupled_value(text):
    """Read a tupled value in the ``[(2,4),(1,3,3)]`` notation."""
    text = text.strip()
    if not text.startswith('[') or not text.endswith(']'):
        raise TupleSyntaxError(
            "A tupled value is written [(...),(...)], got {0!r}.".format(
                text))
    vp, pos = _parse_tuple(text, 1)
    if text[pos:pos + 1] != ',':
        raise TupleSyntaxError(
            "Expected ',' at position {0} of {1!r}.".format(pos, text))
    vi, pos = _parse_tuple(text, pos + 1)
    if pos != len(text) - 1:
        raise TupleSyntaxError(
            "Unexpected text at position {0} of {1!r}.".format(pos, text))
    try:
        return TupledValue(vp, vi)
    except ValueError as e:
        raise TupleSyntaxError(str(e))
