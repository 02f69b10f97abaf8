from __future__ import absolute_import
from collections import namedtuple
import logging
import random

from . import conf
from .exceptions import EnumerationBoundExceeded
from .families import random_graph
from .local import (categoriser, evaluate_local, induced_preorder, max_based,
                    rooted_labelling)
from .tuples import FIRST_BETTER, compare, evaluate

logger = logging.getLogger(__name__)


PREFERRED = 'preferred'
STABLE = 'stable'
SEMANTICS = (PREFERRED, STABLE)

UNI = 'uni'
CLEANLY = 'cleanly'
ONLY_EXI = 'only-exi'
NOT_ACCEPTED = 'not-accepted'
LEVELS = (UNI, CLEANLY, ONLY_EXI, NOT_ACCEPTED)

_IN, _OUT, _UNDECIDED = 'in', 'out', None


def _indices(graph, names):
    return set(graph.index_of(name) for name in names)


def is_conflict_free(graph, s):
    members = _indices(graph, s)
    return not any(graph.attacker_indices(i) & members for i in members)


def defends(graph, s, a):
    members = _indices(graph, s)
    return all(graph.attacker_indices(b) & members
               for b in graph.attacker_indices(graph.index_of(a)))


def is_admissible(graph, s):
    return is_conflict_free(graph, s) and all(
        defends(graph, s, a) for a in s)


def _check_bound(graph, bound):
    if bound is None:
        bound = conf.get('GRADARG_ENUMERATION_BOUND')
    if len(graph) > bound:
        raise EnumerationBoundExceeded(
            "Cannot enumerate extensions of {0} arguments (bound is"
            " {1}).".format(len(graph), bound))
    if len(graph) > 0.8 * bound:
        logger.warning(
            "Enumerating extensions of {0} arguments, close to the bound"
            " of {1}.".format(len(graph), bound))


def _complete_extensions(graph, stable=False):
    """Depth-first search over in/out assignments in declaration order.

    A branch is abandoned as soon as an ``in`` argument has an attacker
    that nothing undecided or ``in`` can attack, or an ``out`` argument is
    already defended by the ``in`` arguments (it would have to belong to a
    complete extension).  With ``stable`` set, ``out`` arguments must also
    remain attackable.
    """
    size = len(graph)
    attackers = [graph.attacker_indices(i) for i in range(size)]
    targets = [graph.target_indices(i) for i in range(size)]
    state = [_UNDECIDED] * size
    found = []

    def defended(x):
        return all(any(state[c] == _IN for c in attackers[b])
                   for b in attackers[x])

    def attackable(x):
        return any(state[c] != _OUT for c in attackers[x])

    def viable():
        for x in range(size):
            if state[x] == _IN:
                if not all(attackable(b) for b in attackers[x]):
                    return False
            elif state[x] == _OUT:
                if defended(x) or (stable and not attackable(x)):
                    return False
        return True

    def search(i):
        if not viable():
            return
        if i == size:
            found.append(frozenset(graph.name_of(x) for x in range(size)
                                   if state[x] == _IN))
            return
        if not any(state[c] == _IN for c in attackers[i] | targets[i]) \
                and i not in attackers[i]:
            state[i] = _IN
            search(i + 1)
        state[i] = _OUT
        search(i + 1)
        state[i] = _UNDECIDED

    search(0)
    return found


def _sort_key(extension):
    return len(extension), sorted(extension)


def preferred_extensions(graph, bound=None):
    _check_bound(graph, bound)
    complete = _complete_extensions(graph)
    preferred = [e for e in complete
                 if not any(e < other for other in complete)]
    logger.info("Found {0} preferred extension(s) among {1} arguments.".format(
        len(preferred), len(graph)))
    return sorted(preferred, key=_sort_key)


def stable_extensions(graph, bound=None):
    _check_bound(graph, bound)
    stable = _complete_extensions(graph, stable=True)
    logger.info("Found {0} stable extension(s) among {1} arguments.".format(
        len(stable), len(graph)))
    return sorted(stable, key=_sort_key)


def extensions(graph, semantics=PREFERRED, bound=None):
    if semantics == PREFERRED:
        return preferred_extensions(graph, bound)
    if semantics == STABLE:
        return stable_extensions(graph, bound)
    raise ValueError("Unknown semantics '{0}'.".format(semantics))


def classify(graph, semantics=PREFERRED, found=None, bound=None):
    if found is None:
        found = extensions(graph, semantics, bound)
    accepted = set().union(*found) if found else set()

    levels = {}
    for name in graph:
        if name not in accepted:
            levels[name] = NOT_ACCEPTED
        elif all(name in e for e in found):
            levels[name] = UNI
        elif not graph.direct_attackers(name) & accepted:
            levels[name] = CLEANLY
        else:
            levels[name] = ONLY_EXI
    return levels


def accepted_sets(levels):
    """The uni, cleanly, exi and only-exi classes of a classification."""
    def having(*wanted):
        return frozenset(n for n, level in levels.items() if level in wanted)

    return {
        UNI: having(UNI),
        CLEANLY: having(UNI, CLEANLY),
        'exi': having(UNI, CLEANLY, ONLY_EXI),
        ONLY_EXI: having(ONLY_EXI),
    }


def well_defended(graph, strictly_better):
    """Arguments none of whose direct attackers is strictly better."""
    return frozenset(
        a for a in graph
        if not any(strictly_better(b, a) for b in graph.direct_attackers(a)))


def local_preorder(values):
    return induced_preorder(values).strictly_better


def tuple_preorder(values):
    def strictly_better(a, b):
        return compare(values[a], values[b]).verdict == FIRST_BETTER
    return strictly_better


VALUATIONS = ('categoriser', 'max-based', 'labelling', 'tuples')


def valuation_preorder(graph, valuation, depth=None, config=None):
    if valuation == 'tuples':
        return tuple_preorder(evaluate(graph, depth))
    instances = {
        'categoriser': categoriser,
        'max-based': max_based,
        'labelling': rooted_labelling,
    }
    try:
        instance = instances[valuation]()
    except KeyError:
        raise ValueError("Unknown valuation '{0}'.".format(valuation))
    return local_preorder(evaluate_local(graph, instance, config))


class AcceptabilityReport(object):
    def __init__(self, semantics, extensions, level, well_defended):
        self.semantics = semantics
        self.extensions = extensions
        self.level = level
        self.well_defended = well_defended

    def __repr__(self):
        return '<AcceptabilityReport: {0}, {1} extension(s)>'.format(
            self.semantics, len(self.extensions))


def report(graph, semantics=PREFERRED, valuations=('categoriser', 'tuples'),
           depth=None, bound=None, config=None):
    found = extensions(graph, semantics, bound)
    return AcceptabilityReport(
        semantics, found, classify(graph, semantics, found),
        dict((valuation, well_defended(
            graph, valuation_preorder(graph, valuation, depth, config)))
            for valuation in valuations))


CLEANLY_NOT_WELL_DEFENDED = 'cleanly-not-well-defended'
WELL_DEFENDED_NOT_CLEANLY = 'well-defended-not-cleanly'

Witness = namedtuple('Witness', ['kind', 'graph', 'argument', 'trial'])


class ScanReport(object):
    def __init__(self, witnesses, trials):
        self.witnesses = witnesses
        self.trials = trials

    def __repr__(self):
        return '<ScanReport: {0} trial(s), found {1}>'.format(
            self.trials, sorted(k for k, w in self.witnesses.items() if w))

    def found(self, kind):
        return self.witnesses[kind] is not None


def compatibility_scan(seed, trials, size_bound, valuation='categoriser',
                       acyclic=False, semantics=PREFERRED):
    """Search random graphs for arguments that are cleanly accepted but not
    well-defended, and the other way around.
    """
    if trials < 1:
        raise ValueError("At least one trial is required.")

    rng = random.Random(seed)
    witnesses = {CLEANLY_NOT_WELL_DEFENDED: None,
                 WELL_DEFENDED_NOT_CLEANLY: None}
    trial = 0
    while trial < trials and not all(witnesses.values()):
        trial += 1
        graph = random_graph(rng.getrandbits(32), rng.randint(1, size_bound),
                             rng.uniform(0.1, 0.4), acyclic=acyclic)
        cleanly = accepted_sets(classify(graph, semantics))[CLEANLY]
        defended = well_defended(graph, valuation_preorder(graph, valuation))

        for name in graph:
            if name in cleanly and name not in defended:
                kind = CLEANLY_NOT_WELL_DEFENDED
            elif name in defended and name not in cleanly:
                kind = WELL_DEFENDED_NOT_CLEANLY
            else:
                continue
            if witnesses[kind] is None:
                witnesses[kind] = Witness(kind, graph, name, trial)
                logger.info("Found a {0} witness after {1} trial(s).".format(
                    kind, trial))

    return ScanReport(witnesses, trial)
