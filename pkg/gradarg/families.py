from __future__ import absolute_import
import logging
import random

from .exceptions import EditError, InvalidFamily
from .graph import AttackGraph

logger = logging.getLogger(__name__)


def _check_size(size, minimum=1, what='size'):
    if not isinstance(size, int) or size < minimum:
        raise InvalidFamily(
            "Invalid {0} {1!r}: must be an integer >= {2}.".format(
                what, size, minimum))


def chain(n):
    """A_n -> A_(n-1) -> ... -> A_1, so that A_n is the only leaf."""
    _check_size(n)
    names = ['A{0}'.format(i) for i in range(1, n + 1)]
    attacks = [(names[i + 1], names[i]) for i in range(n - 1)]
    return AttackGraph(names, attacks)


def unattacked_cycle(k, sink=False):
    _check_size(k)
    names = ['A{0}'.format(i) for i in range(1, k + 1)]
    attacks = [(names[i], names[(i + 1) % k]) for i in range(k)]
    if sink:
        names.append('C')
        attacks.append((names[0], 'C'))
    return AttackGraph(names, attacks)


def attacked_cycle(k, sinks=False):
    _check_size(k)
    names = ['D'] + ['A{0}'.format(i) for i in range(1, k + 1)]
    attacks = [('D', 'A1')]
    attacks.extend(('A{0}'.format(i), 'A{0}'.format(i % k + 1))
                   for i in range(1, k + 1))
    if sinks:
        for i in range(1, k + 1):
            names.append('C{0}'.format(i))
            attacks.append(('A{0}'.format(i), 'C{0}'.format(i)))
    return AttackGraph(names, attacks)


def spider(lengths):
    """A root ``A`` with one disjoint leg per entry of ``lengths``.

    Leg ``j`` is ``L<j>_<l> -> ... -> L<j>_1 -> A``; every leaf reaches the
    root by exactly one path.
    """
    lengths = list(lengths)
    _check_size(len(lengths), what='number of legs')
    names, attacks = ['A'], []
    for j, length in enumerate(lengths, 1):
        _check_size(length, what='leg length')
        leg = ['L{0}_{1}'.format(j, i) for i in range(1, length + 1)]
        names.extend(leg)
        attacks.append((leg[0], 'A'))
        attacks.extend((leg[i + 1], leg[i]) for i in range(length - 1))
    return AttackGraph(names, attacks)


def random_spider(seed, legs=4, max_length=5):
    rng = random.Random(seed)
    return spider([rng.randint(1, max_length)
                   for _ in range(rng.randint(1, legs))])


def random_graph(seed, size, density, acyclic=False, self_loops=True):
    """Every ordered pair is an attack with probability ``density``.

    Acyclic graphs only get attacks from a higher to a lower index.
    """
    _check_size(size)
    if not 0 <= density <= 1:
        raise InvalidFamily(
            "Invalid density {0!r}: must lie in [0, 1].".format(density))

    rng = random.Random(seed)
    names = ['A{0}'.format(i) for i in range(1, size + 1)]
    attacks = []
    for i in range(size):
        for j in range(size):
            if acyclic and i <= j:
                continue
            if i == j and not self_loops:
                continue
            if rng.random() < density:
                attacks.append((names[i], names[j]))
    return AttackGraph(names, attacks)


FAMILIES = {
    'chain': chain,
    'unattacked-cycle': unattacked_cycle,
    'attacked-cycle': attacked_cycle,
    'spider': spider,
    'random': random_graph,
}


def generate_family(kind, *args, **kwargs):
    try:
        factory = FAMILIES[kind]
    except KeyError:
        raise InvalidFamily("Unknown graph family '{0}'.".format(kind))
    return factory(*args, **kwargs)


class Edit(object):
    ADD = 'add'
    REMOVE = 'remove'
    LENGTHEN = 'lengthen'
    SHORTEN = 'shorten'

    KINDS = (ADD, REMOVE, LENGTHEN, SHORTEN)

    def __init__(self, kind, root, length=1, branch=None):
        if kind not in self.KINDS:
            raise EditError("Unknown edit '{0}'.".format(kind))
        self.kind = kind
        self.root = root
        # The new branch's length for ADD, the change in length for
        # LENGTHEN and SHORTEN.
        self.length = length
        # The leaf of the branch to act upon; None picks the first one.
        self.branch = branch

    def __repr__(self):
        return '<Edit: {0} root={1} length={2} branch={3}>'.format(
            self.kind, self.root, self.length, self.branch)


def private_branches(graph, root):
    """Branches of ``root`` that no other branch shares an argument with.

    Each is returned as a tuple of names from the leaf to the direct
    attacker of ``root``.
    """
    root_index = graph.index_of(root)
    branches = []
    for start in sorted(graph.attacker_indices(root_index)):
        path, node, private = [], start, True
        while True:
            if (node == root_index or node in path
                    or len(graph.target_indices(node)) != 1
                    or len(graph.attacker_indices(node)) > 1):
                private = False
                break
            path.append(node)
            attackers = graph.attacker_indices(node)
            if not attackers:
                break
            node = next(iter(attackers))
        if private:
            branches.append(tuple(graph.name_of(i) for i in reversed(path)))
    branches.sort(key=lambda b: graph.index_of(b[0]))
    return branches


def _fresh_names(graph, count):
    names, i = [], 0
    while len(names) < count:
        i += 1
        name = 'X{0}'.format(i)
        if name not in graph:
            names.append(name)
    return names


def _linked(names):
    return [(names[i], names[i + 1]) for i in range(len(names) - 1)]


def _select_branch(graph, edit):
    branches = private_branches(graph, edit.root)
    for branch in branches:
        if edit.branch is None or branch[0] == edit.branch:
            return branch
    raise EditError(
        "No removable branch{0} leads to '{1}'.".format(
            " starting at '{0}'".format(edit.branch) if edit.branch else '',
            edit.root))


def edit_graph(graph, edit):
    """Return a new graph with one simple branch edit applied to its root.

    Edits that would change a branch between attack and defence are
    rejected; they have to be expressed as a removal plus an addition.
    """
    graph.index_of(edit.root)

    if edit.kind == Edit.ADD:
        if edit.length < 1:
            raise EditError("An added branch has length >= 1.")
        fresh = _fresh_names(graph, edit.length)
        result = AttackGraph(
            graph.arguments + tuple(fresh),
            list(graph.attacks) + _linked(fresh + [edit.root]))

    elif edit.kind == Edit.REMOVE:
        branch = _select_branch(graph, edit)
        result = graph.restrict(n for n in graph if n not in branch)

    else:
        if edit.length < 1 or edit.length % 2:
            raise EditError(
                "Changing a branch's length by {0} changes its status;"
                " remove it and add a new one instead.".format(edit.length))
        branch = _select_branch(graph, edit)

        if edit.kind == Edit.LENGTHEN:
            fresh = _fresh_names(graph, edit.length)
            result = AttackGraph(
                graph.arguments + tuple(fresh),
                list(graph.attacks) + _linked(fresh + [branch[0]]))
        else:
            if edit.length >= len(branch):
                raise EditError(
                    "Cannot shorten a branch of length {0} by {1}.".format(
                        len(branch), edit.length))
            dropped = set(branch[:edit.length])
            result = graph.restrict(n for n in graph if n not in dropped)

    logger.debug("Applied {0!r}.".format(edit))
    return result
