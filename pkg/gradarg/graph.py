from __future__ import absolute_import
from collections import deque, namedtuple
import logging
import re

from django.utils.functional import cached_property

from .exceptions import (FrameworkSyntaxError, GraphHasCycles,
                         InvalidArgument, UnknownArgument)

logger = logging.getLogger(__name__)


ARGUMENT_ID = re.compile(r'^[A-Za-z0-9_]+$')

_TOKEN = re.compile(r'(?P<space>\s+)|(?P<comment>%[^\n]*)'
                    r'|(?P<ident>[A-Za-z0-9_]+)|(?P<punct>[(),.])')


PathQuery = namedtuple('PathQuery', ['source', 'target', 'length'])


class Mcycle(object):
    """A maximal group of interconnected elementary cycles.

    ``members`` is a non-trivial strongly connected component of the attack
    graph; ``inputs`` are the members with a direct attacker outside of it.
    """

    def __init__(self, members, inputs, simple=False):
        self.members = frozenset(members)
        self.inputs = frozenset(inputs)
        self.simple = simple

    def __repr__(self):
        return '<Mcycle members={0} inputs={1}>'.format(
            sorted(self.members), sorted(self.inputs))

    def __eq__(self, other):
        if not isinstance(other, Mcycle):
            return NotImplemented
        return (self.members, self.inputs) == (other.members, other.inputs)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.members, self.inputs))

    @property
    def is_isolated(self):
        return not self.inputs


def _tokenize(text):
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise FrameworkSyntaxError(
                "Unexpected character {0!r}".format(text[pos]),
                line, pos - line_start + 1)
        kind = match.lastgroup
        if kind in ('ident', 'punct'):
            yield kind, match.group(), line, pos - line_start + 1
        elif kind == 'space':
            chunk = match.group()
            newlines = chunk.count('\n')
            if newlines:
                line += newlines
                line_start = pos + chunk.rindex('\n') + 1
        pos = match.end()
    yield 'end', '', line, pos - line_start + 1


class _FrameworkParser(object):
    def __init__(self, text):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def next(self):
        token = self.tokens[self.pos]
        if token[0] != 'end':
            self.pos += 1
        return token

    def expect(self, value):
        kind, found, line, column = self.next()
        if found != value:
            raise FrameworkSyntaxError(
                "Expected '{0}', found {1}".format(
                    value, repr(found) if found else 'end of input'),
                line, column)

    def identifier(self):
        kind, found, line, column = self.next()
        if kind != 'ident':
            raise FrameworkSyntaxError(
                "Expected an argument identifier, found {0}".format(
                    repr(found) if found else 'end of input'),
                line, column)
        return found, line, column

    def parse(self):
        arguments, attacks = [], []
        while self.tokens[self.pos][0] != 'end':
            keyword, line, column = self.identifier()
            if keyword == 'arg':
                self.expect('(')
                name, _, _ = self.identifier()
                self.expect(')')
                self.expect('.')
                arguments.append(name)
            elif keyword == 'att':
                self.expect('(')
                attacker, _, _ = self.identifier()
                self.expect(',')
                attacked, _, _ = self.identifier()
                self.expect(')')
                self.expect('.')
                attacks.append((attacker, attacked, line, column))
            else:
                raise FrameworkSyntaxError(
                    "Expected 'arg' or 'att', found '{0}'".format(keyword),
                    line, column)

        declared = set(arguments)
        for attacker, attacked, line, column in attacks:
            for name in (attacker, attacked):
                if name not in declared:
                    raise FrameworkSyntaxError(
                        "Attack references undeclared argument"
                        " '{0}'".format(name), line, column)

        return AttackGraph(arguments, [(a, b) for a, b, _, _ in attacks])


def parse_framework(text):
    return _FrameworkParser(text).parse()


def strongly_connected(successors):
    # Iterative Tarjan.  Components come out in reverse topological order
    # of the traversed edges.
    count = len(successors)
    index, low = [None] * count, [0] * count
    on_stack = [False] * count
    stack, result = [], []
    counter = 0

    for root in range(count):
        if index[root] is not None:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, iter(sorted(successors[root])))]

        while work:
            node, children = work[-1]
            descended = False
            for child in children:
                if index[child] is None:
                    index[child] = low[child] = counter
                    counter += 1
                    stack.append(child)
                    on_stack[child] = True
                    work.append((child, iter(sorted(successors[child]))))
                    descended = True
                    break
                elif on_stack[child]:
                    low[node] = min(low[node], index[child])
            if descended:
                continue

            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack[member] = False
                    component.append(member)
                    if member == node:
                        break
                result.append(tuple(sorted(component)))

    return result


class AttackGraph(object):
    """An argumentation system: arguments plus a binary attack relation.

    Arguments keep their declaration order and get a dense integer index in
    that order; the ``*_indices`` accessors expose the index-level adjacency
    used by the valuation engines.  Instances are never mutated.
    """

    def __init__(self, arguments, attacks=()):
        names, index = [], {}
        for name in arguments:
            if not isinstance(name, str) or not ARGUMENT_ID.match(name):
                raise InvalidArgument(
                    "Invalid argument identifier {0!r}.".format(name))
            if name not in index:
                index[name] = len(names)
                names.append(name)

        attackers = [set() for name in names]
        targets = [set() for name in names]
        pairs = set()
        for attacker, attacked in attacks:
            for name in (attacker, attacked):
                if name not in index:
                    raise UnknownArgument(name)
            pairs.add((attacker, attacked))
            attackers[index[attacked]].add(index[attacker])
            targets[index[attacker]].add(index[attacked])

        self._names = tuple(names)
        self._index = index
        self._attacks = frozenset(pairs)
        self._attackers = tuple(frozenset(s) for s in attackers)
        self._targets = tuple(frozenset(s) for s in targets)

    @classmethod
    def parse(cls, text):
        return parse_framework(text)

    @classmethod
    def from_file(cls, _file):
        try:
            data = _file.read()
            if isinstance(data, bytes):
                data = data.decode('utf-8')
        except UnicodeDecodeError as e:
            before = e.object[:e.start]
            raise FrameworkSyntaxError(
                "Invalid UTF-8 byte 0x{0:02x}".format(e.object[e.start]),
                before.count(b'\n') + 1,
                e.start - before.rfind(b'\n'))
        return cls.parse(data)

    def __repr__(self):
        return '<AttackGraph: {0} arguments, {1} attacks>'.format(
            len(self._names), len(self._attacks))

    def __len__(self):
        return len(self._names)

    def __iter__(self):
        return iter(self._names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        if not isinstance(other, AttackGraph):
            return NotImplemented
        return (self._names, self._attacks) == (other._names, other._attacks)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self._names, self._attacks))

    @property
    def arguments(self):
        return self._names

    @property
    def attacks(self):
        return self._attacks

    def sorted_attacks(self):
        return sorted(self._attacks)

    def index_of(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownArgument(name)

    def name_of(self, i):
        return self._names[i]

    def attacker_indices(self, i):
        return self._attackers[i]

    def target_indices(self, i):
        return self._targets[i]

    def _names_of(self, indices):
        return frozenset(self._names[i] for i in indices)

    # Branch queries.

    def direct_attackers(self, name):
        return self._names_of(self._attackers[self.index_of(name)])

    def attacked_by(self, name):
        return self._names_of(self._targets[self.index_of(name)])

    def _length_classes(self, name):
        # Walk backwards from the argument, tracking path lengths exactly up
        # to 3 and by parity above: 4 is "even, >= 4", 5 is "odd, >= 5".
        start = (self.index_of(name), 0)
        seen = {start}
        queue = deque([start])
        while queue:
            node, length = queue.popleft()
            step = length + 1 if length < 4 else 9 - length
            for attacker in self._attackers[node]:
                state = (attacker, step)
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
        classes = {}
        for node, length in seen:
            classes.setdefault(length, set()).add(node)
        return classes

    def direct_defenders(self, name):
        return self._names_of(self._length_classes(name).get(2, ()))

    def indirect_attackers(self, name):
        classes = self._length_classes(name)
        return self._names_of(classes.get(3, set()) | classes.get(5, set()))

    def indirect_defenders(self, name):
        return self._names_of(self._length_classes(name).get(4, ()))

    def has_path(self, query):
        target = self.index_of(query.target)
        current = {self.index_of(query.source)}
        for step in range(query.length):
            current = set().union(*(self._targets[i] for i in current))
            if not current:
                return False
        return target in current

    @cached_property
    def leaf_indices(self):
        return frozenset(i for i, attackers in enumerate(self._attackers)
                         if not attackers)

    def leaves(self):
        return self._names_of(self.leaf_indices)

    # Structure.

    @cached_property
    def _components(self):
        # Traversing attacker edges yields attackers' components first.
        return tuple(strongly_connected(self._attackers))

    def condensation(self):
        """Strongly connected components, attackers before the attacked."""
        return self._components

    def is_cyclic_component(self, component):
        return (len(component) > 1
                or component[0] in self._attackers[component[0]])

    @cached_property
    def _mcycles(self):
        mcycles = []
        for component in self._components:
            if not self.is_cyclic_component(component):
                continue
            members = set(component)
            inputs = [i for i in component
                      if not self._attackers[i] <= members]
            internal = sum(len(self._attackers[i] & members)
                           for i in component)
            mcycles.append(Mcycle(
                (self._names[i] for i in component),
                (self._names[i] for i in inputs),
                simple=internal == len(component)))
        mcycles.sort(key=lambda m: min(self._index[n] for n in m.members))
        return tuple(mcycles)

    def find_mcycles(self):
        return list(self._mcycles)

    def is_well_founded(self):
        return not self._mcycles

    def topological_order(self):
        if not self.is_well_founded():
            raise GraphHasCycles(
                "The attack graph contains {0} mcycle(s).".format(
                    len(self._mcycles)))
        return tuple(component[0] for component in self._components)

    def has_odd_cycle(self):
        for component in self._components:
            if not self.is_cyclic_component(component):
                continue
            members = set(component)
            parity = {component[0]: 0}
            queue = deque([component[0]])
            while queue:
                node = queue.popleft()
                for target in self._targets[node] & members:
                    if target not in parity:
                        parity[target] = 1 - parity[node]
                        queue.append(target)
                    elif parity[target] == parity[node]:
                        return True
        return False

    def restrict(self, names):
        keep = set(names)
        for name in keep:
            self.index_of(name)
        return AttackGraph(
            [n for n in self._names if n in keep],
            [(a, b) for a, b in self._attacks if a in keep and b in keep])

    # Output.

    def serialize(self):
        lines = ['arg({0}).'.format(name) for name in self._names]
        lines.extend('att({0},{1}).'.format(a, b)
                     for a, b in self.sorted_attacks())
        return '\n'.join(lines) + '\n'

    def to_dot(self, name='framework'):
        lines = ['digraph {0} {{'.format(name)]
        lines.extend('    "{0}";'.format(n) for n in self._names)
        lines.extend('    "{0}" -> "{1}";'.format(a, b)
                     for a, b in self.sorted_attacks())
        lines.append('}')
        return '\n'.join(lines) + '\n'
