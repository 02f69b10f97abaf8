from __future__ import absolute_import
import io
import os
import random

from django.test import SimpleTestCase

from .. import exceptions, families, graph

PATH = os.path.dirname(__file__)


def load(name):
    with open(os.path.join(PATH, 'files', name)) as f:
        return graph.AttackGraph.from_file(f)


def on_some_cycle(g, name):
    # Can the argument reach itself again?
    seen, stack = set(), list(g.attacked_by(name))
    while stack:
        node = stack.pop()
        if node == name:
            return True
        if node not in seen:
            seen.add(node)
            stack.extend(g.attacked_by(node))
    return False


class ParseFrameworkTestCase(SimpleTestCase):
    def test_simple(self):
        g = graph.parse_framework("arg(a). arg(b). att(a,b).")

        self.assertEqual(g.arguments, ('a', 'b'))
        self.assertEqual(g.attacks, frozenset([('a', 'b')]))

    def test_self_attack(self):
        g = graph.parse_framework("arg(a). att(a,a).")

        self.assertEqual(g.attacks, frozenset([('a', 'a')]))
        self.assertEqual(g.direct_attackers('a'), frozenset(['a']))

    def test_undeclared_argument(self):
        with self.assertRaises(exceptions.FrameworkSyntaxError) as cm:
            graph.parse_framework("att(a,b).")
        self.assertEqual((cm.exception.line, cm.exception.column), (1, 1))

        with self.assertRaises(exceptions.FrameworkSyntaxError) as cm:
            graph.parse_framework("arg(a).\natt(a,b).")
        self.assertEqual((cm.exception.line, cm.exception.column), (2, 1))
        self.assertIn("'b'", str(cm.exception))

    def test_declared_after_use(self):
        g = graph.parse_framework("att(a,b). arg(b). arg(a).")

        self.assertEqual(g.arguments, ('b', 'a'))
        self.assertEqual(g.attacks, frozenset([('a', 'b')]))

    def test_syntax_error_position(self):
        with self.assertRaises(exceptions.FrameworkSyntaxError) as cm:
            graph.parse_framework("arg(a).\narg(b) att(a,b).")

        self.assertEqual(cm.exception.line, 2)
        self.assertEqual(cm.exception.column, 8)
        self.assertEqual(
            str(cm.exception),
            "Expected '.', found 'att' (line 2, column 8)")

    def test_unexpected_character(self):
        with self.assertRaises(exceptions.FrameworkSyntaxError) as cm:
            graph.parse_framework("arg(a-b).")
        self.assertEqual((cm.exception.line, cm.exception.column), (1, 6))

    def test_unknown_statement(self):
        with self.assertRaises(exceptions.FrameworkSyntaxError):
            graph.parse_framework("argument(a).")

    def test_truncated_input(self):
        with self.assertRaises(exceptions.FrameworkSyntaxError) as cm:
            graph.parse_framework("arg(a). att(a,")
        self.assertIn('end of input', str(cm.exception))

    def test_comments_and_whitespace(self):
        g = graph.parse_framework(
            "% a comment\n"
            "  arg( a ) .arg(b).   % trailing comment\n"
            "\tatt(\na ,b\n).\n")

        self.assertEqual(g, graph.parse_framework("arg(a).arg(b).att(a,b)."))

    def test_duplicates(self):
        g = graph.parse_framework(
            "arg(a). arg(b). arg(a). att(a,b). att(a,b).")

        self.assertEqual(g.arguments, ('a', 'b'))
        self.assertEqual(len(g.attacks), 1)

    def test_keywords_as_identifiers(self):
        g = graph.parse_framework("arg(arg). arg(att). att(arg,att).")

        self.assertEqual(g.direct_attackers('att'), frozenset(['arg']))

    def test_empty(self):
        g = graph.parse_framework("% nothing here\n")

        self.assertEqual(len(g), 0)
        self.assertTrue(g.is_well_founded())

    def test_from_file(self):
        g = graph.AttackGraph.from_file(io.BytesIO(b"arg(a). att(a,a)."))

        self.assertEqual(g.arguments, ('a',))

        g = load('example1.apx')
        self.assertEqual(g.arguments, ('A1', 'A2', 'A3', 'A4'))

    def test_invalid_utf8(self):
        with self.assertRaises(exceptions.FrameworkSyntaxError) as cm:
            graph.AttackGraph.from_file(io.BytesIO(b"arg(a).\n% caf\xe9\n"))

        self.assertEqual((cm.exception.line, cm.exception.column), (2, 6))
        self.assertEqual(str(cm.exception),
                         "Invalid UTF-8 byte 0xe9 (line 2, column 6)")


class AttackGraphTestCase(SimpleTestCase):
    def test_invalid_identifier(self):
        with self.assertRaises(exceptions.InvalidArgument):
            graph.AttackGraph(['a-b'])
        with self.assertRaises(exceptions.InvalidArgument):
            graph.AttackGraph([''])

    def test_unknown_argument(self):
        g = load('example1.apx')

        with self.assertRaises(exceptions.UnknownArgument) as cm:
            g.direct_attackers('Z')
        self.assertEqual(cm.exception.name, 'Z')

        with self.assertRaises(exceptions.UnknownArgument):
            graph.AttackGraph(['a'], [('a', 'b')])

    def test_direct_attackers(self):
        g = load('example1.apx')

        self.assertEqual(g.direct_attackers('A3'), frozenset(['A2', 'A4']))
        self.assertEqual(g.direct_attackers('A1'), frozenset())
        self.assertEqual(g.attacked_by('A1'), frozenset(['A2']))

    def test_attack_relation_consistency(self):
        g = load('example2.apx')

        for a in g:
            for b in g:
                self.assertEqual(b in g.direct_attackers(a),
                                 (b, a) in g.attacks)
                self.assertEqual(b in g.direct_attackers(a),
                                 a in g.attacked_by(b))

    def test_example2_branches(self):
        g = load('example2.apx')

        self.assertTrue(g.has_path(graph.PathQuery('C2', 'A', 2)))
        self.assertTrue(g.has_path(graph.PathQuery('D1', 'A', 3)))
        self.assertFalse(g.has_path(graph.PathQuery('D1', 'A', 2)))
        self.assertTrue(g.has_path(graph.PathQuery('A', 'A', 0)))
        self.assertEqual(g.leaves(), frozenset(['D1', 'C2', 'E1']))
        self.assertEqual(g.direct_attackers('A'),
                         frozenset(['C2', 'B1', 'B2']))
        self.assertEqual(g.direct_defenders('A'),
                         frozenset(['C1', 'C2', 'C3']))
        self.assertEqual(g.indirect_attackers('A'), frozenset(['D1', 'D2']))
        self.assertEqual(g.indirect_defenders('A'), frozenset(['E1']))

    def test_defenders_through_cycles(self):
        g = families.unattacked_cycle(3)

        # Every walk length is reachable inside a 3-cycle.
        self.assertEqual(g.indirect_attackers('A1'),
                         frozenset(['A1', 'A2', 'A3']))
        self.assertEqual(g.indirect_defenders('A1'),
                         frozenset(['A1', 'A2', 'A3']))
        self.assertEqual(g.direct_defenders('A1'), frozenset(['A2']))

    def test_short_chain(self):
        g = graph.parse_framework("arg(a). arg(b). att(b,a).")

        self.assertEqual(g.indirect_attackers('a'), frozenset())
        self.assertEqual(g.direct_defenders('a'), frozenset())

    def test_leaves(self):
        self.assertEqual(load('example1.apx').leaves(),
                         frozenset(['A1', 'A4']))
        self.assertEqual(
            graph.parse_framework("arg(a). att(a,a).").leaves(), frozenset())

    def test_mcycles(self):
        g = load('mcycles.apx')
        mcycles = g.find_mcycles()

        self.assertEqual(
            [m.members for m in mcycles],
            [frozenset('BCDE'), frozenset('FG'), frozenset('IJKL')])
        self.assertEqual(
            [m.inputs for m in mcycles],
            [frozenset('B'), frozenset('F'), frozenset('I')])
        self.assertEqual([m.simple for m in mcycles], [False, True, False])
        self.assertFalse(g.is_well_founded())

    def test_mcycles_acyclic(self):
        g = load('example4.apx')

        self.assertEqual(g.find_mcycles(), [])
        self.assertTrue(g.is_well_founded())

    def test_isolated_cycle(self):
        g = graph.parse_framework("arg(a). arg(b). att(a,b). att(b,a).")
        mcycle, = g.find_mcycles()

        self.assertEqual(mcycle.members, frozenset(['a', 'b']))
        self.assertEqual(mcycle.inputs, frozenset())
        self.assertTrue(mcycle.is_isolated)
        self.assertTrue(mcycle.simple)
        self.assertFalse(g.is_well_founded())

    def test_interconnected_cycles(self):
        g = load('example2.apx')
        mcycle, = g.find_mcycles()

        self.assertEqual(mcycle.members, frozenset(['A1', 'A2', 'A3', 'A4']))
        self.assertEqual(mcycle.inputs, frozenset(['A1']))
        self.assertFalse(mcycle.simple)
        self.assertFalse(mcycle.is_isolated)

    def test_self_attacker_is_an_mcycle(self):
        g = graph.parse_framework("arg(a). att(a,a).")

        self.assertFalse(g.is_well_founded())
        self.assertEqual(len(g.find_mcycles()), 1)

    def test_condensation_order(self):
        for seed in range(50):
            g = families.random_graph(seed, 8, 0.25)
            position = {}
            for n, component in enumerate(g.condensation()):
                for i in component:
                    position[g.name_of(i)] = n

            self.assertEqual(len(position), len(g))
            for a, b in g.attacks:
                self.assertLessEqual(position[a], position[b])

    def test_topological_order(self):
        g = load('example4.apx')
        order = [g.name_of(i) for i in g.topological_order()]

        for a, b in g.attacks:
            self.assertLess(order.index(a), order.index(b))

        with self.assertRaises(exceptions.GraphHasCycles):
            load('example7.apx').topological_order()

    def test_odd_cycles(self):
        self.assertTrue(families.unattacked_cycle(3).has_odd_cycle())
        self.assertFalse(families.unattacked_cycle(4).has_odd_cycle())
        self.assertTrue(families.unattacked_cycle(1).has_odd_cycle())
        self.assertTrue(load('example2.apx').has_odd_cycle())
        self.assertFalse(load('example8.apx').has_odd_cycle())
        self.assertFalse(load('example4.apx').has_odd_cycle())

        # An even and an odd cycle sharing an argument.
        g = graph.parse_framework(
            "arg(a). arg(b). arg(c). att(a,b). att(b,a). att(b,c). att(c,a).")
        self.assertTrue(g.has_odd_cycle())

    def test_restrict(self):
        g = load('example4.apx')
        hatched = g.restrict(['A', 'B1', 'C1', 'C2', 'D1', 'D2', 'E1'])

        self.assertEqual(hatched, load('example4_hatched.apx'))
        self.assertEqual(len(g), 13)

    def test_random_graph_properties(self):
        rng = random.Random(7)
        for trial in range(100):
            g = families.random_graph(rng.getrandbits(32),
                                      rng.randint(1, 9), rng.uniform(0, 0.4))
            mcycles = g.find_mcycles()
            members = [m.members for m in mcycles]

            for a in g:
                self.assertEqual(a in g.leaves(),
                                 g.direct_attackers(a) == frozenset())
            for m in mcycles:
                self.assertTrue(m.inputs <= m.members)
            self.assertEqual(sum(len(m) for m in members),
                             len(frozenset().union(*members)))
            self.assertEqual(frozenset().union(*members),
                             frozenset(a for a in g if on_some_cycle(g, a)))
            self.assertEqual(g.is_well_founded(), not mcycles)


class SerializationTestCase(SimpleTestCase):
    def test_serialize(self):
        self.assertEqual(
            load('example1.apx').serialize(),
            "arg(A1).\narg(A2).\narg(A3).\narg(A4).\n"
            "att(A1,A2).\natt(A2,A3).\natt(A4,A3).\n")

    def test_round_trip(self):
        for name in ('example1.apx', 'example2.apx', 'example8.apx',
                     'mcycles.apx'):
            g = load(name)
            self.assertEqual(graph.parse_framework(g.serialize()), g)

        for seed in range(20):
            g = families.random_graph(seed, 6, 0.3)
            self.assertEqual(graph.AttackGraph.parse(g.serialize()), g)

    def test_to_dot(self):
        self.assertEqual(
            load('example7.apx').to_dot(),
            'digraph framework {\n'
            '    "A";\n'
            '    "B";\n'
            '    "C";\n'
            '    "A" -> "B";\n'
            '    "A" -> "C";\n'
            '    "B" -> "A";\n'
            '}\n')
