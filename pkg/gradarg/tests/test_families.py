from __future__ import absolute_import
import os

from django.test import SimpleTestCase

from .. import exceptions, families, graph

PATH = os.path.dirname(__file__)


def load(name):
    with open(os.path.join(PATH, 'files', name)) as f:
        return graph.AttackGraph.from_file(f)


class FamilyTestCase(SimpleTestCase):
    def test_chain(self):
        g = families.chain(3)

        self.assertEqual(g.arguments, ('A1', 'A2', 'A3'))
        self.assertEqual(g.attacks, frozenset([('A2', 'A1'), ('A3', 'A2')]))
        self.assertEqual(g.leaves(), frozenset(['A3']))

        self.assertEqual(len(families.chain(1).attacks), 0)

    def test_unattacked_cycle(self):
        g = families.unattacked_cycle(3, sink=True)

        self.assertEqual(g.arguments, ('A1', 'A2', 'A3', 'C'))
        self.assertEqual(
            g.attacks,
            frozenset([('A1', 'A2'), ('A2', 'A3'), ('A3', 'A1'),
                       ('A1', 'C')]))
        self.assertTrue(g.find_mcycles()[0].is_isolated)

        self.assertEqual(families.unattacked_cycle(1).attacks,
                         frozenset([('A1', 'A1')]))

    def test_attacked_cycle(self):
        g = families.attacked_cycle(2, sinks=True)

        self.assertEqual(g.arguments, ('D', 'A1', 'A2', 'C1', 'C2'))
        self.assertEqual(
            g.attacks,
            frozenset([('D', 'A1'), ('A1', 'A2'), ('A2', 'A1'),
                       ('A1', 'C1'), ('A2', 'C2')]))
        mcycle, = g.find_mcycles()
        self.assertEqual(mcycle.inputs, frozenset(['A1']))

    def test_spider(self):
        g = families.spider([1, 2])

        self.assertEqual(g.arguments, ('A', 'L1_1', 'L2_1', 'L2_2'))
        self.assertEqual(
            g.attacks,
            frozenset([('L1_1', 'A'), ('L2_1', 'A'), ('L2_2', 'L2_1')]))
        self.assertTrue(g.is_well_founded())

    def test_random_spider(self):
        self.assertEqual(families.random_spider(3), families.random_spider(3))

        for seed in range(20):
            g = families.random_spider(seed)
            self.assertTrue(g.is_well_founded())
            self.assertTrue(1 <= len(g.direct_attackers('A')) <= 4)

    def test_random_graph(self):
        self.assertEqual(families.random_graph(11, 7, 0.3),
                         families.random_graph(11, 7, 0.3))
        self.assertEqual(families.random_graph(11, 7, 0).attacks, frozenset())
        self.assertEqual(len(families.random_graph(11, 4, 1).attacks), 16)

    def test_random_graph_options(self):
        for seed in range(30):
            g = families.random_graph(seed, 8, 0.4, acyclic=True)
            self.assertTrue(g.is_well_founded())

            g = families.random_graph(seed, 8, 0.4, self_loops=False)
            self.assertFalse(any(a == b for a, b in g.attacks))

        g = families.random_graph(0, 5, 1, acyclic=True)
        self.assertEqual(len(g.attacks), 10)

    def test_invalid(self):
        with self.assertRaises(exceptions.InvalidFamily):
            families.chain(0)
        with self.assertRaises(exceptions.InvalidFamily):
            families.chain('3')
        with self.assertRaises(exceptions.InvalidFamily):
            families.spider([])
        with self.assertRaises(exceptions.InvalidFamily):
            families.spider([2, 0])
        with self.assertRaises(exceptions.InvalidFamily):
            families.random_graph(0, 4, 1.5)
        with self.assertRaises(exceptions.InvalidFamily):
            families.generate_family('tree', 4)

    def test_generate_family(self):
        self.assertEqual(families.generate_family('chain', 4),
                         families.chain(4))
        self.assertEqual(
            families.generate_family('attacked-cycle', 3, sinks=True),
            families.attacked_cycle(3, sinks=True))
        self.assertEqual(families.generate_family('random', 5, 6, 0.2),
                         families.random_graph(5, 6, 0.2))


class EditTestCase(SimpleTestCase):
    def setUp(self):
        self.graph = load('example4.apx')

    def test_private_branches(self):
        self.assertEqual(
            families.private_branches(self.graph, 'A'),
            [('B4',), ('C4', 'B3'), ('D3', 'C3', 'B2')])
        self.assertEqual(families.private_branches(self.graph, 'E1'), [])

        # A cycle is never a branch.
        g = families.attacked_cycle(2)
        self.assertEqual(families.private_branches(g, 'A1'), [('D',)])

    def test_unknown_edit(self):
        with self.assertRaises(exceptions.EditError):
            families.Edit('prune', 'A')

    def test_unknown_root(self):
        with self.assertRaises(exceptions.UnknownArgument):
            families.edit_graph(self.graph,
                                families.Edit(families.Edit.ADD, 'Z'))

    def test_add(self):
        g = families.edit_graph(
            self.graph, families.Edit(families.Edit.ADD, 'A', length=2))

        self.assertEqual(g.arguments, self.graph.arguments + ('X1', 'X2'))
        self.assertEqual(g.attacks - self.graph.attacks,
                         frozenset([('X1', 'X2'), ('X2', 'A')]))
        self.assertEqual(len(self.graph), 13)

    def test_add_skips_used_names(self):
        g = graph.parse_framework("arg(X1). arg(a). att(X1,a).")
        g = families.edit_graph(g, families.Edit(families.Edit.ADD, 'a'))

        self.assertEqual(g.direct_attackers('a'), frozenset(['X1', 'X2']))

    def test_remove(self):
        g = families.edit_graph(
            self.graph,
            families.Edit(families.Edit.REMOVE, 'A', branch='C4'))

        self.assertEqual(len(g), 11)
        self.assertNotIn('B3', g)
        self.assertNotIn('C4', g)
        self.assertEqual(g.direct_attackers('A'),
                         frozenset(['B1', 'B2', 'B4']))

    def test_remove_first_branch(self):
        g = families.edit_graph(
            self.graph, families.Edit(families.Edit.REMOVE, 'A'))

        self.assertNotIn('B4', g)

    def test_remove_without_branch(self):
        with self.assertRaises(exceptions.EditError):
            families.edit_graph(
                families.chain(1),
                families.Edit(families.Edit.REMOVE, 'A1'))
        with self.assertRaises(exceptions.EditError):
            families.edit_graph(
                self.graph,
                families.Edit(families.Edit.REMOVE, 'A', branch='C1'))

    def test_lengthen(self):
        g = families.edit_graph(
            self.graph,
            families.Edit(families.Edit.LENGTHEN, 'A', length=2,
                          branch='C4'))

        self.assertEqual(g.attacks - self.graph.attacks,
                         frozenset([('X1', 'X2'), ('X2', 'C4')]))
        self.assertEqual(g.leaves() - self.graph.leaves(), frozenset(['X1']))

    def test_odd_length_changes(self):
        for kind in (families.Edit.LENGTHEN, families.Edit.SHORTEN):
            with self.assertRaises(exceptions.EditError):
                families.edit_graph(
                    self.graph,
                    families.Edit(kind, 'A', length=1, branch='D3'))

    def test_shorten(self):
        g = families.edit_graph(
            self.graph,
            families.Edit(families.Edit.SHORTEN, 'A', length=2,
                          branch='D3'))

        self.assertNotIn('D3', g)
        self.assertNotIn('C3', g)
        self.assertIn('B2', g.leaves())

        with self.assertRaises(exceptions.EditError):
            families.edit_graph(
                self.graph,
                families.Edit(families.Edit.SHORTEN, 'A', length=2,
                              branch='C4'))
