import unittest

import networkx as nx

from .. import exceptions, structures


class TestBuilders(unittest.TestCase):
    def test_signature_rejects_identity(self):
        with self.assertRaises(exceptions.SignatureException):
            structures.Signature({'E': 2, 'I': 2})
        sig = structures.Signature({'E': 2, 'I': 2}, plus=True)
        self.assertIn('I', sig)

    def test_signature_rejects_bad_arity(self):
        with self.assertRaises(exceptions.SignatureException):
            structures.Signature({'E': 0})

    def test_tuple_out_of_range(self):
        with self.assertRaises(exceptions.StructureException):
            structures.Structure({'E': 2}, 2, {'E': [(0, 2)]})

    def test_wrong_arity_tuple(self):
        with self.assertRaises(exceptions.StructureException):
            structures.Structure({'E': 2}, 3, {'E': [(0, 1, 2)]})

    def test_path_and_cycle(self):
        self.assertEqual(structures.path(3).tuples('E'), [(0, 1), (1, 0), (1, 2), (2, 1)])
        self.assertEqual(len(structures.cycle(4).relations['E']), 8)
        self.assertEqual(len(structures.clique(3).relations['E']), 6)

    def test_from_networkx(self):
        self.assertEqual(structures.from_networkx(nx.path_graph(3)), structures.path(3))
        self.assertEqual(structures.from_networkx(nx.cycle_graph(4)), structures.cycle(4))


class TestConstructions(unittest.TestCase):
    def test_gaifman_is_reflexive(self):
        g = structures.gaifman(structures.path(3))
        self.assertEqual(g.number_of_edges(), 5, msg='Expected 2 edges plus 3 self loops')
        self.assertEqual(structures.gaifman_edges(structures.path(3)), [(0, 1), (1, 2)])

    def test_gaifman_identity_edges(self):
        sig = structures.Signature({'E': 2, 'I': 2}, plus=True)
        s = structures.Structure(sig, 3, {'E': [(0, 1)], 'I': [(0, 0), (1, 1), (2, 2), (0, 2), (2, 0)]})
        self.assertEqual(structures.gaifman_edges(s), [(0, 1), (0, 2)], msg='I tuples should give Gaifman edges')
        self.assertEqual(structures.gaifman_edges(structures.reduct(s)), [(0, 1)],
                         msg='The reduct should drop the I edges')

    def test_gaifman_of_ternary(self):
        s = structures.Structure({'R': 3}, 4, {'R': [(0, 1, 2)]})
        self.assertEqual(structures.gaifman_edges(s), [(0, 1), (0, 2), (1, 2)])

    def test_induced_substructure(self):
        sub, emap = structures.induced_substructure(structures.path(4), [1, 2, 3], return_map=True)
        self.assertEqual(emap, {1: 0, 2: 1, 3: 2})
        self.assertEqual(sub, structures.path(3))
        self.assertEqual(sub.names, ('1', '2', '3'), msg='Names should follow the kept elements')

    def test_disjoint_union(self):
        u = structures.disjoint_union(structures.path(2), structures.path(2))
        self.assertEqual(u.tuples('E'), [(0, 1), (1, 0), (2, 3), (3, 2)])

    def test_expand_then_quotient(self):
        p = structures.path(3)
        plus = structures.j_expand(p)
        self.assertEqual(plus.tuples('I'), [(0, 0), (1, 1), (2, 2)])
        self.assertEqual(structures.i_quotient(plus), p)
        self.assertEqual(structures.reduct(plus), p)
        with self.assertRaises(exceptions.SignatureException):
            structures.j_expand(plus)

    def test_quotient_merges_classes(self):
        sig = structures.Signature({'E': 2, 'I': 2}, plus=True)
        s = structures.Structure(sig, 3, {'E': [(0, 2)], 'I': [(0, 0), (1, 1), (2, 2), (0, 1)]})
        q = structures.i_quotient(s)
        self.assertEqual(q.universe_size, 2)
        self.assertEqual(q.tuples('E'), [(0, 1)])
        self.assertEqual(q.names, ('0~1', '2'))


class TestMorphisms(unittest.TestCase):
    def test_hom_counts(self):
        self.assertEqual(structures.count_homs_bruteforce(structures.directed_edge(), structures.clique(3)), 6)
        self.assertEqual(structures.count_homs_bruteforce(structures.path(3), structures.clique(2)), 2)
        self.assertEqual(structures.count_homs_bruteforce(structures.clique(3), structures.clique(2)), 0)

    def test_homs_are_lexicographic(self):
        homs = structures.enumerate_homs(structures.path(3), structures.clique(2))
        self.assertEqual(homs, [(0, 1, 0), (1, 0, 1)])
        self.assertTrue(all(structures.is_homomorphism(structures.path(3), structures.clique(2), h) for h in homs))

    def test_partial_hom_modes(self):
        a = structures.directed_edge()
        b = structures.clique(3)
        self.assertTrue(structures.is_partial_hom(a, b, {(0, 0), (1, 1)}))
        self.assertFalse(structures.is_partial_hom(a, b, {(0, 0), (1, 0)}))
        self.assertFalse(structures.is_partial_hom(a, b, {(0, 0), (0, 1)}), msg='Not a function')
        self.assertTrue(structures.is_partial_hom(a, b, {(0, 0), (0, 1), (1, 2)}, mode=structures.RELATION_MODE))
        self.assertFalse(structures.is_partial_hom(a, b, {(0, 0), (0, 1), (1, 1)}, mode=structures.RELATION_MODE))

    def test_partial_iso(self):
        p = structures.path(3)
        self.assertTrue(structures.is_partial_iso(p, p, {(0, 2), (1, 1)}))
        self.assertFalse(structures.is_partial_iso(p, p, {(0, 0), (2, 1)}), msg='Edge reflected from nothing')
        self.assertFalse(structures.is_partial_iso(p, p, {(0, 1), (2, 1)}), msg='Not injective')

    def test_isomorphism(self):
        a = structures.from_edges(3, [(0, 1), (1, 2)], symmetric=True)
        b = structures.from_edges(3, [(0, 2), (2, 1)], symmetric=True)
        f = structures.find_isomorphism(a, b)
        self.assertIsNotNone(f)
        self.assertTrue(structures.is_isomorphism(a, b, f))
        self.assertFalse(structures.are_isomorphic(structures.path(3), structures.cycle(3)))


if __name__ == '__main__':
    unittest.main()
