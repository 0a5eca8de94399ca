import unittest

import networkx as nx

from .. import comonad, decomposition, exceptions, structures


class TestValidation(unittest.TestCase):
    def test_valid_pd(self):
        pd = decomposition.PathDecomposition([{0, 1}, {1, 2}])
        result = decomposition.validate_pd(structures.path(3), pd)
        self.assertTrue(result)
        self.assertEqual(result.width, 1)

    def test_pd_clauses(self):
        p = structures.path(3)
        check = decomposition.validate_pd(p, decomposition.PathDecomposition([{0, 1}]))
        self.assertEqual((check.clause, check.witness), ('PD1', 2))
        check = decomposition.validate_pd(p, decomposition.PathDecomposition([{0, 1}, {2}]))
        self.assertEqual((check.clause, check.witness), ('PD2', (1, 2)))
        check = decomposition.validate_pd(p, decomposition.PathDecomposition([{0, 1}, {1, 2}, {0}]))
        self.assertEqual((check.clause, check.witness), ('PD3', (0, 0, 1, 2)))
        check = decomposition.validate_pd(p, decomposition.PathDecomposition([{0, 1, 2, 5}]))
        self.assertEqual(check.clause, 'range')
        with self.assertRaises(exceptions.DecompositionException):
            check.require()

    def test_empty_decomposition(self):
        self.assertEqual(decomposition.PathDecomposition([]).width, -1)
        self.assertTrue(decomposition.validate_pd(structures.discrete(0), decomposition.PathDecomposition([])))

    def test_trim(self):
        pd = decomposition.PathDecomposition([set(), {0}, {0}, {0, 1}])
        self.assertEqual(decomposition.trim_pd(pd), decomposition.PathDecomposition([{0}, {0, 1}]))

    def test_bad_cover(self):
        p = structures.path(3)
        cover = decomposition.LinearForestCover([(0, 1, 2)], {0: 1, 1: 1, 2: 2}, 2)
        check = decomposition.validate_cover(p, cover)
        self.assertEqual((check.clause, check.witness), ('FC2', (0, 1, 1)))
        split = decomposition.LinearForestCover([(0, 1), (2,)], {0: 1, 1: 2, 2: 1}, 2)
        self.assertEqual(decomposition.validate_cover(p, split).clause, 'FC1')
        short = decomposition.LinearForestCover([(0, 1)], {0: 1, 1: 2}, 2)
        self.assertEqual(decomposition.validate_cover(p, short).clause, 'partition')

    def test_bad_coalgebra(self):
        p = structures.path(2)
        alpha = {0: comonad.make_play([(1, 0)], 1), 1: comonad.make_play([(1, 1)], 1)}
        self.assertEqual(decomposition.validate_coalgebra(p, 1, alpha).clause, 'homomorphism')
        alpha = {0: comonad.make_play([(1, 1)], 1), 1: comonad.make_play([(1, 1)], 1)}
        self.assertEqual(decomposition.validate_coalgebra(p, 1, alpha).clause, 'counit')
        self.assertEqual(decomposition.validate_coalgebra(p, 1, {0: alpha[0]}).clause, 'plays')


class TestConversions(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.p3 = structures.path(3)
        cls.pd = decomposition.PathDecomposition([{0, 1}, {1, 2}])
        cls.cover = decomposition.pd_to_cover(cls.p3, cls.pd, 2)

    def test_section_family(self):
        family = decomposition.build_section_family(self.p3, self.pd, 2)
        self.assertEqual(family, [{0: 1, 1: 2}, {1: 2, 2: 1}])
        self.assertTrue(decomposition.check_section_family(self.pd, family, 2))
        clash = [{0: 1, 1: 2}, {1: 1, 2: 2}]
        self.assertEqual(decomposition.check_section_family(self.pd, clash, 2).clause, 'glue')
        with self.assertRaises(exceptions.DecompositionException):
            decomposition.build_section_family(self.p3, self.pd, 1)

    def test_pd_to_cover(self):
        self.assertEqual(self.cover.chains, ((0, 1, 2),))
        self.assertEqual(self.cover.pebbling, {0: 1, 1: 2, 2: 1})
        self.assertTrue(decomposition.validate_cover(self.p3, self.cover))

    def test_cover_to_pd(self):
        pd = decomposition.cover_to_pd(self.p3, self.cover)
        self.assertEqual(pd, decomposition.PathDecomposition([{0}, {0, 1}, {1, 2}]))
        self.assertEqual(decomposition.validate_pd(self.p3, pd).width, 1)

    def test_cover_coalgebra_round_trip(self):
        coalg = decomposition.cover_to_coalgebra(self.p3, self.cover)
        self.assertEqual(coalg(2), comonad.IndexedPlay(((1, 0), (2, 1), (1, 2)), 3))
        self.assertTrue(decomposition.validate_coalgebra(self.p3, 2, coalg))
        self.assertEqual(decomposition.coalgebra_to_cover(self.p3, 2, coalg), self.cover)

    def test_conversions_reject_invalid_input(self):
        p = structures.path(3)
        reused = decomposition.LinearForestCover([(0, 1, 2)], {0: 1, 1: 1, 2: 2}, 2)
        with self.assertRaises(exceptions.DecompositionException):
            decomposition.cover_to_coalgebra(p, reused)
        p2 = structures.path(2)
        alpha = {0: comonad.make_play([(1, 0)], 1), 1: comonad.make_play([(1, 1)], 1)}
        with self.assertRaises(exceptions.DecompositionException):
            decomposition.coalgebra_to_cover(p2, 1, alpha)
        with self.assertRaises(exceptions.DecompositionException):
            decomposition.coalgebra_to_cover(p2, 1, {0: alpha[0]})

    def test_canonical_and_padded(self):
        cover = decomposition.LinearForestCover([(2, 1, 0)], {2: 2, 1: 1, 0: 2}, 2)
        canon = decomposition.canonical_cover(cover)
        self.assertEqual(canon.pebbling, {2: 1, 1: 2, 0: 1})
        self.assertEqual(decomposition.pad_cover(cover, 3).k, 3)
        with self.assertRaises(ValueError):
            decomposition.pad_cover(cover, 1)

    def test_cover_morphism(self):
        self.assertTrue(decomposition.is_cover_morphism(self.p3, self.cover, self.p3, self.cover, (0, 1, 2)))
        self.assertFalse(decomposition.is_cover_morphism(self.p3, self.cover, self.p3, self.cover, (2, 1, 0)),
                         msg='Reversing the chain breaks monotonicity')


class TestPathwidth(unittest.TestCase):
    def test_known_widths(self):
        self.assertEqual(decomposition.pathwidth_exact(structures.clique(4)), 3)
        self.assertEqual(decomposition.pathwidth_exact(structures.cycle(4)), 2)
        self.assertEqual(decomposition.pathwidth_exact(structures.path(4)), 1)
        self.assertEqual(decomposition.pathwidth_exact(structures.discrete(3)), 0)
        self.assertEqual(decomposition.pathwidth_exact(structures.discrete(0)), 0)

    def test_returned_pd_is_optimal(self):
        a = structures.cycle(5)
        width, pd = decomposition.pathwidth_exact(a, return_pd=True)
        self.assertEqual(width, 2)
        self.assertEqual(decomposition.validate_pd(a, pd).width, 2)

    def test_coalgebra_number(self):
        for a, expected in [(structures.path(4), 2), (structures.clique(4), 4), (structures.cycle(4), 3),
                            (structures.discrete(2), 1), (structures.discrete(0), 1)]:
            self.assertEqual(decomposition.coalgebra_number(a), expected, msg='Wrong number for {!r}'.format(a))

    def test_coalgebra_number_matches_pathwidth(self):
        a = structures.from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)], symmetric=True)
        k, coalg = decomposition.coalgebra_number(a, return_coalgebra=True)
        self.assertEqual(k, decomposition.pathwidth_exact(a) + 1)
        self.assertTrue(decomposition.validate_coalgebra(a, k, coalg))

    def test_budget(self):
        with self.assertRaises(exceptions.BudgetExceededException):
            decomposition.pathwidth_exact(structures.clique(6), budget=2)

    def test_no_cover(self):
        self.assertIsNone(decomposition.find_cover(structures.clique(3), 2))
        self.assertIsNone(decomposition.find_cover(structures.cycle(4), 2))

    def test_found_cover_is_valid(self):
        a = structures.from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)], symmetric=True)
        cover = decomposition.find_cover(a, 2)
        self.assertIsNotNone(cover)
        self.assertTrue(decomposition.validate_cover(a, cover))
        cover = decomposition.find_cover(structures.cycle(4), 3)
        self.assertTrue(decomposition.validate_cover(structures.cycle(4), cover))
        self.assertEqual(decomposition.find_cover(structures.discrete(0), 1).chains, ())

    def test_cover_search_budget(self):
        with self.assertRaises(exceptions.BudgetExceededException):
            decomposition.find_cover(structures.clique(5), 4, budget=3)


class TestGraphAtlas(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.graphs = [structures.from_networkx(g) for g in nx.graph_atlas_g() if 0 < g.number_of_nodes() <= 5]

    def test_atlas_size(self):
        self.assertEqual(len(self.graphs), 52, msg='Expected every graph on one to five vertices')

    def test_coalgebra_number_is_pathwidth_plus_one(self):
        for a in self.graphs:
            width = decomposition.pathwidth_exact(a)
            self.assertEqual(decomposition.coalgebra_number(a), width + 1, msg='Mismatch for {!r}'.format(a))
            if width > 0:
                self.assertIsNone(decomposition.find_cover(a, width), msg='{!r} has pathwidth {}'.format(a, width))

    def test_conversions_round_trip(self):
        for a in self.graphs:
            width, pd = decomposition.pathwidth_exact(a, return_pd=True)
            k = width + 1
            cover = decomposition.pd_to_cover(a, pd, k)
            self.assertTrue(decomposition.validate_cover(a, cover), msg='Bad cover for {!r}'.format(a))
            self.assertEqual(decomposition.validate_pd(a, decomposition.cover_to_pd(a, cover)).width, width)

            for c in (cover, decomposition.find_cover(a, k)):
                coalg = decomposition.cover_to_coalgebra(a, c)
                self.assertTrue(decomposition.validate_coalgebra(a, k, coalg))
                self.assertEqual(decomposition.coalgebra_to_cover(a, k, coalg), c,
                                 msg='Round trip changed the cover of {!r}'.format(a))


if __name__ == '__main__':
    unittest.main()
