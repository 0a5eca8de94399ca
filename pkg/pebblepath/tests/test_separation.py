import unittest

from .. import games, separation, structures


class TestOneSidedGame(unittest.TestCase):
    def test_triangle(self):
        k3, k2 = structures.clique(3), structures.clique(2)
        self.assertEqual(separation.decide_one_sided_pebble(k3, k2, 2), games.DUPLICATOR)
        self.assertEqual(separation.decide_one_sided_pebble(k3, k2, 3), games.SPOILER)

    def test_tree_into_hom_target(self):
        self.assertEqual(separation.decide_one_sided_pebble(structures.path(4), structures.clique(2), 2),
                         games.DUPLICATOR)


class TestSeparation(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.a, cls.b = next(separation.hub_candidates())

    def test_hub_pair_shape(self):
        self.assertEqual(self.a.universe_size, 7)
        self.assertEqual(self.b.universe_size, 8)
        self.assertEqual(self.a.tuples('R'), [(2,), (6,)])
        self.assertEqual(self.b.tuples('R'), [(6,)], msg='The two red legs should share one end')
        self.assertEqual(self.b.tuples('G'), [(7,)])
        self.assertEqual(self.b.tuples('E'), [(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5), (3, 6), (4, 7), (6, 5)])
        self.assertEqual(structures.count_homs_bruteforce(self.a, self.b), 0)

    def test_size_bound(self):
        for a, b in separation.hub_candidates():
            self.assertLessEqual(a.universe_size, 8)
            self.assertLessEqual(b.universe_size, 8)
        a, b = separation.find_separation(k=2)
        self.assertLessEqual(max(a.universe_size, b.universe_size), 8)
        self.assertIsNone(separation.find_separation(k=2, max_vertices=7),
                          msg='Only the 8 vertex pair separates among the hand-built candidates')

    def test_games_disagree(self):
        self.assertEqual(separation.decide_one_sided_pebble(self.a, self.b, 2), games.SPOILER)
        self.assertTrue(games.decide_all_in_one(self.a, self.b, 2).duplicator_wins)
        self.assertTrue(separation.is_separating(self.a, self.b, 2))

    def test_two_legs_do_not_separate(self):
        candidates = list(separation.hub_candidates())
        a, b = candidates[1]
        self.assertFalse(separation.is_separating(a, b, 2))

    def test_find_separation(self):
        found = separation.find_separation(k=2)
        self.assertIsNotNone(found)
        self.assertEqual(found[0], self.a)
        self.assertEqual(found[1], self.b)

    def test_random_candidates_repeatable(self):
        first = list(separation.random_candidates(3, max_vertices=4, seed=5))
        second = list(separation.random_candidates(3, max_vertices=4, seed=5))
        self.assertEqual(first, second)
        self.assertTrue(all(1 <= len(a) <= 4 and 1 <= len(b) <= 4 for a, b in first))


if __name__ == '__main__':
    unittest.main()
