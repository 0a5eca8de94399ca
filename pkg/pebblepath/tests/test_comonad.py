import itertools
import unittest

from .. import comonad, config, exceptions, structures


class TestPlays(unittest.TestCase):
    def test_make_play_checks_index(self):
        with self.assertRaises(ValueError):
            comonad.make_play([(1, 0)], 2)
        with self.assertRaises(ValueError):
            comonad.make_play([], 1)

    def test_activity(self):
        seq = ((1, 0), (2, 1), (1, 2))
        self.assertEqual(comonad.active_map(seq), {1: 2, 2: 1})
        self.assertEqual(comonad.active_elements(seq), {1, 2})
        self.assertEqual(comonad.last_pebbled(seq, 1), 2)
        self.assertIsNone(comonad.last_pebbled(seq, 3))
        self.assertTrue(comonad.is_active_at(seq, 2, 3))
        self.assertFalse(comonad.is_active_at(seq, 1, 3), msg='Pebble 1 is moved at position 3')

    def test_nu_and_comultiplication(self):
        pl = comonad.make_play([(1, 0), (2, 1), (1, 2)], 2)
        self.assertEqual(comonad.nu(pl), ((1, 0), (2, 1)))
        dup = comonad.comultiplication(pl)
        self.assertEqual(dup.index, 2)
        self.assertEqual(dup.seq[2], (1, comonad.IndexedPlay(pl.seq, 3)))
        self.assertEqual(comonad.counit(dup), pl)
        self.assertEqual(comonad.delta_prime(((1, 0), (2, 1))), ((1, ((1, 0),)), (2, ((1, 0), (2, 1)))))

    def test_encoding(self):
        pl = comonad.make_play([(1, 0), (2, 1)], 2)
        self.assertEqual(comonad.encode_play(pl), '1:0;2:1@2')
        self.assertEqual(comonad.encode_play(pl, ('a', 'b')), '1:a;2:b@2')
        self.assertEqual(comonad.decode_play('1:a;2:b@2', {'a': 0, 'b': 1}), pl)
        with self.assertRaises(exceptions.FormatException):
            comonad.decode_play('1:a;2:b')
        with self.assertRaises(exceptions.FormatException):
            comonad.decode_seq('1:c', {'a': 0})


class TestLiftedStructure(unittest.TestCase):
    def test_carrier_size(self):
        self.assertEqual(comonad.carrier_size(1, 2, 1), 2)
        self.assertEqual(comonad.carrier_size(2, 2, 2), 36)
        pr = comonad.build_pr(structures.path(2), 2, 2)
        self.assertEqual(len(pr), 36)
        self.assertEqual(len(list(comonad.iter_carrier(2, 2, 2))), 36)

    def test_budget(self):
        with self.assertRaises(exceptions.BudgetExceededException):
            comonad.build_pr(structures.path(2), 2, 2, budget=10)

    def test_lifted_relation(self):
        a = structures.directed_edge()
        seq = ((1, 0), (2, 1))
        self.assertTrue(comonad.pr_tuple_holds(a, 'E', (comonad.IndexedPlay(seq, 1), comonad.IndexedPlay(seq, 2))))
        self.assertFalse(comonad.pr_tuple_holds(a, 'E', (comonad.IndexedPlay(seq, 2), comonad.IndexedPlay(seq, 1))))

        moved = ((1, 0), (1, 1))
        self.assertFalse(comonad.pr_tuple_holds(a, 'E', (comonad.IndexedPlay(moved, 1),
                                                         comonad.IndexedPlay(moved, 2))),
                         msg='The pebble on the source was lifted before the target was placed')

        other = ((1, 0), (2, 0))
        self.assertFalse(comonad.pr_tuple_holds(a, 'E', (comonad.IndexedPlay(seq, 1),
                                                         comonad.IndexedPlay(other, 2))),
                         msg='Plays from different sequences are never related')

    def test_materialized_agrees_with_predicate(self):
        a = structures.directed_edge()
        pr = comonad.build_pr(a, 2, 2)
        for x in pr.as_structure.universe:
            for y in pr.as_structure.universe:
                pair = (pr.carrier[x], pr.carrier[y])
                self.assertEqual(pr.holds('E', pair), comonad.pr_tuple_holds(a, 'E', pair),
                                 msg='Mismatch at {}'.format(pair))

    def test_p_materialized_agrees_with_predicate(self):
        a = structures.path(2)
        p, seqs = comonad.build_p(a, 2, 2)
        self.assertEqual(len(seqs), 20)
        for x in p.universe:
            for y in p.universe:
                self.assertEqual(p.holds('E', (x, y)), comonad.p_tuple_holds(a, 'E', (seqs[x], seqs[y])),
                                 msg='Mismatch at {}, {}'.format(seqs[x], seqs[y]))


class TestCoKleisli(unittest.TestCase):
    def test_counit_and_lifted_homs_are_morphisms(self):
        a = structures.path(2)
        pr = comonad.build_pr(a, 2, 2)
        self.assertTrue(comonad.is_sigma_morphism(pr, a, comonad.counit))
        swap = comonad.CoKleisliMap.lift_hom(a, 2, 2, (1, 0))
        self.assertTrue(comonad.is_sigma_morphism(pr, a, swap))
        const = comonad.CoKleisliMap(2, 2, {pl: 0 for pl in pr.carrier})
        self.assertFalse(comonad.is_sigma_morphism(pr, a, const))

    def test_coextension(self):
        pl = comonad.make_play([(1, 0), (2, 1)], 1)
        ext = comonad.coextension(lambda q: 5 if q.index == 2 else 7, pl)
        self.assertEqual(ext, comonad.IndexedPlay(((1, 7), (2, 5)), 1))

    def test_compose_with_counit(self):
        pl = comonad.make_play([(1, 0), (2, 1)], 2)

        def first(q):
            return q.seq[0][1]

        self.assertEqual(comonad.cokleisli_compose(comonad.counit, first)(pl), 0)
        self.assertEqual(comonad.cokleisli_compose(first, comonad.counit)(pl), 0)
        self.assertEqual(comonad.cokleisli_compose(comonad.counit, comonad.counit)(pl), 1)

    def test_laws_hold(self):
        report = comonad.check_comonad_laws(structures.path(2), 2, 2, seed=1, n_random=1)
        self.assertTrue(report.passed, msg='\n'.join(report.summary_lines()))
        self.assertEqual(report.summary_lines()[0], 'seed = 1')

    def test_laws_on_small_structures(self):
        seed, _ = config.get_probe_settings()
        small = [s for n in (1, 2) for s in structures.iter_structures({'E': 2}, n)]
        small.extend(structures.from_edges(3, edges, symmetric=True)
                     for r in range(4) for edges in itertools.combinations([(0, 1), (0, 2), (1, 2)], r))
        small.append(structures.from_edges(3, [(0, 1), (1, 2), (2, 0)]))
        small.append(structures.from_edges(3, [(0, 0), (0, 1), (1, 2)]))
        for a in small:
            for k in (1, 2):
                for n in (1, 2, 3):
                    report = comonad.check_comonad_laws(a, k, n, seed=seed, n_random=1)
                    self.assertTrue(report.passed, msg='k={}, n={} on {!r}:\n{}'.format(
                        k, n, a, '\n'.join(report.summary_lines())))

    def test_shifted_index_detected(self):
        def shifted_coextension(f, pl):
            ext = comonad.coextension(f, pl)
            return comonad.IndexedPlay(ext.seq, ext.index % len(ext.seq) + 1)

        report = comonad.check_comonad_laws(structures.path(2), 2, 2, seed=1, n_random=0,
                                            coextension_fxn=shifted_coextension)
        self.assertFalse(report.passed)
        self.assertFalse(report.results['coextension of counit is identity'])
        self.assertEqual(len(report.counterexamples['coextension of counit is identity'].seq), 2,
                         msg='Single placements cannot shift')

    def test_shifted_comultiplication_detected(self):
        def shifted_comultiplication(pl):
            dup = comonad.comultiplication(pl)
            return comonad.IndexedPlay(dup.seq, dup.index % len(dup.seq) + 1)

        report = comonad.check_comonad_laws(structures.directed_edge(), 1, 2, seed=1, n_random=0,
                                            comultiplication_fxn=shifted_comultiplication)
        self.assertFalse(report.results['counit after comultiplication'])
        self.assertFalse(report.results['mapped counit after comultiplication'])
        self.assertTrue(report.results['coextension of counit is identity'])

    def test_naturality_along_homomorphism(self):
        a = structures.path(3)
        fold = (structures.clique(2), (0, 1, 0))
        report = comonad.check_comonad_laws(a, 2, 2, seed=1, n_random=0, homs=[fold])
        self.assertTrue(report.passed, msg='\n'.join(report.summary_lines()))
        self.assertTrue(report.results['lifted homomorphism is a homomorphism'])
        self.assertTrue(report.results['counit naturality'])
        with self.assertRaises(exceptions.StructureException):
            comonad.check_comonad_laws(a, 1, 1, homs=[(structures.clique(2), (0, 0, 0))])

    def test_terminal_structure(self):
        t = comonad.terminal_structure(structures.Signature({'E': 2, 'R': 3}))
        self.assertEqual(t.tuples('R'), [(0, 0, 0)])
        self.assertTrue(structures.is_homomorphism(structures.clique(3), comonad.terminal_structure(
            structures.clique(3).signature), (0, 0, 0)))

    def test_broken_coextension_detected(self):
        def ignore_map(f, pl):
            return pl

        report = comonad.check_comonad_laws(structures.path(2), 1, 2, seed=1, n_random=0,
                                            coextension_fxn=ignore_map)
        self.assertFalse(report.passed)
        self.assertFalse(report.results['counit after coextension'])
        self.assertIn('counit after coextension', report.counterexamples)


if __name__ == '__main__':
    unittest.main()
