import itertools
import os
import unittest

import numpy as np

from .. import config, exceptions, formula_io, games, logic, structures
from ..logic import And, AndPair, Atom, CountExact, Exists, ExistsGeq, ExistsLeq, NegAtom, Or
from . import _test_data_dir


def _edge(u, v):
    return Atom('E', (u, v))


class TestRestriction(unittest.TestCase):
    def test_one_quantified_conjunct(self):
        sentence = Exists('x', Exists('y', _edge('x', 'y')))
        f = And([_edge('x', 'y'), sentence, Exists('y', _edge('y', 'x'))])
        self.assertTrue(logic.validate_restricted(f))

    def test_two_quantified_conjuncts(self):
        f = And([Exists('y', _edge('y', 'x')), Exists('y', _edge('x', 'y'))])
        check = logic.validate_restricted(f)
        self.assertFalse(check)
        self.assertEqual(check.path, [])

    def test_paired_counting_quantifiers(self):
        psi = _edge('y', 'x')
        self.assertTrue(logic.validate_restricted(And([ExistsLeq(2, 'y', psi), ExistsGeq(2, 'y', psi)])))

    def test_variable_bound(self):
        f = Exists('x', Exists('y', Exists('z', Atom('R', ('x', 'y', 'z')))))
        self.assertTrue(logic.validate_restricted(f, k=3))
        self.assertFalse(logic.validate_restricted(f, k=2))

    def test_nested_violation_path(self):
        bad = And([Exists('y', _edge('y', 'x')), Exists('y', _edge('x', 'y'))])
        check = logic.validate_restricted(Exists('x', bad))
        self.assertEqual(check.path, [0])

    def test_variables(self):
        f = ExistsLeq(1, 'y', And([_edge('x', 'y'), NegAtom('E', ('y', 'y'))]))
        self.assertEqual(logic.free_variables(f), frozenset(['x']))
        self.assertEqual(logic.variables(f), frozenset(['x', 'y']))
        self.assertEqual(logic.quantifier_rank(Exists('x', f)), 2)
        self.assertFalse(logic.is_sentence(f))


class TestModelCheck(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.k2 = structures.clique(2)
        cls.k3 = structures.clique(3)
        cls.some_edge = Exists('x', Exists('y', _edge('x', 'y')))

    def test_existential(self):
        self.assertTrue(logic.model_check(self.k2, {}, self.some_edge))
        self.assertFalse(logic.model_check(structures.discrete(2), {}, self.some_edge))

    def test_counting(self):
        f = ExistsGeq(3, 'x', Exists('y', _edge('x', 'y')))
        self.assertTrue(logic.model_check(self.k3, {}, f))
        self.assertFalse(logic.model_check(self.k2, {}, f))

    def test_counting_thresholds_complement(self):
        body = _edge('x', 'y')
        for m in range(4):
            for x in self.k3.universe:
                leq = logic.model_check(self.k3, {'x': x}, ExistsLeq(m, 'y', body))
                geq = logic.model_check(self.k3, {'x': x}, ExistsGeq(m + 1, 'y', body))
                self.assertEqual(leq, not geq, msg='Thresholds {} and {} overlap'.format(m, m + 1))

    def test_equality_atom(self):
        f = ExistsGeq(2, 'y', NegAtom('=', ('x', 'y')))
        self.assertTrue(logic.model_check(self.k3, {'x': 0}, f))
        self.assertFalse(logic.model_check(self.k2, {'x': 0}, f))

    def test_unbound_variable(self):
        with self.assertRaises(exceptions.UnboundVariableException):
            logic.model_check(self.k2, {'x': 0}, _edge('x', 'y'))

    def test_translated(self):
        self.assertTrue(logic.model_check_translated(self.k3, {}, CountExact(0, 'x', (), (), _edge('x', 'x'))))
        out_degree_two = CountExact(2, 'y', (), (), _edge('x', 'y'))
        self.assertTrue(logic.model_check_translated(self.k3, {}, CountExact(3, 'x', (), (), out_degree_two)))
        self.assertTrue(logic.model_check_translated(self.k3, {}, AndPair((), ())))

    def test_count_exact_leaves_outer_variable(self):
        # x in X refers to the outer assignment even though the count binds x
        f = CountExact(1, 'x', [Atom('=', ('x', 'y'))], (), _edge('x', 'y'))
        self.assertTrue(logic.model_check_translated(self.k2, {'x': 1, 'y': 1}, f))
        self.assertFalse(logic.model_check_translated(self.k2, {'x': 0, 'y': 1}, f))


class TestTranslations(unittest.TestCase):
    def test_at_most_one(self):
        psi = _edge('y', 'x')
        expected = Or([CountExact(0, 'y', (), (), psi), CountExact(1, 'y', (), (), psi)])
        self.assertEqual(logic.translate_T(ExistsLeq(1, 'y', psi)), expected)

    def test_exact_back(self):
        psi = _edge('y', 'x')
        loop = _edge('x', 'x')
        f = CountExact(2, 'y', [loop], (), psi)
        self.assertEqual(logic.translate_U(f), And([loop, ExistsLeq(2, 'y', psi), ExistsGeq(2, 'y', psi)]))

    def test_quantifier_free(self):
        f = And([_edge('x', 'y'), NegAtom('E', ('y', 'x'))])
        self.assertEqual(logic.translate_T(f), AndPair(f.items, ()))

    def test_lower_bound_needs_size(self):
        with self.assertRaises(exceptions.FormulaException):
            logic.translate_T(ExistsGeq(1, 'y', _edge('x', 'y')))
        self.assertEqual(logic.translate_T(ExistsGeq(1, 'y', _edge('x', 'y')), max_size=2),
                         Or([CountExact(1, 'y', (), (), _edge('x', 'y')),
                             CountExact(2, 'y', (), (), _edge('x', 'y'))]))

    def test_unrestricted_rejected(self):
        bad = And([Exists('y', _edge('y', 'x')), Exists('y', _edge('x', 'y'))])
        with self.assertRaises(exceptions.FormulaException):
            logic.translate_T(bad, max_size=3)

    def test_semantics_preserved(self):
        sig = structures.Signature({'E': 2})
        targets = [structures.path(3), structures.clique(3), structures.directed_edge(), structures.discrete(2),
                   structures.from_edges(3, [(0, 1), (1, 2), (2, 0), (1, 1)])]
        seed, _ = config.get_probe_settings()
        rng = np.random.default_rng(seed)
        for i in range(500):
            k = 2 + i % 2
            f = logic.random_restricted_formula(rng, sig, k, i % 4)
            self.assertTrue(logic.validate_restricted(f, k=k), msg='Generated {} is not restricted'.format(f))
            tf = logic.translate_T(f, max_size=3)
            utf = logic.translate_U(tf)
            variables = ['x{}'.format(v) for v in range(1, k + 1)]
            for a in targets:
                for values in itertools.product(a.universe, repeat=k):
                    asg = dict(zip(variables, values))
                    expected = logic.model_check(a, asg, f)
                    self.assertEqual(logic.model_check_translated(a, asg, tf), expected,
                                     msg='T changed the meaning of {}'.format(f))
                    self.assertEqual(logic.model_check(a, asg, utf), expected,
                                     msg='U after T changed the meaning of {}'.format(f))


class TestCountingTypes(unittest.TestCase):
    def test_reflexive(self):
        self.assertTrue(logic.equiv_by_types(structures.cycle(4), structures.cycle(4), 2, 2))

    def test_vertex_counts(self):
        k3, k2 = structures.clique(3), structures.clique(2)
        self.assertFalse(logic.equiv_by_types(k3, k2, 2, 1))
        self.assertFalse(logic.equiv_by_types(k3, k2, 2, 2), msg='Distinguishing must persist at higher rank')
        self.assertTrue(logic.equiv_by_types(k3, k2, 2, 0), msg='The empty tuple has one rank-0 type')

    def test_registry_is_shared(self):
        registry = logic.TypeRegistry()
        ta = logic.counting_types(structures.path(3), 2, 1, registry)
        n_types = len(registry)
        tb = logic.counting_types(structures.path(3), 2, 1, registry)
        self.assertEqual(len(registry), n_types, msg='An identical structure added new types')
        self.assertEqual(ta, tb)
        self.assertEqual(len(ta), 2)

    def test_small_graphs_against_games(self):
        graphs = [structures.from_edges(3, edges, symmetric=True)
                  for r in range(4) for edges in itertools.combinations([(0, 1), (0, 2), (1, 2)], r)]
        for a, b in itertools.product(graphs, repeat=2):
            equiv = logic.equiv_by_types(a, b, 2, 2)
            self.assertEqual(equiv, structures.are_isomorphic(a, b), msg='{!r} vs {!r}'.format(a, b))
            if equiv:
                self.assertTrue(games.decide_bijective_all_in_one(a, b, 2, 2).duplicator_wins)

    def test_types_match_bijective_game(self):
        graphs = [structures.from_edges(3, edges, symmetric=True)
                  for r in range(4) for edges in itertools.combinations([(0, 1), (0, 2), (1, 2)], r)]
        digraphs = [s for n in (1, 2) for s in structures.iter_structures({'E': 2}, n)]
        for family in (graphs, digraphs):
            for a, b in itertools.product(family, repeat=2):
                for length in (1, 2, 3):
                    equiv = logic.equiv_by_types(a, b, 2, length)
                    verdict = games.decide_bijective_all_in_one(a, b, 2, length)
                    self.assertEqual(verdict.duplicator_wins, equiv,
                                     msg='Rank {} types and the game disagree on {!r} vs {!r}'.format(length, a, b))


class TestFormulaIO(unittest.TestCase):
    example = '(and-r ((atom E x1 x2)) ((exists-leq 2 x2 (atom E x1 x2))))'
    out_file = os.path.join(_test_data_dir, 'formula.fml.out')

    def test_parse_grouped_conjunction(self):
        f = formula_io.parse_formula(self.example)
        expected = And([_edge('x1', 'x2'), ExistsLeq(2, 'x2', _edge('x1', 'x2'))])
        self.assertEqual(f, expected)
        self.assertEqual(formula_io.format_formula(f), '(and (atom E x1 x2) (exists-leq 2 x2 (atom E x1 x2)))')

    def test_parse_translated(self):
        text = '; exactly one neighbour\n(count-exact 1 x1 ((atom E x2 x2)) () (atom E x1 x2))\n'
        f = formula_io.parse_formula(text)
        self.assertEqual(f, CountExact(1, 'x1', [_edge('x2', 'x2')], (), _edge('x1', 'x2')))

    def test_parse_errors(self):
        for text in ['(not (or))', '(atom E x1', '(frobnicate x1)', '(exists-leq -1 x1 (atom E x1 x1))',
                     '(atom E x1) (atom E x2)', '(exists x1)']:
            with self.assertRaises(exceptions.FormulaParseException, msg='Accepted {!r}'.format(text)):
                formula_io.parse_formula(text)

    def test_file(self):
        f = formula_io.parse_formula(self.example)
        if os.path.isfile(self.out_file):
            os.remove(self.out_file)
        formula_io.write_formula_file(self.out_file, f)
        self.assertEqual(formula_io.read_formula_file(self.out_file), f)


if __name__ == '__main__':
    unittest.main()
