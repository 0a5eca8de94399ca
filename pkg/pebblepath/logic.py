"""
Restricted-conjunction k-variable logics: formula trees, model checking, the translations between the counting logic
and its exact-counting form, and counting-type refinement.

Formulas are immutable trees. Conjunctions and disjunctions hold frozensets, so two formulas are equal when they are
syntactically equal up to reordering of those sets. Variables are strings (``"x1"``, ``"x2"``, ...) and an
assignment is a dictionary from variable to element index.
"""
from collections import Counter
import itertools
from logging import getLogger

import numpy as np

from . import exceptions

logger = getLogger('logic')

EQUALITY = '='


class Formula(object):
    """Base class for formula nodes; equality and hashing use the node's kind and fields."""
    kind = None
    __slots__ = ()

    def _fields(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Formula) and self.kind == other.kind and self._fields() == other._fields()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.kind, self._fields()))

    def __repr__(self):
        from .formula_io import format_formula
        return format_formula(self)


class Atom(Formula):
    kind = 'atom'
    __slots__ = ('rel', 'args')

    def __init__(self, rel, args):
        self.rel = rel
        self.args = tuple(args)

    def _fields(self):
        return self.rel, self.args


class NegAtom(Formula):
    kind = 'not'
    __slots__ = ('rel', 'args')

    def __init__(self, rel, args):
        self.rel = rel
        self.args = tuple(args)

    def _fields(self):
        return self.rel, self.args


class Or(Formula):
    kind = 'or'
    __slots__ = ('items',)

    def __init__(self, items):
        self.items = frozenset(items)

    def _fields(self):
        return self.items


class And(Formula):
    kind = 'and'
    __slots__ = ('items',)

    def __init__(self, items):
        self.items = frozenset(items)

    def _fields(self):
        return self.items


class ExistsLeq(Formula):
    """At most ``count`` distinct elements satisfy the body."""
    kind = 'exists-leq'
    __slots__ = ('count', 'var', 'body')

    def __init__(self, count, var, body):
        self.count = count
        self.var = var
        self.body = body

    def _fields(self):
        return self.count, self.var, self.body


class ExistsGeq(Formula):
    """At least ``count`` distinct elements satisfy the body."""
    kind = 'exists-geq'
    __slots__ = ('count', 'var', 'body')

    def __init__(self, count, var, body):
        self.count = count
        self.var = var
        self.body = body

    def _fields(self):
        return self.count, self.var, self.body


class Exists(Formula):
    kind = 'exists'
    __slots__ = ('var', 'body')

    def __init__(self, var, body):
        self.var = var
        self.body = body

    def _fields(self):
        return self.var, self.body


class AndPair(Formula):
    """
    Conjunction of a set ``X`` of quantifier-free formulas and a set ``Y`` of sentences (exact-counting logic).
    """
    kind = 'and-pair'
    __slots__ = ('qf', 'sentences')

    def __init__(self, qf, sentences):
        self.qf = frozenset(qf)
        self.sentences = frozenset(sentences)

    def _fields(self):
        return self.qf, self.sentences


class CountExact(Formula):
    """
    ``X`` and ``Y`` hold and exactly ``count`` distinct values of ``var`` satisfy the body.

    Only the body binds ``var``; occurrences in ``X`` refer to the outer assignment.
    """
    kind = 'count-exact'
    __slots__ = ('count', 'var', 'qf', 'sentences', 'body')

    def __init__(self, count, var, qf, sentences, body):
        self.count = count
        self.var = var
        self.qf = frozenset(qf)
        self.sentences = frozenset(sentences)
        self.body = body

    def _fields(self):
        return self.count, self.var, self.qf, self.sentences, self.body


_COUNTING = (ExistsLeq, ExistsGeq, Exists)
_TRANSLATED_ONLY = (AndPair, CountExact)


def children(f):
    if isinstance(f, (Or, And)):
        return list(f.items)
    if isinstance(f, _COUNTING):
        return [f.body]
    if isinstance(f, AndPair):
        return list(f.qf) + list(f.sentences)
    if isinstance(f, CountExact):
        return list(f.qf) + list(f.sentences) + [f.body]
    return []


def free_variables(f):
    """The free variables of a formula of either logic."""
    if isinstance(f, (Atom, NegAtom)):
        return frozenset(v for v in f.args)
    if isinstance(f, _COUNTING):
        return free_variables(f.body) - {f.var}
    if isinstance(f, CountExact):
        inner = free_variables(f.body) - {f.var}
        return inner.union(*[free_variables(g) for g in f.qf | f.sentences])
    return frozenset().union(*[free_variables(g) for g in children(f)])


def variables(f):
    """Every variable occurring in the formula, free or bound."""
    own = set()
    if isinstance(f, (Atom, NegAtom)):
        own.update(f.args)
    elif isinstance(f, _COUNTING + (CountExact,)):
        own.add(f.var)
    return frozenset(own).union(*[variables(g) for g in children(f)])


def is_sentence(f):
    return len(free_variables(f)) == 0


def has_quantifier(f):
    if isinstance(f, _COUNTING + (CountExact,)):
        return True
    return any(has_quantifier(g) for g in children(f))


def quantifier_rank(f):
    """Nesting depth of quantifiers (counting, plain and exact-counting)."""
    inner = max([quantifier_rank(g) for g in children(f)] + [0])
    if isinstance(f, _COUNTING):
        return 1 + quantifier_rank(f.body)
    if isinstance(f, CountExact):
        return max(inner, 1 + quantifier_rank(f.body))
    return inner


# ---------------------- #
# Restricted conjunction #
# ---------------------- #

class RestrictionCheck(object):
    """
    Result of :func:`validate_restricted`; truthy if the formula is in the fragment.

    :ivar path: child indices (in formatted order) leading to the first offending node, or ``None``
    :ivar message: description of the problem
    """
    def __init__(self, ok, path=None, message=''):
        self.ok = ok
        self.path = path
        self.message = message

    def __bool__(self):
        return self.ok

    __nonzero__ = __bool__

    def __repr__(self):
        return 'RestrictionCheck(ok={}, path={}, message={!r})'.format(self.ok, self.path, self.message)


def _counting_key(f):
    if isinstance(f, Exists):
        return f.var, f.body
    if isinstance(f, (ExistsLeq, ExistsGeq)):
        return f.var, f.body
    return None


def _sorted_items(items):
    from .formula_io import format_formula
    return sorted(items, key=format_formula)


def validate_restricted(f, k=None):
    """
    Check that every conjunction has at most one conjunct that contains quantifiers and is not a sentence.

    Several counting quantifiers over the same variable and the same body count as one such conjunct. Negation can
    only be applied to atoms by construction; with ``k`` given, at most ``k`` distinct variables may be used.

    :rtype: :class:`RestrictionCheck`
    """
    if isinstance(f, _TRANSLATED_ONLY):
        return RestrictionCheck(False, [], 'exact-counting node in a counting-logic formula')
    if k is not None and len(variables(f)) > k:
        return RestrictionCheck(False, [], 'uses {} variables, more than {}'.format(len(variables(f)), k))
    return _validate_node(f, [])


def _validate_node(f, path):
    if isinstance(f, _TRANSLATED_ONLY):
        return RestrictionCheck(False, path, 'exact-counting node in a counting-logic formula')
    if isinstance(f, And):
        offenders = [g for g in f.items if has_quantifier(g) and not is_sentence(g)]
        keys = {_counting_key(g) for g in offenders}
        if len(offenders) > 1 and (None in keys or len(keys) > 1):
            return RestrictionCheck(False, path, 'conjunction with {} quantified conjuncts that are not sentences'
                                    .format(len(offenders)))
    if isinstance(f, (Or, And)):
        items = _sorted_items(f.items)
    else:
        items = children(f)
    for i, g in enumerate(items):
        result = _validate_node(g, path + [i])
        if not result:
            return result
    return RestrictionCheck(True)


# -------------- #
# Model checking #
# -------------- #

def _lookup(asg, var):
    try:
        return asg[var]
    except KeyError:
        raise exceptions.UnboundVariableException('Variable {} is not assigned'.format(var))


def _atom_holds(a, f, asg):
    values = tuple(_lookup(asg, v) for v in f.args)
    if f.rel == EQUALITY:
        if len(values) != 2:
            raise exceptions.FormulaException('Equality takes two arguments')
        return values[0] == values[1]
    if f.rel not in a.signature:
        raise exceptions.FormulaException('Relation {} is not in the signature'.format(f.rel))
    if a.signature.arity(f.rel) != len(values):
        raise exceptions.FormulaException('Relation {} has arity {}, got {} arguments'
                                          .format(f.rel, a.signature.arity(f.rel), len(values)))
    return a.holds(f.rel, values)


def _witnesses(a, asg, var, body, check):
    n = 0
    for x in a.universe:
        inner = dict(asg)
        inner[var] = x
        if check(a, inner, body):
            n += 1
    return n


def model_check(a, asg, f):
    """
    Evaluate a counting-logic formula by brute force.

    :param a: the structure
    :param asg: dictionary from variable to element
    :param f: the formula
    :raises exceptions.UnboundVariableException: if a free variable is not assigned
    """
    if isinstance(f, Atom):
        return _atom_holds(a, f, asg)
    if isinstance(f, NegAtom):
        return not _atom_holds(a, f, asg)
    if isinstance(f, Or):
        return any(model_check(a, asg, g) for g in f.items)
    if isinstance(f, And):
        return all(model_check(a, asg, g) for g in f.items)
    if isinstance(f, ExistsLeq):
        return _witnesses(a, asg, f.var, f.body, model_check) <= f.count
    if isinstance(f, ExistsGeq):
        return _witnesses(a, asg, f.var, f.body, model_check) >= f.count
    if isinstance(f, Exists):
        return any(model_check(a, dict(asg, **{f.var: x}), f.body) for x in a.universe)
    raise exceptions.FormulaException('Cannot evaluate a {} node as a counting-logic formula'.format(f.kind))


def model_check_translated(a, asg, f):
    """Evaluate an exact-counting formula by brute force."""
    if isinstance(f, Atom):
        return _atom_holds(a, f, asg)
    if isinstance(f, NegAtom):
        return not _atom_holds(a, f, asg)
    if isinstance(f, Or):
        return any(model_check_translated(a, asg, g) for g in f.items)
    if isinstance(f, AndPair):
        return all(model_check_translated(a, asg, g) for g in f.qf | f.sentences)
    if isinstance(f, CountExact):
        if not all(model_check_translated(a, asg, g) for g in f.qf | f.sentences):
            return False
        return _witnesses(a, asg, f.var, f.body, model_check_translated) == f.count
    raise exceptions.FormulaException('Cannot evaluate a {} node as an exact-counting formula'.format(f.kind))


# ------------- #
# Translations  #
# ------------- #

def _disjuncts(tf):
    if isinstance(tf, Or):
        out = []
        for g in tf.items:
            out.extend(_disjuncts(g))
        return out
    return [tf]


def _join(disjuncts):
    disjuncts = list(disjuncts)
    if len(disjuncts) == 1:
        return disjuncts[0]
    return Or(disjuncts)


def _count_range(quantifiers, max_size):
    lower, upper = 0, None
    for q in quantifiers:
        if isinstance(q, ExistsLeq):
            upper = q.count if upper is None else min(upper, q.count)
        elif isinstance(q, ExistsGeq):
            lower = max(lower, q.count)
        else:
            lower = max(lower, 1)
    if upper is None:
        if max_size is None:
            raise exceptions.FormulaException('Translating a lower counting bound needs max_size')
        upper = max_size
    return range(lower, upper + 1)


def translate_T(f, max_size=None):
    """
    Translate a restricted counting-logic formula into exact-counting form.

    "At most n" becomes the disjunction of "exactly m" for ``m <= n``. "At least n" would need an infinite
    disjunction, so it is cut off at ``max_size``: the result agrees with ``f`` on structures with at most
    ``max_size`` elements. A conjunction is split into its quantifier-free conjuncts, its sentences and its single
    quantified non-sentence conjunct; the first two are folded into every disjunct of the translation of the last.

    :param max_size: largest universe the translation must be correct for; needed for lower bounds only
    :raises exceptions.FormulaException: if ``f`` is not in the restricted fragment
    """
    check = validate_restricted(f)
    if not check:
        raise exceptions.FormulaException('Not a restricted formula: {} at {}'.format(check.message, check.path))
    return _translate_T(f, max_size)


def _translate_T(f, max_size):
    if isinstance(f, (Atom, NegAtom)):
        return f
    if isinstance(f, Or):
        return Or(_translate_T(g, max_size) for g in f.items)
    if isinstance(f, _COUNTING):
        body = _translate_T(f.body, max_size)
        return _join(CountExact(m, f.var, (), (), body) for m in _count_range([f], max_size))
    if isinstance(f, And):
        qf, sentences, rest = [], [], []
        for g in f.items:
            if not has_quantifier(g):
                qf.append(_translate_T(g, max_size))
            elif is_sentence(g):
                sentences.append(_translate_T(g, max_size))
            else:
                rest.append(g)
        if not rest:
            return AndPair(qf, sentences)
        if len(rest) == 1:
            inner = _disjuncts(_translate_T(rest[0], max_size))
        else:
            # matching counting quantifiers: intersect their bounds
            var, body = _counting_key(rest[0])
            tbody = _translate_T(body, max_size)
            inner = [CountExact(m, var, (), (), tbody) for m in _count_range(rest, max_size)]
        return _join(_absorb(d, qf, sentences) for d in inner)
    raise exceptions.FormulaException('Cannot translate a {} node'.format(f.kind))


def _absorb(d, qf, sentences):
    if isinstance(d, CountExact):
        return CountExact(d.count, d.var, d.qf | frozenset(qf), d.sentences | frozenset(sentences), d.body)
    if isinstance(d, AndPair):
        return AndPair(d.qf | frozenset(qf), d.sentences | frozenset(sentences))
    return AndPair(frozenset(qf) | {d}, sentences)


def translate_U(f):
    """
    Translate an exact-counting formula back: "exactly n" becomes the conjunction of "at most n" and "at least n"
    over the same body, alongside the translated ``X`` and ``Y``.
    """
    if isinstance(f, (Atom, NegAtom)):
        return f
    if isinstance(f, Or):
        return Or(translate_U(g) for g in f.items)
    if isinstance(f, AndPair):
        return And(translate_U(g) for g in f.qf | f.sentences)
    if isinstance(f, CountExact):
        body = translate_U(f.body)
        items = [translate_U(g) for g in f.qf | f.sentences]
        items.extend([ExistsLeq(f.count, f.var, body), ExistsGeq(f.count, f.var, body)])
        return And(items)
    raise exceptions.FormulaException('Cannot translate a {} node back'.format(f.kind))


# ------------------ #
# Random formulas    #
# ------------------ #

def random_restricted_formula(rng, signature, k, depth, max_set=3, max_count=2):
    """
    Generate a random formula of the restricted fragment.

    :param rng: a :class:`numpy.random.Generator` (or a seed for one)
    :param signature: relations to draw atoms from
    :param k: variables are drawn from ``x1..xk``
    :param depth: maximum quantifier nesting
    :param max_set: maximum size of conjunctions and disjunctions
    :param max_count: maximum counting threshold
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    var_names = ['x{}'.format(i) for i in range(1, k + 1)]
    rels = list(signature.names)

    def pick(seq):
        return seq[int(rng.integers(len(seq)))]

    def atom():
        rel = pick(rels)
        args = [pick(var_names) for _ in range(signature.arity(rel))]
        return Atom(rel, args) if rng.random() < 0.7 else NegAtom(rel, args)

    def gen(d):
        if d == 0:
            return atom()
        choice = int(rng.integers(6))
        if choice == 0:
            return Or(gen(d - 1) for _ in range(int(rng.integers(1, max_set + 1))))
        if choice == 1:
            items = [atom() for _ in range(int(rng.integers(0, max_set)))]
            items.append(gen(d - 1))
            return And(items)
        if choice == 2:
            var, body = pick(var_names), gen(d - 1)
            m = int(rng.integers(0, max_count + 1))
            return And([ExistsLeq(m, var, body), ExistsGeq(int(rng.integers(0, m + 1)), var, body)])
        var, body = pick(var_names), gen(d - 1)
        if choice == 3:
            return ExistsLeq(int(rng.integers(0, max_count + 1)), var, body)
        if choice == 4:
            return ExistsGeq(int(rng.integers(0, max_count + 1)), var, body)
        return Exists(var, body)

    return gen(depth)


# ------------------------ #
# Counting types           #
# ------------------------ #

def _atomic_type(a, tup):
    eq = tuple((i, j) for i, j in itertools.combinations(range(len(tup)), 2) if tup[i] == tup[j])
    rels = []
    for name in a.signature.names:
        arity = a.signature.arity(name)
        rels.append(tuple(a.holds(name, tuple(tup[i] for i in idx))
                          for idx in itertools.product(range(len(tup)), repeat=arity)))
    return len(tup), eq, tuple(rels)


class TypeRegistry(object):
    """Interns type descriptions so that the type ids of different structures can be compared."""
    def __init__(self):
        self._ids = dict()

    def intern(self, rank, raw):
        key = (rank, raw)
        if key not in self._ids:
            self._ids[key] = len(self._ids)
        return self._ids[key]

    def __len__(self):
        return len(self._ids)


def counting_types(a, k, rank, registry=None):
    """
    Compute the counting types of every tuple of at most ``k`` elements, up to ``rank``.

    The rank-0 type of a tuple is its atomic type. The rank-(r+1) type adds, for each way of moving a pebble, how many
    elements give each rank-r type: a tuple shorter than ``k`` is extended by appending an element, a tuple of length
    ``k`` by overwriting one slot at a time.

    :param registry: shared :class:`TypeRegistry`; pass the same one to compare two structures
    :return: list (by rank) of dictionaries from tuple to type id
    :rtype: list(dict)
    """
    if registry is None:
        registry = TypeRegistry()
    tuples = [tup for j in range(0, k + 1) for tup in itertools.product(a.universe, repeat=j)]
    tables = [{tup: registry.intern(0, _atomic_type(a, tup)) for tup in tuples}]
    for r in range(1, rank + 1):
        prev = tables[-1]
        table = dict()
        for tup in tuples:
            if len(tup) < k:
                moves = [[tup + (x,) for x in a.universe]]
            else:
                moves = [[tup[:l] + (x,) + tup[l + 1:] for x in a.universe] for l in range(k)]
            ext = tuple(tuple(sorted(Counter(prev[t] for t in move).items())) for move in moves)
            table[tup] = registry.intern(r, (prev[tup], ext))
        tables.append(table)
        logger.debug('Rank {}: {} types'.format(r, len(set(table.values()))))
    return tables


def equiv_by_types(a, b, k, n):
    """
    ``True`` if ``a`` and ``b`` have the same rank-``n`` counting type of the empty tuple, i.e. the same counts of
    rank-(n-1) types of single elements, recursively.
    """
    if a.signature != b.signature:
        raise exceptions.SignatureException('Structures have different signatures')
    registry = TypeRegistry()
    ta = counting_types(a, k, n, registry)
    tb = counting_types(b, k, n, registry)
    return ta[n][()] == tb[n][()]
