"""
Read and write formulas as s-expressions.

Heads::

    (atom R x1 x2)                 (not (atom R x1 x2))
    (or f ...)                     (and f ...)
    (and-r (f ...) (g ...) ...)    conjunction of every formula in the groups
    (exists x1 f)                  (exists-leq 2 x1 f)           (exists-geq 2 x1 f)
    (and-pair (f ...) (g ...))     quantifier-free set, then sentence set
    (count-exact 2 x1 (f ...) (g ...) body)

Text after ``;`` on a line is a comment. Formatting is canonical: set members are written sorted by their text.
"""
import re

from . import exceptions
from .logic import And, AndPair, Atom, CountExact, Exists, ExistsGeq, ExistsLeq, NegAtom, Or

_token_re = re.compile(r'\(|\)|[^\s()]+')


def _tokenize(text):
    lines = [line.split(';', 1)[0] for line in text.splitlines()]
    return _token_re.findall('\n'.join(lines))


def _read_tree(tokens):
    """Turn tokens into nested lists of strings."""
    stack = [[]]
    for tok in tokens:
        if tok == '(':
            stack.append([])
        elif tok == ')':
            if len(stack) == 1:
                raise exceptions.FormulaParseException('Unbalanced ")"')
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise exceptions.FormulaParseException('Missing ")"')
    return stack[0]


def _count(tok):
    try:
        n = int(tok)
    except (TypeError, ValueError):
        raise exceptions.FormulaParseException('Expected a count, got {}'.format(tok))
    if n < 0:
        raise exceptions.FormulaParseException('Counts must be non-negative, got {}'.format(n))
    return n


def _var(tok):
    if not isinstance(tok, str):
        raise exceptions.FormulaParseException('Expected a variable, got {}'.format(tok))
    return tok


def _group(node):
    if not isinstance(node, list):
        raise exceptions.FormulaParseException('Expected a parenthesized group, got {}'.format(node))
    return [_build(item) for item in node]


def _build(node):
    if not isinstance(node, list) or not node:
        raise exceptions.FormulaParseException('Expected a formula, got {!r}'.format(node))
    head, args = node[0], node[1:]
    if head == 'atom':
        if not args or any(isinstance(a, list) for a in args):
            raise exceptions.FormulaParseException('Malformed atom {}'.format(node))
        return Atom(args[0], args[1:])
    if head == 'not':
        if len(args) != 1 or not isinstance(args[0], list) or args[0][:1] != ['atom']:
            raise exceptions.FormulaParseException('Negation only applies to atoms')
        inner = _build(args[0])
        return NegAtom(inner.rel, inner.args)
    if head == 'or':
        return Or(_build(a) for a in args)
    if head == 'and':
        return And(_build(a) for a in args)
    if head == 'and-r':
        return And(f for grp in args for f in _group(grp))
    if head == 'exists':
        _arity(node, 2)
        return Exists(_var(args[0]), _build(args[1]))
    if head in ('exists-leq', 'exists-geq'):
        _arity(node, 3)
        cls = ExistsLeq if head == 'exists-leq' else ExistsGeq
        return cls(_count(args[0]), _var(args[1]), _build(args[2]))
    if head == 'and-pair':
        _arity(node, 2)
        return AndPair(_group(args[0]), _group(args[1]))
    if head == 'count-exact':
        _arity(node, 5)
        return CountExact(_count(args[0]), _var(args[1]), _group(args[2]), _group(args[3]), _build(args[4]))
    raise exceptions.FormulaParseException('Unknown head "{}"'.format(head))


def _arity(node, n):
    if len(node) != n + 1:
        raise exceptions.FormulaParseException('"{}" takes {} arguments, got {}'.format(node[0], n, len(node) - 1))


def parse_formula(text):
    """
    Parse a single formula.

    :raises exceptions.FormulaParseException: on malformed input
    """
    trees = _read_tree(_tokenize(text))
    if len(trees) != 1:
        raise exceptions.FormulaParseException('Expected exactly one formula, found {}'.format(len(trees)))
    return _build(trees[0])


def read_formula_file(path):
    with open(path) as robj:
        return parse_formula(robj.read())


def _fmt_set(items):
    return '(' + ' '.join(sorted(format_formula(f) for f in items)) + ')'


def format_formula(f):
    if isinstance(f, Atom):
        return '(atom {})'.format(' '.join([f.rel] + list(f.args)))
    if isinstance(f, NegAtom):
        return '(not (atom {}))'.format(' '.join([f.rel] + list(f.args)))
    if isinstance(f, (Or, And)):
        parts = sorted(format_formula(g) for g in f.items)
        return '({})'.format(' '.join([f.kind] + parts))
    if isinstance(f, Exists):
        return '(exists {} {})'.format(f.var, format_formula(f.body))
    if isinstance(f, (ExistsLeq, ExistsGeq)):
        return '({} {} {} {})'.format(f.kind, f.count, f.var, format_formula(f.body))
    if isinstance(f, AndPair):
        return '(and-pair {} {})'.format(_fmt_set(f.qf), _fmt_set(f.sentences))
    if isinstance(f, CountExact):
        return '(count-exact {} {} {} {} {})'.format(f.count, f.var, _fmt_set(f.qf), _fmt_set(f.sentences),
                                                     format_formula(f.body))
    raise exceptions.FormulaException('Unknown formula node {!r}'.format(f))


def write_formula_file(path, f):
    with open(path, 'w', newline='\n') as wobj:
        wobj.write(format_formula(f) + '\n')
