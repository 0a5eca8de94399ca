"""
Finite relational structures and their morphisms.

Elements of a structure are always the dense integers ``0 .. universe_size - 1``. Human readable element names are
carried alongside (see :mod:`pebblepath.structio`) but are never used by the algorithms.
"""
import itertools
from logging import getLogger

import networkx as nx

from . import exceptions, _reserved_identity

logger = getLogger('structures')

FUNCTION_MODE = 'function'
RELATION_MODE = 'relation'


class Signature(object):
    """
    A relational vocabulary: a mapping from relation name to arity.

    :param arities: relation name to arity (a positive integer)
    :type arities: dict

    :param plus: set to ``True`` for an expanded signature, which is the only kind allowed to contain the reserved
     identity relation "I".
    :type plus: bool
    """
    def __init__(self, arities, plus=False):
        arities = dict(arities)
        for name, arity in arities.items():
            if not isinstance(name, str) or len(name) == 0:
                raise exceptions.SignatureException('Relation names must be non-empty strings, got {!r}'.format(name))
            if not isinstance(arity, int) or arity < 1:
                raise exceptions.SignatureException('Relation {} has arity {}, arities must be >= 1'.format(name, arity))
        if _reserved_identity in arities:
            if not plus:
                raise exceptions.SignatureException('The relation name "{}" is reserved for expanded signatures'
                                                    .format(_reserved_identity))
            if arities[_reserved_identity] != 2:
                raise exceptions.SignatureException('The reserved relation "{}" must be binary'.format(_reserved_identity))
        self._arities = arities
        self.plus = plus

    @property
    def names(self):
        return tuple(sorted(self._arities))

    def arity(self, name):
        try:
            return self._arities[name]
        except KeyError:
            raise exceptions.SignatureException('Relation {} is not in the signature'.format(name)) from None

    def items(self):
        return [(n, self._arities[n]) for n in self.names]

    def as_dict(self):
        return dict(self._arities)

    def without(self, *names):
        arities = {n: a for n, a in self._arities.items() if n not in names}
        return Signature(arities, plus=self.plus and _reserved_identity in arities)

    def __contains__(self, name):
        return name in self._arities

    def __eq__(self, other):
        return isinstance(other, Signature) and self._arities == other._arities

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        return 'Signature({})'.format(', '.join('{}/{}'.format(n, a) for n, a in self.items()))


class Structure(object):
    """
    A finite sigma-structure.

    :param signature: the vocabulary. A plain dict of name to arity is accepted and converted.
    :type signature: :class:`Signature` or dict

    :param universe_size: number of elements; the universe is ``range(universe_size)``.
    :type universe_size: int

    :param relations: relation name to an iterable of tuples. Relations of the signature that are missing are empty.
    :type relations: dict

    :param names: optional element names, one per element. Defaults to the element indices as strings.
    :type names: sequence(str)

    :param validate: if ``True`` (default) run :func:`validate_structure` and raise on the first violation.
    :type validate: bool
    """
    def __init__(self, signature, universe_size, relations=None, names=None, validate=True):
        if not isinstance(signature, Signature):
            signature = Signature(signature)
        relations = dict() if relations is None else relations
        self.signature = signature
        self.universe_size = universe_size
        self._raw = {name: tuple(tuple(t) for t in relations.get(name, ())) for name in signature.names}
        self._extra = sorted(set(relations) - set(signature.names))
        self.relations = {name: frozenset(tups) for name, tups in self._raw.items()}
        self.names = tuple(str(i) for i in range(universe_size)) if names is None else tuple(names)
        if validate:
            validate_structure(self)

    @property
    def universe(self):
        return range(self.universe_size)

    def holds(self, name, tup):
        return tuple(tup) in self.relations[name]

    def tuples(self, name):
        """Sorted tuples of one relation."""
        return sorted(self.relations[name])

    def __len__(self):
        return self.universe_size

    def __eq__(self, other):
        return (isinstance(other, Structure) and self.signature == other.signature
                and self.universe_size == other.universe_size and self.relations == other.relations)

    def __hash__(self):
        return hash((self.signature, self.universe_size, tuple(self.relations[n] for n in self.signature.names)))

    def __repr__(self):
        rels = '; '.join('{}={}'.format(n, self.tuples(n)) for n in self.signature.names)
        return 'Structure(n={}, {})'.format(self.universe_size, rels)


def validate_structure(s):
    """
    Check every structure invariant, raising on the first violation.

    :param s: the structure to check
    :type s: :class:`Structure`
    :return: None
    :raises exceptions.StructureException: naming the violated invariant (unknown relation, bad arity,
     out-of-range element, duplicate tuple or bad element names).
    """
    if not isinstance(s.universe_size, int) or s.universe_size < 0:
        raise exceptions.StructureException('universe_size must be a non-negative integer, got {!r}'
                                            .format(s.universe_size))
    if s._extra:
        raise exceptions.StructureException('Relation {} is not in the signature'.format(s._extra[0]))
    if len(s.names) != s.universe_size:
        raise exceptions.StructureException('Expected {} element names, got {}'.format(s.universe_size, len(s.names)))
    if len(set(s.names)) != len(s.names):
        raise exceptions.StructureException('Element names must be unique')

    for name in s.signature.names:
        arity = s.signature.arity(name)
        seen = set()
        for tup in s._raw[name]:
            if len(tup) != arity:
                raise exceptions.StructureException('arity mismatch: tuple {} in {} has length {}, expected {}'
                                                    .format(tup, name, len(tup), arity))
            for a in tup:
                if not isinstance(a, int) or a < 0 or a >= s.universe_size:
                    raise exceptions.StructureException('out-of-range element {!r} in tuple {} of {}'
                                                        .format(a, tup, name))
            if tup in seen:
                raise exceptions.StructureException('duplicate tuple {} in {}'.format(tup, name))
            seen.add(tup)


# ---------- #
# Builders   #
# ---------- #

def from_edges(n, edges, symmetric=False, name='E', extra=None):
    """
    Build a structure over a single binary relation (plus optional extra relations).

    :param n: universe size
    :param edges: iterable of pairs
    :param symmetric: if ``True`` add the reverse of every pair
    :param name: name of the binary relation
    :param extra: additional relations as ``{name: (arity, tuples)}``
    :return: the structure
    :rtype: :class:`Structure`
    """
    tups = set(tuple(e) for e in edges)
    if symmetric:
        tups |= {(b, a) for a, b in tups}
    arities = {name: 2}
    relations = {name: sorted(tups)}
    if extra is not None:
        for rname, (arity, rtups) in extra.items():
            arities[rname] = arity
            relations[rname] = sorted(set(tuple(t) for t in rtups))
    return Structure(arities, n, relations)


def discrete(n, name='E'):
    return from_edges(n, [], name=name)


def directed_edge():
    return from_edges(2, [(0, 1)])


def clique(n):
    return from_edges(n, [(a, b) for a in range(n) for b in range(n) if a != b])


def path(n):
    return from_edges(n, [(i, i + 1) for i in range(n - 1)], symmetric=True)


def cycle(n):
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)], symmetric=True)


def from_networkx(graph, name='E'):
    """Convert an undirected :class:`networkx.Graph` with nodes ``0..n-1`` to a symmetric structure."""
    return from_edges(graph.number_of_nodes(), graph.edges(), symmetric=True, name=name)


def iter_structures(signature, n):
    """
    Every structure over ``signature`` on the universe ``0 .. n-1``, fewest tuples first.

    :param signature: the vocabulary
    :type signature: :class:`Signature` or dict
    :rtype: iterator of :class:`Structure`
    """
    if not isinstance(signature, Signature):
        signature = Signature(signature)
    every = [(name, tup) for name in signature.names
             for tup in itertools.product(range(n), repeat=signature.arity(name))]
    for r in range(len(every) + 1):
        for chosen in itertools.combinations(every, r):
            relations = {name: [] for name in signature.names}
            for name, tup in chosen:
                relations[name].append(tup)
            yield Structure(signature, n, relations, validate=False)


# --------------- #
# Constructions   #
# --------------- #

def gaifman(s):
    """
    Compute the Gaifman graph of a structure.

    Every element has a self loop (the graph is reflexive) and two distinct elements are adjacent iff they occur
    together in some tuple of some relation. The identity relation of an expanded structure is included like any other
    relation; use :func:`reduct` first to leave it out.

    :param s: the structure
    :type s: :class:`Structure`
    :return: the Gaifman graph
    :rtype: :class:`networkx.Graph`
    """
    g = nx.Graph()
    g.add_nodes_from(s.universe)
    g.add_edges_from((a, a) for a in s.universe)
    for name in s.signature.names:
        for tup in s.relations[name]:
            g.add_edges_from(itertools.combinations(set(tup), 2))
    return g


def gaifman_edges(s):
    """Sorted list of the non-loop Gaifman edges ``(a, b)`` with ``a < b``."""
    return sorted((min(u, v), max(u, v)) for u, v in gaifman(s).edges() if u != v)


def reduct(s, drop=(_reserved_identity,)):
    """Forget the named relations (by default the identity relation of an expanded structure)."""
    sig = s.signature.without(*drop)
    return Structure(sig, s.universe_size, {n: s.relations[n] for n in sig.names}, names=s.names, validate=False)


def induced_substructure(s, subset, return_map=False):
    """
    Restrict a structure to a subset of its universe.

    The kept elements are renumbered in increasing order and keep their names.

    :param s: the structure
    :param subset: the elements to keep
    :param return_map: also return the dictionary from old to new element indices
    :return: the induced substructure, and optionally the element map
    """
    keep = sorted(set(subset))
    for a in keep:
        if a < 0 or a >= s.universe_size:
            raise exceptions.StructureException('Element {} is not in the universe'.format(a))
    emap = {a: i for i, a in enumerate(keep)}
    relations = dict()
    for name in s.signature.names:
        relations[name] = [tuple(emap[a] for a in tup) for tup in s.relations[name] if all(a in emap for a in tup)]
    sub = Structure(s.signature, len(keep), relations, names=[s.names[a] for a in keep], validate=False)
    if return_map:
        return sub, emap
    return sub


def disjoint_union(a, b):
    """The disjoint union; elements of ``b`` are shifted by ``len(a)``."""
    if a.signature != b.signature:
        raise exceptions.SignatureException('Cannot form the union of structures over different signatures')
    shift = a.universe_size
    relations = {name: list(a.relations[name]) + [tuple(x + shift for x in t) for t in b.relations[name]]
                 for name in a.signature.names}
    return Structure(a.signature, a.universe_size + b.universe_size, relations)


def j_expand(s):
    """
    Expand a structure by the identity relation "I" interpreted as equality.

    :raises exceptions.SignatureException: if "I" is already in the signature
    """
    if _reserved_identity in s.signature:
        raise exceptions.SignatureException('Cannot expand: "{}" is already in the signature'.format(_reserved_identity))
    arities = s.signature.as_dict()
    arities[_reserved_identity] = 2
    relations = dict(s.relations)
    relations[_reserved_identity] = [(a, a) for a in s.universe]
    return Structure(Signature(arities, plus=True), s.universe_size, relations, names=s.names, validate=False)


def i_quotient(s):
    """
    Quotient an expanded structure by the equivalence relation generated by its "I" relation.

    The classes are numbered by their least element, and each remaining relation is the image of the original tuples
    under the class map. The result is over the signature without "I".
    """
    if _reserved_identity not in s.signature:
        raise exceptions.SignatureException('Cannot take the quotient: no "{}" relation'.format(_reserved_identity))
    g = nx.Graph()
    g.add_nodes_from(s.universe)
    g.add_edges_from(s.relations[_reserved_identity])
    classes = sorted(sorted(c) for c in nx.connected_components(g))
    cls_of = dict()
    for icls, members in enumerate(classes):
        for a in members:
            cls_of[a] = icls
    sig = s.signature.without(_reserved_identity)
    relations = {name: {tuple(cls_of[a] for a in tup) for tup in s.relations[name]} for name in sig.names}
    names = ['~'.join(s.names[a] for a in members) for members in classes]
    return Structure(sig, len(classes), {n: sorted(t) for n, t in relations.items()}, names=names)


# ------------ #
# Morphisms    #
# ------------ #

def _check_compatible(a, b):
    for name, arity in a.signature.items():
        if name not in b.signature or b.signature.arity(name) != arity:
            raise exceptions.SignatureException('Relation {}/{} of the source is missing from the target'
                                                .format(name, arity))


def _as_pairs(g):
    if isinstance(g, dict):
        return set(g.items())
    return set(tuple(p) for p in g)


def is_partial_hom(a, b, g, mode=FUNCTION_MODE):
    """
    Test whether a set of pairs is a partial homomorphism from ``a`` to ``b``.

    :param a: source structure
    :param b: target structure
    :param g: the pairs ``(source, target)``; a dict is read as its items
    :param mode: "function" also requires ``g`` to be single-valued. In "relation" mode every choice of images of a
     tuple lying in the domain must be a tuple of ``b``.
    :return: ``True`` if ``g`` preserves every relation
    :rtype: bool
    """
    if mode not in (FUNCTION_MODE, RELATION_MODE):
        raise ValueError('mode must be "{}" or "{}"'.format(FUNCTION_MODE, RELATION_MODE))
    _check_compatible(a, b)
    images = dict()
    for x, y in _as_pairs(g):
        images.setdefault(x, set()).add(y)
    if mode == FUNCTION_MODE and any(len(ys) > 1 for ys in images.values()):
        return False
    for name in a.signature.names:
        target = b.relations[name]
        for tup in a.relations[name]:
            if not all(x in images for x in tup):
                continue
            for img in itertools.product(*(images[x] for x in tup)):
                if img not in target:
                    return False
    return True


def is_partial_iso(a, b, g):
    """
    Test whether a set of pairs is a partial isomorphism: an injective partial function that preserves and reflects
    every relation on its domain.
    """
    _check_compatible(a, b)
    pairs = _as_pairs(g)
    fwd = dict(pairs)
    if len(fwd) != len(pairs) or len(set(fwd.values())) != len(fwd):
        return False
    inv = {y: x for x, y in fwd.items()}
    for name in a.signature.names:
        for tup in a.relations[name]:
            if all(x in fwd for x in tup) and tuple(fwd[x] for x in tup) not in b.relations[name]:
                return False
        for tup in b.relations[name]:
            if all(y in inv for y in tup) and tuple(inv[y] for y in tup) not in a.relations[name]:
                return False
    return True


def is_homomorphism(a, b, f):
    """Test whether a total map (sequence or dict indexed by element) is a homomorphism."""
    try:
        pairs = {x: f[x] for x in a.universe}
    except (IndexError, KeyError):
        return False
    return is_partial_hom(a, b, pairs)


def iter_homs(a, b):
    """
    Iterate over all homomorphisms from ``a`` to ``b`` as tuples ``h`` with ``h[x]`` the image of ``x``.

    Elements are assigned in increasing order and every tuple is checked as soon as its largest element is assigned,
    so the iteration order is lexicographic.
    """
    _check_compatible(a, b)
    checks = [[] for _ in a.universe]
    for name in a.signature.names:
        for tup in a.relations[name]:
            checks[max(tup)].append((name, tup))

    assignment = []

    def extend(x):
        if x == a.universe_size:
            yield tuple(assignment)
            return
        for y in b.universe:
            assignment.append(y)
            if all(tuple(assignment[z] for z in tup) in b.relations[name] for name, tup in checks[x]):
                yield from extend(x + 1)
            assignment.pop()

    yield from extend(0)


def enumerate_homs(a, b):
    """All homomorphisms from ``a`` to ``b``, in lexicographic order."""
    return list(iter_homs(a, b))


def count_homs_bruteforce(a, b):
    """Number of homomorphisms from ``a`` to ``b``."""
    return sum(1 for _ in iter_homs(a, b))


def is_isomorphism(a, b, f):
    """
    Test whether the total map ``f`` is an isomorphism: bijective, preserving and reflecting every relation.
    """
    if a.signature != b.signature or a.universe_size != b.universe_size:
        return False
    f = tuple(f[x] for x in a.universe)
    if sorted(f) != list(b.universe):
        return False
    for name in a.signature.names:
        if {tuple(f[x] for x in tup) for tup in a.relations[name]} != b.relations[name]:
            return False
    return True


def _invariant(s):
    degrees = [0] * s.universe_size
    for name in s.signature.names:
        for tup in s.relations[name]:
            for x in tup:
                degrees[x] += 1
    return (s.universe_size, tuple(len(s.relations[n]) for n in s.signature.names), tuple(sorted(degrees)))


def find_isomorphism(a, b):
    """
    Search for an isomorphism from ``a`` to ``b`` by backtracking.

    :return: the isomorphism as a tuple, or ``None`` if the structures are not isomorphic.
    """
    if a.signature != b.signature or _invariant(a) != _invariant(b):
        return None
    checks = [[] for _ in a.universe]
    for name in a.signature.names:
        for tup in a.relations[name]:
            checks[max(tup)].append((name, tup))
    # reflection is guaranteed by equal tuple counts once every tuple of a is preserved injectively
    assignment = []
    used = set()

    def extend(x):
        if x == a.universe_size:
            return tuple(assignment)
        for y in b.universe:
            if y in used:
                continue
            assignment.append(y)
            used.add(y)
            if all(tuple(assignment[z] for z in tup) in b.relations[name] for name, tup in checks[x]):
                found = extend(x + 1)
                if found is not None:
                    return found
            assignment.pop()
            used.discard(y)
        return None

    return extend(0)


def are_isomorphic(a, b):
    return find_isomorphism(a, b) is not None
