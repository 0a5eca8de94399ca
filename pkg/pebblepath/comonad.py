"""
The bounded pebble-relation comonad.

A play over a structure ``A`` is a sequence of ``(pebble, element)`` placements with pebbles numbered ``1..k``. The
carrier of the bounded comonad at ``(k, n)`` is every pair ``(s, i)`` of a play ``s`` of length at most ``n`` and a
1-based index ``i`` into ``s``. Plays are plain tuples of pairs so that they hash and compare cheaply; the comonad
operations below work on :class:`IndexedPlay` values.
"""
from collections import namedtuple
import itertools
from logging import getLogger

import numpy as np

from . import config, exceptions, structures

logger = getLogger('comonad')


IndexedPlay = namedtuple('IndexedPlay', ['seq', 'index'])


def make_play(seq, index):
    """Build an :class:`IndexedPlay`, normalizing the sequence to a tuple of pairs and checking the index."""
    seq = tuple(tuple(pl) for pl in seq)
    if len(seq) == 0:
        raise ValueError('A play must have at least one placement')
    if index < 1 or index > len(seq):
        raise ValueError('Index {} out of range for a play of length {}'.format(index, len(seq)))
    return IndexedPlay(seq, index)


def validate_seq(seq, k, universe_size):
    for p, a in seq:
        if p < 1 or p > k:
            raise ValueError('Pebble {} is not in 1..{}'.format(p, k))
        if a < 0 or a >= universe_size:
            raise ValueError('Element {} is not in the universe'.format(a))


def counit(play):
    """The element placed at the play's index."""
    return play.seq[play.index - 1][1]


def pebble_at(play):
    """The pebble placed at the play's index."""
    return play.seq[play.index - 1][0]


def last_pebbled(seq, p):
    """
    The last element carrying pebble ``p`` in ``seq``, or ``None`` if the pebble is never placed.
    """
    for q, a in reversed(seq):
        if q == p:
            return a
    return None


def active_map(seq):
    """Map from each pebble used in ``seq`` to the element it currently sits on."""
    active = dict()
    for p, a in seq:
        active[p] = a
    return active


def active_elements(seq):
    return set(active_map(seq).values())


def is_active_at(seq, i, j):
    """``True`` if the pebble placed at position ``i`` is not placed again in positions ``i+1..j`` (1-based)."""
    p = seq[i - 1][0]
    return all(q != p for q, _ in seq[i:j])


# --------------------- #
# Carrier enumeration   #
# --------------------- #

def carrier_size(k, universe_size, n):
    """Number of indexed plays of length at most ``n``: the sum over m of m * (k * |A|)^m."""
    return sum(m * (k * universe_size) ** m for m in range(1, n + 1))


def iter_sequences(k, universe_size, n):
    """
    Iterate over all plays of length ``1..n``, shortest first, then lexicographically by (pebble, element).
    """
    placements = [(p, a) for p in range(1, k + 1) for a in range(universe_size)]
    for m in range(1, n + 1):
        for seq in itertools.product(placements, repeat=m):
            yield seq


def iter_carrier(k, universe_size, n):
    for seq in iter_sequences(k, universe_size, n):
        for i in range(1, len(seq) + 1):
            yield IndexedPlay(seq, i)


def _check_budget(size, budget, what):
    budget = config.get_limit('carrier_budget', override=budget)
    if size > budget:
        raise exceptions.BudgetExceededException('{} would have {} elements, more than the budget of {}'
                                                 .format(what, size, budget))


# ------------------------- #
# Lifted relations: PR_k    #
# ------------------------- #

def pr_tuple_holds(base, name, plays):
    """
    Decide whether a tuple of indexed plays is in the lifted relation ``name``.

    The three clauses are: all plays share the same sequence; the pebble at each index is not placed again before the
    largest index of the tuple; and the elements at the indices are related in ``base``.
    """
    seq = plays[0].seq
    if any(pl.seq != seq for pl in plays):
        return False
    top = max(pl.index for pl in plays)
    if not all(is_active_at(seq, pl.index, top) for pl in plays):
        return False
    return base.holds(name, tuple(counit(pl) for pl in plays))


def _lifted_index_tuples(base, name, seq):
    arity = base.signature.arity(name)
    positions = range(1, len(seq) + 1)
    for idx in itertools.product(positions, repeat=arity):
        top = max(idx)
        if not all(is_active_at(seq, i, top) for i in idx):
            continue
        if base.holds(name, tuple(seq[i - 1][1] for i in idx)):
            yield idx


class PRStructure(object):
    """
    The materialized structure ``PR_{k,n} A``.

    :ivar base: the structure ``A``
    :ivar k: number of pebbles
    :ivar n: maximum play length
    :ivar carrier: the indexed plays in carrier order
    :ivar position: dictionary from indexed play to its position in ``carrier``
    :ivar as_structure: a :class:`~pebblepath.structures.Structure` over the same signature whose element ``x`` is
     ``carrier[x]``
    """
    def __init__(self, base, k, n, carrier, as_structure):
        self.base = base
        self.k = k
        self.n = n
        self.carrier = carrier
        self.position = {pl: x for x, pl in enumerate(carrier)}
        self.as_structure = as_structure

    def __len__(self):
        return len(self.carrier)

    def holds(self, name, plays):
        return tuple(self.position[pl] for pl in plays) in self.as_structure.relations[name]


def build_pr(a, k, n, budget=None):
    """
    Materialize ``PR_{k,n} A``.

    :param a: the base structure
    :type a: :class:`~pebblepath.structures.Structure`

    :param k: number of pebbles, >= 1
    :param n: maximum play length, >= 1
    :param budget: maximum allowed carrier size; the configured ``carrier_budget`` if ``None``
    :return: the lifted structure
    :rtype: :class:`PRStructure`
    :raises exceptions.BudgetExceededException: if the carrier would be larger than the budget
    """
    if k < 1 or n < 1:
        raise ValueError('k and n must both be >= 1')
    _check_budget(carrier_size(k, a.universe_size, n), budget, 'PR_{{{},{}}}'.format(k, n))

    carrier = []
    relations = {name: [] for name in a.signature.names}
    for seq in iter_sequences(k, a.universe_size, n):
        offset = len(carrier)
        carrier.extend(IndexedPlay(seq, i) for i in range(1, len(seq) + 1))
        for name in a.signature.names:
            relations[name].extend(tuple(offset + i - 1 for i in idx) for idx in _lifted_index_tuples(a, name, seq))

    names = [encode_play(pl, a.names) for pl in carrier]
    lifted = structures.Structure(a.signature, len(carrier), relations, names=names, validate=False)
    logger.info('Built PR_{{{},{}}} with {} carrier elements'.format(k, n, len(carrier)))
    return PRStructure(a, k, n, carrier, lifted)


# ------------------------ #
# Lifted relations: P_k    #
# ------------------------ #

def p_tuple_holds(base, name, seqs):
    """
    Decide whether a tuple of plays is in the lifted relation ``name`` of ``P_k A``.

    The plays must be pairwise comparable under the prefix order; for each pair with the shorter a prefix of the
    longer, the last pebble of the shorter must not be placed in the longer's remaining positions; and the last
    elements must be related in ``base``.
    """
    seqs = [tuple(s) for s in seqs]
    for s, t in itertools.combinations(seqs, 2):
        short, long_ = (s, t) if len(s) <= len(t) else (t, s)
        if long_[:len(short)] != short:
            return False
        p = short[-1][0]
        if any(q == p for q, _ in long_[len(short):]):
            return False
    return base.holds(name, tuple(s[-1][1] for s in seqs))


def build_p(a, k, n, budget=None):
    """
    Materialize ``P_{k,n} A``: the universe is every play of length ``1..n``.

    Related tuples always consist of prefixes of their longest member, so they are generated per play ``t`` from the
    index tuples that reach ``|t|``.

    :return: the structure and the list of plays, indexed like its universe
    :rtype: tuple(:class:`~pebblepath.structures.Structure`, list)
    """
    if k < 1 or n < 1:
        raise ValueError('k and n must both be >= 1')
    size = sum((k * a.universe_size) ** m for m in range(1, n + 1))
    _check_budget(size, budget, 'P_{{{},{}}}'.format(k, n))

    seqs = list(iter_sequences(k, a.universe_size, n))
    position = {s: x for x, s in enumerate(seqs)}
    relations = {name: set() for name in a.signature.names}
    for t in seqs:
        for name in a.signature.names:
            for idx in _lifted_index_tuples(a, name, t):
                if max(idx) == len(t):
                    relations[name].add(tuple(position[t[:i]] for i in idx))
    names = [encode_seq(s, a.names) for s in seqs]
    rels = {name: sorted(tups) for name, tups in relations.items()}
    return structures.Structure(a.signature, len(seqs), rels, names=names, validate=False), seqs


# ------------------- #
# Comonad structure   #
# ------------------- #

class CoKleisliMap(object):
    """
    A map from the carrier of ``PR_{k,n} A`` to the elements of ``B``.

    :param k: number of pebbles
    :param n: maximum play length
    :param table: dictionary from :class:`IndexedPlay` to element
    """
    def __init__(self, k, n, table):
        self.k = k
        self.n = n
        self.table = dict(table)

    def __call__(self, play):
        return self.table[play]

    def __eq__(self, other):
        return isinstance(other, CoKleisliMap) and (self.k, self.n, self.table) == (other.k, other.n, other.table)

    @classmethod
    def from_function(cls, a, k, n, fxn):
        return cls(k, n, {pl: fxn(pl) for pl in iter_carrier(k, a.universe_size, n)})

    @classmethod
    def counit_map(cls, a, k, n):
        return cls.from_function(a, k, n, counit)

    @classmethod
    def lift_hom(cls, a, k, n, h):
        """The map ``h . counit`` for a homomorphism ``h`` given as a sequence or dict."""
        return cls.from_function(a, k, n, lambda pl: h[counit(pl)])


def coextension(f, play):
    """
    Apply the coextension of ``f``: the play keeps its pebbles and index, and position ``j`` carries ``f(s, j)``.
    """
    seq = play.seq
    return IndexedPlay(tuple((p, f(IndexedPlay(seq, j))) for j, (p, _) in enumerate(seq, start=1)), play.index)


def cokleisli_compose(g, f):
    """The coKleisli composite ``g . f*`` as a function on plays."""
    return lambda play: g(coextension(f, play))


def map_pr(h, play):
    """Functor action: relabel every element of the play with ``h`` (``h`` is a callable)."""
    return IndexedPlay(tuple((p, h(a)) for p, a in play.seq), play.index)


def comultiplication(play):
    """
    Replace each placement of the play by the indexed play pointing at it, keeping the pebbles and index.
    """
    seq = play.seq
    return IndexedPlay(tuple((p, IndexedPlay(seq, j)) for j, (p, _) in enumerate(seq, start=1)), play.index)


def nu(play):
    """The prefix of the play up to and including its index."""
    return play.seq[:play.index]


def delta_prime(seq):
    """Comultiplication of ``P_k``: each placement is replaced by the prefix ending at it."""
    return tuple((p, seq[:j]) for j, (p, _) in enumerate(seq, start=1))


def is_sigma_morphism(pr, target, f):
    """
    Check that a map on the carrier of ``pr`` is a homomorphism into ``target``.

    :param pr: the lifted structure
    :type pr: :class:`PRStructure`
    :param target: the codomain structure
    :param f: a callable or :class:`CoKleisliMap` on indexed plays
    """
    try:
        images = [f(pl) for pl in pr.carrier]
    except KeyError:
        return False
    return structures.is_homomorphism(pr.as_structure, target, images)


# -------------- #
# Law checking   #
# -------------- #

class LawReport(object):
    """
    Outcome of :func:`check_comonad_laws`.

    :ivar results: law name to ``True``/``False``
    :ivar counterexamples: law name to the first failing indexed play (failed laws only)
    :ivar seed: seed used for the random probe maps
    """
    def __init__(self, seed):
        self.seed = seed
        self.results = dict()
        self.counterexamples = dict()

    def record(self, law, failure):
        if failure is None:
            self.results.setdefault(law, True)
        else:
            if self.results.get(law, True):
                self.counterexamples[law] = failure
            self.results[law] = False

    @property
    def passed(self):
        return all(self.results.values())

    def summary_lines(self):
        lines = ['seed = {}'.format(self.seed)]
        for law in sorted(self.results):
            status = 'pass' if self.results[law] else 'FAIL at {}'.format(self.counterexamples[law])
            lines.append('{}: {}'.format(law, status))
        return lines


def _first_failure(plays, check):
    for pl in plays:
        if not check(pl):
            return pl
    return None


def probe_maps(a, k, n, seed, n_random):
    """
    Build the probe coKleisli maps used by the law checks: the counit, one constant map per element and ``n_random``
    uniformly random maps from a generator seeded with ``seed``.
    """
    carrier = list(iter_carrier(k, a.universe_size, n))
    probes = [CoKleisliMap.counit_map(a, k, n)]
    probes.extend(CoKleisliMap(k, n, {pl: b for pl in carrier}) for b in a.universe)
    if a.universe_size > 0:
        rng = np.random.default_rng(seed)
        for _ in range(n_random):
            draws = rng.integers(0, a.universe_size, size=len(carrier))
            probes.append(CoKleisliMap(k, n, {pl: int(b) for pl, b in zip(carrier, draws)}))
    return probes


def terminal_structure(signature):
    """The one-element structure in which every relation holds; every structure maps onto it."""
    return structures.Structure(signature, 1, {name: [(0,) * signature.arity(name)] for name in signature.names})


def check_comonad_laws(a, k, n, seed=None, n_random=None, budget=None, homs=None, coextension_fxn=coextension,
                       comultiplication_fxn=comultiplication):
    """
    Exhaustively check the comonad laws on ``PR_{k,n} A`` for a family of probe maps from ``PR_{k,n} A`` to ``A``.

    Checked laws: the coextension of the counit is the identity; counit after coextension recovers the map; the
    coextension of a composite is the composite of coextensions; both counit laws of the comultiplication;
    naturality of the comultiplication along the probe functions on elements and along homomorphisms into other
    structures; the compatibility of ``nu`` with the two comultiplications; and that the counit, ``nu`` and the
    lifted homomorphisms are homomorphisms.

    :param homs: pairs ``(b, h)`` of a structure and a homomorphism from ``a`` to it as a sequence; by default the
     map onto :func:`terminal_structure`
    :param coextension_fxn: the coextension to test, replaceable to run negative controls
    :param comultiplication_fxn: the comultiplication to test, replaceable likewise
    :return: the report
    :rtype: :class:`LawReport`
    :raises exceptions.StructureException: if one of ``homs`` is not a homomorphism
    """
    dflt_seed, dflt_n_random = config.get_probe_settings()
    seed = dflt_seed if seed is None else seed
    n_random = dflt_n_random if n_random is None else n_random
    if homs is None:
        homs = [(terminal_structure(a.signature), (0,) * a.universe_size)]
    for b, h in homs:
        if not structures.is_homomorphism(a, b, h):
            raise exceptions.StructureException('{} is not a homomorphism into {!r}'.format(tuple(h), b))

    pr = build_pr(a, k, n, budget=budget)
    plays = pr.carrier
    probes = probe_maps(a, k, n, seed, n_random)
    report = LawReport(seed)

    report.record('coextension of counit is identity',
                  _first_failure(plays, lambda pl: coextension_fxn(counit, pl) == pl))
    for f in probes:
        report.record('counit after coextension',
                      _first_failure(plays, lambda pl: counit(coextension_fxn(f, pl)) == f(pl)))
    for f in probes:
        for g in probes:
            def composite(pl, f=f, g=g):
                return g(coextension_fxn(f, pl))

            report.record('coextension of composite',
                          _first_failure(plays, lambda pl: coextension_fxn(composite, pl)
                                         == coextension_fxn(g, coextension_fxn(f, pl))))

    report.record('mapped counit after comultiplication',
                  _first_failure(plays, lambda pl: map_pr(counit, comultiplication_fxn(pl)) == pl))
    report.record('counit after comultiplication',
                  _first_failure(plays, lambda pl: counit(comultiplication_fxn(pl)) == pl))

    elem_fxns = [lambda x: x] + [lambda x, b=b: b for b in a.universe]
    elem_fxns.extend(lambda x, h=h: h[x] for _, h in homs)
    for h in elem_fxns:
        report.record('comultiplication naturality',
                      _first_failure(plays, lambda pl: comultiplication_fxn(map_pr(h, pl))
                                     == map_pr(lambda q: map_pr(h, q), comultiplication_fxn(pl))))
    for b, h in homs:
        pr_b = build_pr(b, k, n, budget=budget)
        report.record('counit naturality', _first_failure(plays, lambda pl: counit(map_pr(h.__getitem__, pl))
                                                          == h[counit(pl)]))
        lifted = is_sigma_morphism(pr, pr_b.as_structure, lambda pl: pr_b.position[map_pr(h.__getitem__, pl)])
        report.record('lifted homomorphism is a homomorphism', None if lifted else plays[0])
    report.record('nu compatible with comultiplication',
                  _first_failure(plays, lambda pl: nu(map_pr(nu, comultiplication_fxn(pl))) == delta_prime(nu(pl))))

    report.record('counit is a homomorphism', None if is_sigma_morphism(pr, a, counit) else plays[0])
    p_struct, seqs = build_p(a, k, n, budget=budget)
    p_position = {s: x for x, s in enumerate(seqs)}
    report.record('nu is a homomorphism',
                  None if is_sigma_morphism(pr, p_struct, lambda pl: p_position[nu(pl)]) else plays[0])

    logger.info('Comonad laws on PR_{{{},{}}}: {}'.format(k, n, 'all pass' if report.passed else 'FAILURES'))
    return report


# ------------------ #
# Textual encoding   #
# ------------------ #

def encode_seq(seq, names=None):
    """Encode a play as ``pebble:element`` placements joined by semicolons, e.g. ``1:0;2:1``."""
    if names is None:
        return ';'.join('{}:{}'.format(p, a) for p, a in seq)
    return ';'.join('{}:{}'.format(p, names[a]) for p, a in seq)


def encode_play(play, names=None):
    """Encode an indexed play, e.g. ``1:0;2:1@2`` for the play ``[(1,0),(2,1)]`` at index 2."""
    return '{}@{}'.format(encode_seq(play.seq, names), play.index)


def decode_seq(text, name_index=None):
    """
    Inverse of :func:`encode_seq`.

    :param name_index: dictionary from element name to element; if ``None`` names must be integers
    """
    seq = []
    for item in text.split(';'):
        try:
            p, a = item.split(':', 1)
            p = int(p)
        except ValueError:
            raise exceptions.FormatException('Cannot parse placement "{}"'.format(item)) from None
        if name_index is None:
            try:
                a = int(a)
            except ValueError:
                raise exceptions.FormatException('Element "{}" is not an integer'.format(a)) from None
        elif a in name_index:
            a = name_index[a]
        else:
            raise exceptions.FormatException('Unknown element "{}"'.format(a))
        seq.append((p, a))
    return tuple(seq)


def decode_play(text, name_index=None):
    """Inverse of :func:`encode_play`."""
    seq_text, sep, idx_text = text.rpartition('@')
    if not sep:
        raise exceptions.FormatException('Play "{}" has no "@index" suffix'.format(text))
    try:
        index = int(idx_text)
    except ValueError:
        raise exceptions.FormatException('Bad index in play "{}"'.format(text)) from None
    try:
        return make_play(decode_seq(seq_text, name_index), index)
    except ValueError as err:
        raise exceptions.FormatException(str(err)) from None
