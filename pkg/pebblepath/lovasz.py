"""
Homomorphism-count equivalence over structures of bounded pathwidth.

Two structures are compared through the number of homomorphisms each receives from every structure ``C`` of
pathwidth below ``k`` with at most ``max_size`` elements. The verdict is only ever "equivalent up to (k, max_size)":
the enumeration is finite by construction.
"""
import itertools
from logging import getLogger
from multiprocessing import Pool

from . import config, decomposition, exceptions, structures

logger = getLogger('lovasz')

SKELETON = 'skeleton'
EXHAUSTIVE = 'exhaustive'


# ---------------------------- #
# Enumeration                  #
# ---------------------------- #

def _candidate_tuples(sig, universe, alive_at):
    """Every ``(name, tuple)`` whose elements are all alive when the largest of them is introduced."""
    out = []
    for name in sig.names:
        for tup in itertools.product(universe, repeat=sig.arity(name)):
            t = max(tup)
            if all(alive_at(x, t) for x in tup):
                out.append((name, tup))
    return out


def _iter_subsets(items):
    for r in range(len(items) + 1):
        for sub in itertools.combinations(items, r):
            yield sub


def _build(sig, n, chosen):
    rels = {name: [] for name in sig.names}
    for name, tup in chosen:
        rels[name].append(tup)
    return structures.Structure(sig, n, rels, validate=False)


def _iter_skeleton(sig, k, n):
    """
    Structures on ``n`` elements built along a path: element ``i`` is introduced at step ``i`` and stays alive until
    step ``end[i]``, at most ``k`` elements are alive at once, and tuples only use elements alive together.
    """
    for end in itertools.product(*[range(i, n) for i in range(n)]):
        if any(sum(1 for x in range(t + 1) if end[x] >= t) > k for t in range(n)):
            continue

        def alive_at(x, t, end=end):
            return x <= t <= end[x]

        bags = [{x for x in range(t + 1) if end[x] >= t} for t in range(n)]
        pd = decomposition.PathDecomposition(bags)
        for chosen in _iter_subsets(_candidate_tuples(sig, range(n), alive_at)):
            yield _build(sig, n, chosen), pd


def _iter_exhaustive(sig, k, n, budget):
    for c in structures.iter_structures(sig, n):
        width, pd = decomposition.pathwidth_exact(c, budget=budget, return_pd=True)
        if width < k:
            yield c, pd


def _canonical_key(c):
    return c.universe_size, sum(len(c.relations[n]) for n in c.signature.names), \
        tuple(c.tuples(n) for n in c.signature.names)


def enumerate_pw_structures(sig, k, max_size, method=SKELETON, budget=None):
    """
    Every structure over ``sig`` with at most ``max_size`` elements and pathwidth below ``k``, once per isomorphism
    class, each with a path decomposition of width below ``k``.

    :param method: "skeleton" builds the structures bag by bag so the width bound holds by construction;
     "exhaustive" filters every structure through the exact pathwidth. Both give the same classes.
    :param budget: maximum number of candidate structures; the configured ``enum_budget`` if ``None``
    :return: list of ``(structure, decomposition)`` in canonical order (size, number of tuples, tuples)
    :raises exceptions.BudgetExceededException: if more candidates would be examined
    """
    if method not in (SKELETON, EXHAUSTIVE):
        raise ValueError('method must be "{}" or "{}"'.format(SKELETON, EXHAUSTIVE))
    budget = config.get_limit('enum_budget', override=budget)
    found = []
    n_seen = 0
    for n in range(0, max_size + 1):
        if n == 0:
            stream = [(_build(sig, 0, []), decomposition.PathDecomposition([]))]
        elif method == SKELETON:
            stream = _iter_skeleton(sig, k, n)
        else:
            stream = _iter_exhaustive(sig, k, n, budget)
        for c, pd in stream:
            n_seen += 1
            if n_seen > budget:
                raise exceptions.BudgetExceededException('Enumeration exceeded the budget of {} candidates'
                                                         .format(budget))
            if not any(structures.are_isomorphic(c, d) for d, _ in found):
                found.append((c, pd))
    found.sort(key=lambda item: _canonical_key(item[0]))
    logger.info('{} structures with pathwidth < {} and at most {} elements ({} candidates, {})'
                .format(len(found), k, max_size, n_seen, method))
    return found


# ---------------------------- #
# Counting                     #
# ---------------------------- #

def hom_count_pd(c, pd, a):
    """
    Count homomorphisms from ``c`` to ``a`` by dynamic programming along a path decomposition of ``c``.

    The table maps each assignment of the current bag to the number of ways to extend it to the elements already
    forgotten. Moving to the next bag sums out the forgotten elements and extends by the new ones, checking every
    tuple as soon as all its elements are in the bag.

    :raises exceptions.DecompositionException: if ``pd`` does not decompose ``c``
    """
    decomposition.validate_pd(c, pd).require()
    tuples = [(name, tup) for name in c.signature.names for tup in c.relations[name]]
    table = {(): 1}
    current = ()
    for bag in pd.bags:
        keep = tuple(x for x in current if x in bag)
        new = tuple(sorted(x for x in bag if x not in current))
        projected = dict()
        for assignment, count in table.items():
            amap = dict(zip(current, assignment))
            key = tuple(amap[x] for x in keep)
            projected[key] = projected.get(key, 0) + count

        checks = [(name, tup) for name, tup in tuples if set(tup) <= bag and any(x in new for x in tup)]
        order = keep + new
        table = dict()
        for key, count in projected.items():
            for ext in itertools.product(a.universe, repeat=len(new)):
                amap = dict(zip(order, key + ext))
                if all(a.holds(name, tuple(amap[x] for x in tup)) for name, tup in checks):
                    table[key + ext] = table.get(key + ext, 0) + count
        current = order
    return sum(table.values())


class HomVector(object):
    """
    Homomorphism counts into a fixed target, one per indexed structure.

    :ivar ids: the structure identifiers, in index order
    :ivar counts: the counts, aligned with ``ids``
    """
    def __init__(self, ids, counts):
        self.ids = list(ids)
        self.counts = list(counts)

    def __len__(self):
        return len(self.counts)

    def __eq__(self, other):
        return isinstance(other, HomVector) and self.ids == other.ids and self.counts == other.counts

    def __iter__(self):
        return iter(zip(self.ids, self.counts))


def structure_ids(index):
    width = len(str(max(len(index) - 1, 0)))
    return ['C{:0{w}d}'.format(i, w=width) for i in range(len(index))]


def hom_vector(a, index, n_procs=1):
    """
    Count homomorphisms from every indexed structure into ``a``.

    :param index: the output of :func:`enumerate_pw_structures`
    :param n_procs: if more than 1, count in a process pool of this size
    """
    args = [(c, pd, a) for c, pd in index]
    if n_procs > 1:
        with Pool(processes=n_procs) as pool:
            counts = pool.starmap(hom_count_pd, args)
    else:
        counts = [hom_count_pd(*arg) for arg in args]
    return HomVector(structure_ids(index), counts)


class LovaszVerdict(object):
    """
    The outcome of a bounded comparison of homomorphism counts.

    :ivar equivalent: ``True`` if every indexed structure has the same count into both targets
    :ivar bound: ``(k, max_size)``
    :ivar witness: the first distinguishing structure (``None`` if equivalent)
    :ivar witness_id: its identifier
    :ivar counts: its counts into the two targets
    """
    def __init__(self, equivalent, bound, witness=None, witness_id=None, counts=None, vectors=None):
        self.equivalent = equivalent
        self.bound = bound
        self.witness = witness
        self.witness_id = witness_id
        self.counts = counts
        self.vectors = vectors

    def __bool__(self):
        return self.equivalent

    __nonzero__ = __bool__

    def describe(self):
        if self.equivalent:
            return 'equivalent up to (k={}, max_size={})'.format(*self.bound)
        return 'distinguished by {} ({} vs {} homomorphisms): {!r}'.format(self.witness_id, self.counts[0],
                                                                          self.counts[1], self.witness)


def lovasz_equiv(a, b, k, max_size, n_procs=1, index=None, budget=None):
    """
    Compare ``a`` and ``b`` by homomorphism counts from every structure of pathwidth below ``k`` with at most
    ``max_size`` elements.

    :param index: a precomputed enumeration, reused across comparisons
    :rtype: :class:`LovaszVerdict`
    """
    if a.signature != b.signature:
        raise exceptions.SignatureException('Structures have different signatures')
    if index is None:
        index = enumerate_pw_structures(a.signature, k, max_size, budget=budget)
    va = hom_vector(a, index, n_procs=n_procs)
    vb = hom_vector(b, index, n_procs=n_procs)
    for i, ((cid, ca), (_, cb)) in enumerate(zip(va, vb)):
        if ca != cb:
            logger.info('{} distinguishes the structures: {} vs {}'.format(cid, ca, cb))
            return LovaszVerdict(False, (k, max_size), witness=index[i][0], witness_id=cid, counts=(ca, cb),
                                 vectors=(va, vb))
    return LovaszVerdict(True, (k, max_size), vectors=(va, vb))
