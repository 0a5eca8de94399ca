"""
Path decompositions, k-pebble linear forest covers and coalgebras of the pebble-relation comonad.

The three are interconvertible:

* :func:`pd_to_cover` and :func:`cover_to_pd` go between decompositions of width < k and k-pebble covers;
* :func:`cover_to_coalgebra` and :func:`coalgebra_to_cover` go between covers and coalgebras, and are mutually
  inverse.

:func:`pathwidth_exact` computes the pathwidth through vertex separation of element layouts, while
:func:`coalgebra_number` independently searches for the least k admitting a k-pebble cover.
"""
from logging import getLogger

import networkx as nx

from . import comonad, config, exceptions, structures

logger = getLogger('decomposition')


class ValidationResult(object):
    """
    Outcome of one of the ``validate_*`` functions. Truthy iff valid.

    :ivar ok: whether every clause holds
    :ivar clause: name of the first violated clause, e.g. "PD3"
    :ivar witness: the bag indices, chain or elements exhibiting the violation
    :ivar width: the width, for valid path decompositions
    """
    def __init__(self, ok, clause=None, witness=None, message='', width=None):
        self.ok = ok
        self.clause = clause
        self.witness = witness
        self.message = message
        self.width = width

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return 'ValidationResult(ok, width={})'.format(self.width)
        return 'ValidationResult({}: {} witness={})'.format(self.clause, self.message, self.witness)

    def require(self):
        """Raise :class:`~pebblepath.exceptions.DecompositionException` if invalid, otherwise return ``self``."""
        if not self.ok:
            raise exceptions.DecompositionException('{} violated: {} (witness {})'
                                                    .format(self.clause, self.message, self.witness))
        return self


def _violation(clause, witness, message):
    return ValidationResult(False, clause=clause, witness=witness, message=message)


class PathDecomposition(object):
    """An ordered sequence of bags (sets of elements)."""
    def __init__(self, bags):
        self.bags = tuple(frozenset(b) for b in bags)

    @property
    def width(self):
        return max((len(b) for b in self.bags), default=0) - 1

    def first_bag(self, a):
        for x, bag in enumerate(self.bags):
            if a in bag:
                return x
        return None

    def __eq__(self, other):
        return isinstance(other, PathDecomposition) and self.bags == other.bags

    def __repr__(self):
        return 'PathDecomposition({})'.format([sorted(b) for b in self.bags])


class LinearForestCover(object):
    """
    A partition of the universe into chains together with a pebbling function.

    Two covers are equal if they have the same chains (as ordered sequences, in any listing order), the same pebbling
    and the same number of pebbles.

    :param chains: the chains, each an ordered sequence of elements
    :param pebbling: element to pebble in ``1..k``
    :param k: number of pebbles
    """
    def __init__(self, chains, pebbling, k):
        self.chains = tuple(tuple(c) for c in chains)
        self.pebbling = dict(pebbling)
        self.k = k

    def positions(self):
        """Element to ``(chain index, position in chain)``."""
        return {a: (ic, ia) for ic, chain in enumerate(self.chains) for ia, a in enumerate(chain)}

    def ordered_sum(self):
        return [a for chain in self.chains for a in chain]

    def __eq__(self, other):
        return (isinstance(other, LinearForestCover) and self.k == other.k and self.pebbling == other.pebbling
                and set(self.chains) == set(other.chains))

    def __repr__(self):
        return 'LinearForestCover(k={}, chains={}, pebbling={})'.format(
            self.k, [list(c) for c in self.chains], dict(sorted(self.pebbling.items())))


class Coalgebra(object):
    """
    A structure map: every element is sent to an indexed play over the same structure.

    :param k: number of pebbles
    :param alpha: element to :class:`~pebblepath.comonad.IndexedPlay`
    """
    def __init__(self, k, alpha):
        self.k = k
        self.alpha = dict(alpha)

    def __call__(self, a):
        return self.alpha[a]

    def __eq__(self, other):
        return isinstance(other, Coalgebra) and self.k == other.k and self.alpha == other.alpha

    def __repr__(self):
        items = ', '.join('{} -> {}'.format(a, comonad.encode_play(pl)) for a, pl in sorted(self.alpha.items()))
        return 'Coalgebra(k={}, {})'.format(self.k, items)


# ------------ #
# Validation   #
# ------------ #

def validate_pd(a, pd):
    """
    Check that ``pd`` is a path decomposition of ``a``.

    The clauses are checked in order: bags only contain elements of ``a`` ("range"), every element is in a bag
    ("PD1"), every Gaifman edge is inside a bag ("PD2") and the bags containing an element are consecutive ("PD3").

    :return: the result, carrying the width when valid
    :rtype: :class:`ValidationResult`
    """
    for x, bag in enumerate(pd.bags):
        bad = [e for e in bag if e not in a.universe]
        if bad:
            return _violation('range', (x, bad[0]), 'bag {} contains an element outside the universe'.format(x))

    for e in a.universe:
        if pd.first_bag(e) is None:
            return _violation('PD1', e, 'element {} is in no bag'.format(e))

    for u, v in structures.gaifman_edges(a):
        if not any(u in bag and v in bag for bag in pd.bags):
            return _violation('PD2', (u, v), 'edge {}-{} is in no bag'.format(u, v))

    for e in a.universe:
        where = [x for x, bag in enumerate(pd.bags) if e in bag]
        for x, y in zip(where[:-1], where[1:]):
            if y != x + 1:
                return _violation('PD3', (e, x, x + 1, y),
                                  'element {} is in bags {} and {} but not bag {}'.format(e, x, y, x + 1))

    return ValidationResult(True, width=pd.width)


def validate_cover(a, c):
    """
    Check that ``c`` is a k-pebble linear forest cover of ``a``.

    Clauses: the chains partition the universe ("partition"), pebbles lie in ``1..k`` ("pebbling"), every Gaifman
    edge lies inside one chain ("FC1") and no element strictly after ``u`` up to and including a later neighbour
    ``v`` of ``u`` carries ``u``'s pebble ("FC2").
    """
    flat = c.ordered_sum()
    if sorted(flat) != list(a.universe):
        seen = set()
        dup = [e for e in flat if e in seen or seen.add(e)]
        missing = sorted(set(a.universe) - set(flat))
        witness = dup[0] if dup else (missing[0] if missing else sorted(set(flat) - set(a.universe))[0])
        return _violation('partition', witness, 'the chains do not partition the universe')

    for e in a.universe:
        p = c.pebbling.get(e)
        if p is None or p < 1 or p > c.k:
            return _violation('pebbling', e, 'element {} has pebble {!r}, expected 1..{}'.format(e, p, c.k))

    pos = c.positions()
    for u, v in structures.gaifman_edges(a):
        (cu, iu), (cv, iv) = pos[u], pos[v]
        if cu != cv:
            return _violation('FC1', (u, v), 'edge {}-{} joins chains {} and {}'.format(u, v, cu, cv))
        if iu > iv:
            u, v, iu, iv = v, u, iv, iu
        chain = c.chains[cu]
        for b in chain[iu + 1:iv + 1]:
            if c.pebbling[b] == c.pebbling[u]:
                return _violation('FC2', (u, v, b), 'pebble {} of {} is reused by {} before its neighbour {}'
                                  .format(c.pebbling[u], u, b, v))
    return ValidationResult(True)


def validate_coalgebra(a, k, alpha):
    """
    Check that ``alpha`` is a coalgebra for the k-pebble comonad on ``a``.

    Clauses: ``alpha`` is total and its plays use pebbles ``1..k`` ("plays"); the counit of ``alpha(e)`` is ``e``
    ("counit"); ``alpha`` is a homomorphism into the lifted structure ("homomorphism"); and applying ``alpha`` to the
    element at position ``l`` of ``alpha(e)``'s play gives that play at index ``l`` ("comultiplication"). The last is
    equivalent to the comultiplication law because both sides of the law are determined by those values.

    :param alpha: a :class:`Coalgebra` or a dictionary from element to indexed play
    """
    alpha = alpha.alpha if isinstance(alpha, Coalgebra) else alpha
    for e in a.universe:
        if e not in alpha:
            return _violation('plays', e, 'element {} has no play'.format(e))
        try:
            comonad.validate_seq(alpha[e].seq, k, a.universe_size)
        except ValueError as err:
            return _violation('plays', e, str(err))

    for e in a.universe:
        if comonad.counit(alpha[e]) != e:
            return _violation('counit', e, 'the play of {} points at {}'.format(e, comonad.counit(alpha[e])))

    for name in a.signature.names:
        for tup in a.tuples(name):
            if not comonad.pr_tuple_holds(a, name, [alpha[e] for e in tup]):
                return _violation('homomorphism', (name, tup), 'tuple {} of {} is not preserved'.format(tup, name))

    for e in a.universe:
        play = alpha[e]
        for l, (_, t_l) in enumerate(play.seq, start=1):
            if alpha[t_l] != comonad.IndexedPlay(play.seq, l):
                return _violation('comultiplication', (e, l), 'element {} at position {} of the play of {} is '
                                  'not sent to that position'.format(t_l, l, e))
    return ValidationResult(True)


# ------------------- #
# Section families    #
# ------------------- #

def build_section_family(a, pd, k):
    """
    Build a k-pebbling section family for a path decomposition of width < k.

    Bags are processed left to right. The first bag's elements receive pebbles ``1, 2, ...`` in increasing element
    order; every later bag keeps the pebbles of the elements it shares with the previous bag and gives its new
    elements, in increasing order, the smallest pebbles not used by the shared ones.

    :return: one dictionary per bag, from element to pebble
    :rtype: list(dict)
    :raises exceptions.DecompositionException: if ``pd`` is invalid or too wide
    """
    validate_pd(a, pd).require()
    if pd.width >= k:
        raise exceptions.DecompositionException('Decomposition has width {}, need < {}'.format(pd.width, k))

    family = []
    prev = dict()
    for bag in pd.bags:
        tau = {e: p for e, p in prev.items() if e in bag}
        free = [p for p in range(1, k + 1) if p not in tau.values()]
        for e, p in zip(sorted(bag - set(tau)), free):
            tau[e] = p
        family.append(tau)
        prev = tau
    return family


def check_section_family(pd, family, k):
    """
    Check local injectivity and gluing on every pair of bags (not only neighbouring ones).
    """
    if len(family) != len(pd.bags):
        return _violation('family', None, 'expected {} sections, got {}'.format(len(pd.bags), len(family)))
    for x, (bag, tau) in enumerate(zip(pd.bags, family)):
        if set(tau) != set(bag):
            return _violation('domain', x, 'section {} is not defined on exactly its bag'.format(x))
        if any(p < 1 or p > k for p in tau.values()) or len(set(tau.values())) != len(tau):
            return _violation('injective', x, 'section {} is not an injection into 1..{}'.format(x, k))
    for x in range(len(family)):
        for y in range(x + 1, len(family)):
            for e in pd.bags[x] & pd.bags[y]:
                if family[x][e] != family[y][e]:
                    return _violation('glue', (x, y, e), 'sections {} and {} disagree on {}'.format(x, y, e))
    return ValidationResult(True)


# ------------- #
# Conversions   #
# ------------- #

def pd_to_cover(a, pd, k):
    """
    Convert a path decomposition of width < k into a k-pebble linear forest cover.

    Chains are the connected components of the Gaifman graph. Each element is keyed by the first bag containing it and
    its pebble there; chains are ordered by those keys, and listed in the order of their first elements' keys. The
    pebbling glues the section family of :func:`build_section_family`.
    """
    family = build_section_family(a, pd, k)
    pebbling = dict()
    for tau in family:
        pebbling.update(tau)

    def key(e):
        x = pd.first_bag(e)
        return x, family[x][e]

    chains = [sorted(comp, key=key) for comp in nx.connected_components(structures.gaifman(a))]
    chains.sort(key=lambda chain: key(chain[0]))
    return LinearForestCover(chains, pebbling, k)


def active_predecessors(c, e, pos=None):
    """Elements of ``e``'s chain up to and including ``e`` whose pebble is not reused after them up to ``e``."""
    pos = c.positions() if pos is None else pos
    ic, ie = pos[e]
    chain = c.chains[ic]
    active = set()
    for ib in range(ie + 1):
        b = chain[ib]
        if all(c.pebbling[d] != c.pebbling[b] for d in chain[ib + 1:ie + 1]):
            active.add(b)
    return active


def cover_to_pd(a, c):
    """
    Convert a cover into a path decomposition with one bag per element, in the order of the concatenated chains. The
    bag of an element holds its active predecessors, so the width is below the number of pebbles.
    """
    pos = c.positions()
    return PathDecomposition([active_predecessors(c, e, pos) for e in c.ordered_sum()])


def cover_to_coalgebra(a, c):
    """
    Convert a cover into a coalgebra: each chain becomes a play pebbled by the cover and each element is sent to that
    play at its own position.

    :raises exceptions.DecompositionException: if ``c`` is not a cover of ``a``
    """
    validate_cover(a, c).require()
    alpha = dict()
    for chain in c.chains:
        seq = tuple((c.pebbling[e], e) for e in chain)
        for j, e in enumerate(chain, start=1):
            alpha[e] = comonad.IndexedPlay(seq, j)
    return Coalgebra(c.k, alpha)


def coalgebra_to_cover(a, k, alpha):
    """
    Convert a coalgebra into a cover. Elements sharing a play form a chain ordered by index, the pebbling is the pebble
    at each element's index and chains are listed by least element.

    :raises exceptions.DecompositionException: if ``alpha`` is not a coalgebra on ``a`` with ``k`` pebbles
    """
    validate_coalgebra(a, k, alpha).require()
    alpha = alpha.alpha if isinstance(alpha, Coalgebra) else alpha
    chains = dict()
    for e in a.universe:
        chains.setdefault(alpha[e].seq, []).append(e)
    ordered = [sorted(members, key=lambda e: alpha[e].index) for members in chains.values()]
    ordered.sort(key=min)
    pebbling = {e: comonad.pebble_at(alpha[e]) for e in a.universe}
    return LinearForestCover(ordered, pebbling, k)


def canonical_cover(c):
    """
    Normal form of a cover: chains listed by least element and pebbles renumbered in order of first use along the
    concatenated chains.
    """
    chains = sorted(c.chains, key=min)
    renumber = dict()
    for chain in chains:
        for e in chain:
            renumber.setdefault(c.pebbling[e], len(renumber) + 1)
    return LinearForestCover(chains, {e: renumber[p] for e, p in c.pebbling.items()}, c.k)


def pad_cover(c, k):
    """The same cover seen as a cover with ``k >= c.k`` pebbles."""
    if k < c.k:
        raise ValueError('Cannot shrink a cover from {} to {} pebbles'.format(c.k, k))
    return LinearForestCover(c.chains, c.pebbling, k)


def is_cover_morphism(a, ca, b, cb, f):
    """
    Check that ``f`` is a morphism of covered structures: a homomorphism from ``a`` to ``b`` sending each chain of
    ``ca`` monotonically into a single chain of ``cb`` and preserving the pebbling.
    """
    if not structures.is_homomorphism(a, b, f):
        return False
    pos_b = cb.positions()
    for chain in ca.chains:
        images = [pos_b[f[e]] for e in chain]
        if len({ic for ic, _ in images}) > 1:
            return False
        if any(i2 < i1 for (_, i1), (_, i2) in zip(images[:-1], images[1:])):
            return False
    return all(cb.pebbling[f[e]] == ca.pebbling[e] for e in a.universe)


# ------------ #
# Pathwidth    #
# ------------ #

def _component_graphs(a):
    g = structures.gaifman(a)
    g.remove_edges_from(nx.selfloop_edges(g))
    return [g.subgraph(comp).copy() for comp in sorted(nx.connected_components(g), key=min)]


def _vertex_separation(g, budget):
    """
    Branch and bound over layouts of one connected graph.

    Returns ``(vs, layout)`` where ``vs`` is the least over layouts of the largest number of placed vertices that
    still have unplaced neighbours. Prefix sets already reached with a cost at least as good are pruned.
    """
    nodes = sorted(g.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    nbr_mask = [0] * len(nodes)
    for v in nodes:
        for w in g.neighbors(v):
            nbr_mask[index[v]] |= 1 << index[w]
    full = (1 << len(nodes)) - 1

    def cost(mask):
        return sum(1 for i in range(len(nodes)) if mask >> i & 1 and nbr_mask[i] & ~mask & full)

    # the identity order gives the initial bound
    best = [max((cost((1 << (i + 1)) - 1) for i in range(len(nodes))), default=0), list(nodes)]
    seen = dict()
    states = [0]

    def search(mask, worst, layout):
        if worst >= best[0]:
            return
        if mask == full:
            best[0], best[1] = worst, [nodes[i] for i in layout]
            return
        if seen.get(mask, len(nodes) + 1) <= worst:
            return
        seen[mask] = worst
        states[0] += 1
        if states[0] > budget:
            raise exceptions.BudgetExceededException('Layout search exceeded the state budget of {}'.format(budget))
        for i in range(len(nodes)):
            if not mask >> i & 1:
                new_mask = mask | 1 << i
                layout.append(i)
                search(new_mask, max(worst, cost(new_mask)), layout)
                layout.pop()

    search(0, 0, [])
    return best[0], best[1]


def optimal_layout(a, budget=None):
    """
    An element ordering of least vertex separation, concatenating optimal layouts of the Gaifman components.

    :return: the vertex separation and the layout
    :rtype: tuple(int, list)
    """
    budget = config.get_limit('state_budget', override=budget)
    vs, layout = 0, []
    for g in _component_graphs(a):
        comp_vs, comp_layout = _vertex_separation(g, budget)
        vs = max(vs, comp_vs)
        layout.extend(comp_layout)
    return vs, layout


def layout_to_pd(a, layout):
    """
    The path decomposition of a layout: bag ``i`` holds the ``i``-th element and every earlier element with a
    neighbour at position ``i`` or later.
    """
    g = structures.gaifman(a)
    pos = {e: i for i, e in enumerate(layout)}
    last_nbr = {e: max(pos[w] for w in g.neighbors(e)) for e in layout}
    bags = []
    for i, e in enumerate(layout):
        bags.append({e} | {d for d in layout[:i] if last_nbr[d] >= i})
    return PathDecomposition(bags)


def trim_pd(pd):
    """Drop empty bags and bags equal to the bag before them; the result decomposes the same structures."""
    bags = []
    for bag in pd.bags:
        if bag and (not bags or bags[-1] != bag):
            bags.append(set(bag))
    return PathDecomposition(bags)


def pathwidth_exact(a, budget=None, return_pd=False):
    """
    Exact pathwidth, computed as the vertex separation number of the Gaifman graph. The empty structure has
    pathwidth 0.

    :param return_pd: also return a decomposition of that width
    """
    vs, layout = optimal_layout(a, budget=budget)
    logger.debug('Pathwidth {} with layout {}'.format(vs, layout))
    if return_pd:
        return vs, layout_to_pd(a, layout)
    return vs


def find_cover(a, k, budget=None):
    """
    Search directly for a k-pebble linear forest cover, one chain per Gaifman component.

    Chains grow one element at a time and the new element may take any pebble not still needed by an earlier element.
    An earlier element needs its pebble until all of its neighbours are placed. Every such choice is tried, and a
    state that failed (the placed elements together with the pebbles they still need) is not tried again. The cover
    found is checked with :func:`validate_cover`.

    :return: a cover, or ``None`` if none exists with ``k`` pebbles
    :raises exceptions.BudgetExceededException: if more than the state budget of search states are visited
    """
    budget = config.get_limit('state_budget', override=budget)
    chains = []
    pebbling = dict()
    states = [0]
    for g in _component_graphs(a):
        nodes = sorted(g.nodes())
        failed = set()

        def waiting(u, placed):
            return any(w not in placed for w in g.neighbors(u))

        def place(placed, order, needed):
            if len(order) == len(nodes):
                return order
            key = (placed, frozenset(needed.items()))
            if key in failed:
                return None
            states[0] += 1
            if states[0] > budget:
                raise exceptions.BudgetExceededException('Cover search exceeded the state budget of {}'
                                                         .format(budget))
            held = set(needed.values())
            for v in nodes:
                if v in placed:
                    continue
                now = placed | {v}
                for p in range(1, k + 1):
                    if p in held:
                        continue
                    new_needed = {u: q for u, q in needed.items() if waiting(u, now)}
                    if waiting(v, now):
                        new_needed[v] = p
                    result = place(now, order + [(v, p)], new_needed)
                    if result is not None:
                        return result
            failed.add(key)
            return None

        order = place(frozenset(), [], dict())
        if order is None:
            logger.debug('No {}-pebble cover of the component {}'.format(k, nodes))
            return None
        chains.append([v for v, _ in order])
        pebbling.update(order)

    cover = LinearForestCover(chains, pebbling, k)
    validate_cover(a, cover).require()
    return cover


def coalgebra_number(a, budget=None, return_coalgebra=False):
    """
    The least k for which ``a`` has a coalgebra, found by searching for k-pebble covers with k = 1, 2, ...

    :param return_coalgebra: also return the validated coalgebra found at that k
    """
    k = 1
    while True:
        cover = find_cover(a, k, budget=budget)
        if cover is not None:
            break
        k += 1
    alpha = cover_to_coalgebra(a, cover)
    validate_coalgebra(a, k, alpha).require()
    if return_coalgebra:
        return k, alpha
    return k
