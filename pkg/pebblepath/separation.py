"""
The classic existential k-pebble game, used as a reference point, and a search for pairs of structures that it
separates from the all-in-one game.
"""
import itertools
from logging import getLogger

import numpy as np

from . import config, exceptions, games, structures

logger = getLogger('separation')

COLOURED_DIGRAPH = structures.Signature({'E': 2, 'R': 1, 'G': 1})


def decide_one_sided_pebble(a, b, k, budget=None):
    """
    Decide the existential k-pebble game on ``a`` and ``b``.

    Duplicator wins iff the greatest family of partial homomorphisms with domains of at most ``k`` elements that is
    closed under restriction and has the forth property (every map on fewer than ``k`` elements extends to any new
    element) is nonempty. The family is computed by deleting maps until nothing changes.

    :return: "Spoiler" or "Duplicator"
    :rtype: str
    """
    budget = config.get_limit('state_budget', override=budget)
    family = set()
    for size in range(0, k + 1):
        for dom in itertools.combinations(a.universe, size):
            for img in itertools.product(b.universe, repeat=size):
                h = tuple(zip(dom, img))
                if structures.is_partial_hom(a, b, h):
                    family.add(h)
                    if len(family) > budget:
                        raise exceptions.BudgetExceededException('Pebble game family exceeded the budget of {}'
                                                                 .format(budget))

    changed = True
    while changed:
        changed = False
        for h in sorted(family):
            dom = {x for x, _ in h}
            ok = all(h[:i] + h[i + 1:] in family for i in range(len(h)))
            if ok and len(h) < k:
                for x in a.universe:
                    if x in dom:
                        continue
                    if not any(tuple(sorted(h + ((x, y),))) in family for y in b.universe):
                        ok = False
                        break
            if not ok:
                family.discard(h)
                changed = True

    winner = games.DUPLICATOR if () in family else games.SPOILER
    logger.debug('Existential {}-pebble game: {} wins ({} maps survive)'.format(k, winner, len(family)))
    return winner


def is_separating(a, b, k, budget=None):
    """``True`` if Spoiler wins the existential k-pebble game but Duplicator wins the all-in-one k-pebble game."""
    if decide_one_sided_pebble(a, b, k, budget=budget) != games.SPOILER:
        return False
    return games.decide_all_in_one(a, b, k, budget=budget).duplicator_wins


def hub_candidates():
    """
    Candidate pairs built from a three-legged spider and a structure where every pair of legs shares a hub but no hub
    has all three. Legs with the same colours share their far end in the cover, which keeps it to 8 vertices.

    The legs of the spider are told apart only by their far ends, so no part of it that can be pebbled along a path
    with two pebbles sees all three legs at once. Variants with fewer distinguishable legs come after the first one
    and are not separating.
    """
    legs = [
        (False, ('R',)),    # hub -> x -> y, y red
        (False, ('G',)),    # hub -> x -> y, y green
        (True, ('R',)),     # hub -> x <- y, y red
    ]
    yield _spider(legs), _hub_cover(legs)
    yield _spider(legs[:2]), _hub_cover(legs[:2])


def _spider(legs):
    # element 0 is the hub; leg i uses 2i+1 (middle) and 2i+2 (end)
    edges = []
    colours = {'R': [], 'G': []}
    for i, (reverse, cols) in enumerate(legs):
        mid, end = 2 * i + 1, 2 * i + 2
        edges.append((0, mid))
        edges.append((end, mid) if reverse else (mid, end))
        for c in cols:
            colours[c].append((end,))
    rels = {'E': edges}
    rels.update(colours)
    return structures.Structure(COLOURED_DIGRAPH, 1 + 2 * len(legs), rels)


def _hub_cover(legs):
    # one hub per pair of legs, then one middle per leg, then one end per colour set
    pairs = list(itertools.combinations(range(len(legs)), 2))
    n_hubs = len(pairs)
    edges = []
    colours = {'R': [], 'G': []}
    for h, pair in enumerate(pairs):
        for i in pair:
            edges.append((h, n_hubs + i))
    ends = dict()
    for i, (reverse, cols) in enumerate(legs):
        mid = n_hubs + i
        if cols not in ends:
            ends[cols] = n_hubs + len(legs) + len(ends)
            for c in cols:
                colours[c].append((ends[cols],))
        end = ends[cols]
        edges.append((end, mid) if reverse else (mid, end))
    rels = {'E': edges}
    rels.update(colours)
    return structures.Structure(COLOURED_DIGRAPH, n_hubs + len(legs) + len(ends), rels)


def random_coloured_digraph(rng, n_vertices, edge_prob=0.3, colour_prob=0.3):
    """A random digraph without loops whose vertices are independently coloured red and/or green."""
    edges = [(u, v) for u in range(n_vertices) for v in range(n_vertices)
             if u != v and rng.random() < edge_prob]
    red = [(v,) for v in range(n_vertices) if rng.random() < colour_prob]
    green = [(v,) for v in range(n_vertices) if rng.random() < colour_prob]
    return structures.Structure(COLOURED_DIGRAPH, n_vertices, {'E': edges, 'R': red, 'G': green})


def random_candidates(n_pairs, max_vertices=8, seed=None):
    seed = config.get_probe_settings()[0] if seed is None else seed
    rng = np.random.default_rng(seed)
    for _ in range(n_pairs):
        na = int(rng.integers(1, max_vertices + 1))
        nb = int(rng.integers(1, max_vertices + 1))
        yield random_coloured_digraph(rng, na), random_coloured_digraph(rng, nb)


def find_separation(k=2, candidates=None, n_random=0, max_vertices=8, seed=None, budget=None):
    """
    Search for a pair of coloured digraphs on which the existential k-pebble game and the all-in-one k-pebble game
    disagree (Spoiler wins the former, Duplicator the latter).

    :param candidates: pairs to try first; the hub construction if ``None``
    :param n_random: number of random pairs on at most ``max_vertices`` vertices to try afterwards
    :param max_vertices: candidates with a larger structure on either side are skipped
    :return: the first separating pair, or ``None``
    """
    if candidates is None:
        candidates = hub_candidates()
    pool = itertools.chain(candidates, random_candidates(n_random, max_vertices=max_vertices, seed=seed))
    for i, (a, b) in enumerate(pool):
        if max(a.universe_size, b.universe_size) > max_vertices:
            logger.debug('Skipping candidate pair {}: more than {} vertices'.format(i, max_vertices))
            continue
        try:
            if is_separating(a, b, k, budget=budget):
                logger.info('Candidate pair {} separates the two {}-pebble games'.format(i, k))
                return a, b
        except exceptions.BudgetExceededException as err:
            logger.warning('Skipping candidate pair {}: {}'.format(i, err))
    return None
