"""
Decision procedures for the all-in-one pebble game, the pebble-relation game and the bijective all-in-one game, and
the conversions between Duplicator strategies and coKleisli maps.

Throughout, a Spoiler word is a tuple of ``(pebble, element)`` placements on ``A`` with pebbles ``1..k``, and a
Duplicator response to it is a tuple of elements of ``B`` of the same length (the pebbles are copied from the word).
"""
from collections import deque
import itertools
from logging import getLogger

from . import comonad, config, exceptions, structures

logger = getLogger('games')

SPOILER = 'Spoiler'
DUPLICATOR = 'Duplicator'

GAME_AIO = 'aio'
GAME_DALMAU = 'dalmau'
GAME_BIJECTIVE = 'bij-aio'


class GameVerdict(object):
    """
    The outcome of a game together with a certificate.

    :ivar winner: "Spoiler" or "Duplicator"
    :ivar game: "aio", "dalmau" or "bij-aio"
    :ivar certificate: for a Spoiler win the winning word (for Dalmau's game, the list of Spoiler's domains); for a
     Duplicator win a strategy object with a ``respond`` method
    :ivar hidden_index: the hidden index of a bijective-game Spoiler word, if any
    :ivar states: number of game states explored
    """
    def __init__(self, winner, game, k, certificate, max_len=None, equality=True, hidden_index=None, states=0):
        self.winner = winner
        self.game = game
        self.k = k
        self.certificate = certificate
        self.max_len = max_len
        self.equality = equality
        self.hidden_index = hidden_index
        self.states = states

    @property
    def duplicator_wins(self):
        return self.winner == DUPLICATOR

    def __repr__(self):
        return 'GameVerdict({}, game={}, k={}, max_len={})'.format(self.winner, self.game, self.k, self.max_len)


def _mode(equality):
    return structures.FUNCTION_MODE if equality else structures.RELATION_MODE


def _state_budget(budget):
    return config.get_limit('state_budget', override=budget)


# ----------------------- #
# All-in-one pebble game  #
# ----------------------- #

class _Consistency(object):
    """Memoized test that the pebbled pairs ``(pos[p], img[p])`` form a partial homomorphism."""
    def __init__(self, a, b, equality):
        self.a = a
        self.b = b
        self.mode = _mode(equality)
        self._cache = dict()

    def __call__(self, pos, img):
        pairs = frozenset((x, y) for x, y in zip(pos, img) if x is not None)
        try:
            return self._cache[pairs]
        except KeyError:
            ok = structures.is_partial_hom(self.a, self.b, pairs, mode=self.mode)
            self._cache[pairs] = ok
            return ok


def _advance(consistent, b, pos, survivors, p, x):
    """Apply Spoiler's letter ``(p, x)``: returns the new position and the surviving image tuples."""
    new_pos = pos[:p - 1] + (x,) + pos[p:]
    new_surv = set()
    for img in survivors:
        for y in b.universe:
            cand = img[:p - 1] + (y,) + img[p:]
            if consistent(new_pos, cand):
                new_surv.add(cand)
    return new_pos, frozenset(new_surv)


def replay_spoiler_word(a, b, k, word, equality=True):
    """
    Run the survivor computation along a Spoiler word.

    :return: the list of survivor sets after each prefix (the first entry is for the empty prefix)
    :rtype: list(frozenset)
    """
    consistent = _Consistency(a, b, equality)
    pos = (None,) * k
    survivors = frozenset([(None,) * k])
    history = [survivors]
    for p, x in word:
        pos, survivors = _advance(consistent, b, pos, survivors, p, x)
        history.append(survivors)
    return history


def decide_all_in_one(a, b, k, equality=True, max_len=None, budget=None):
    """
    Decide the all-in-one k-pebble game on ``a`` and ``b``.

    After a Spoiler word, the survivors are the pebble-to-element images that end some response whose every prefix
    is a partial homomorphism (a partial function as well when ``equality`` is set). The survivor set depends only on
    the current Spoiler position and the previous survivor set, so a breadth-first search over those pairs decides
    the game; Spoiler wins iff some reachable survivor set is empty.

    :param equality: if ``True`` the pebbled pairs must form a partial function; otherwise they are read as a
     relation
    :param max_len: only consider Spoiler words up to this length
    :param budget: maximum number of states; the configured ``state_budget`` if ``None``
    :return: the verdict; a Spoiler certificate is a shortest winning word
    :rtype: :class:`GameVerdict`
    :raises exceptions.BudgetExceededException: if more states are needed
    """
    budget = _state_budget(budget)
    consistent = _Consistency(a, b, equality)
    letters = [(p, x) for p in range(1, k + 1) for x in a.universe]
    start = ((None,) * k, frozenset([(None,) * k]))
    parent = {start: None}
    frontier = deque([(start, 0)])
    while frontier:
        state, depth = frontier.popleft()
        if max_len is not None and depth >= max_len:
            continue
        pos, survivors = state
        for p, x in letters:
            new_state = _advance(consistent, b, pos, survivors, p, x)
            if new_state in parent:
                continue
            parent[new_state] = (state, (p, x))
            if len(new_state[1]) == 0:
                word = _backtrack_word(parent, new_state)
                logger.info('Spoiler wins the all-in-one {}-pebble game with {}'.format(k, word))
                return GameVerdict(SPOILER, GAME_AIO, k, word, max_len=max_len, equality=equality,
                                   states=len(parent))
            if len(parent) > budget:
                raise exceptions.BudgetExceededException('All-in-one game exceeded the state budget of {}'
                                                         .format(budget))
            frontier.append((new_state, depth + 1))

    logger.info('Duplicator wins the all-in-one {}-pebble game ({} states)'.format(k, len(parent)))
    strategy = SurvivorStrategy(a, b, k, equality=equality)
    return GameVerdict(DUPLICATOR, GAME_AIO, k, strategy, max_len=max_len, equality=equality, states=len(parent))


def _backtrack_word(parent, state):
    word = []
    while parent[state] is not None:
        state, letter = parent[state]
        word.append(letter)
    return tuple(reversed(word))


# -------------------- #
# Duplicator handles   #
# -------------------- #

class SurvivorStrategy(object):
    """
    Duplicator's strategy read off the survivor sets: the lexicographically least response all of whose prefixes are
    consistent.
    """
    def __init__(self, a, b, k, equality=True):
        self.a = a
        self.b = b
        self.k = k
        self.equality = equality
        self._consistent = _Consistency(a, b, equality)

    def respond(self, word):
        """
        :return: the response as a tuple of elements of ``B``, or ``None`` if no response survives
        """
        word = tuple(tuple(pl) for pl in word)
        pos = (None,) * self.k
        layers = [(pos, frozenset([(None,) * self.k]))]
        for p, x in word:
            pos, surv = _advance(self._consistent, self.b, layers[-1][0], layers[-1][1], p, x)
            layers.append((pos, surv))
        if not layers[-1][1]:
            return None

        # good[i]: images at step i that extend to a full response
        good = [None] * len(layers)
        good[-1] = set(layers[-1][1])
        for i in range(len(word), 0, -1):
            p = word[i - 1][0]
            good[i - 1] = {img for img in layers[i - 1][1]
                           if any(img[:p - 1] + (y,) + img[p:] in good[i] for y in self.b.universe)}

        response = []
        img = (None,) * self.k
        for i, (p, _) in enumerate(word, start=1):
            for y in self.b.universe:
                cand = img[:p - 1] + (y,) + img[p:]
                if cand in good[i]:
                    response.append(y)
                    img = cand
                    break
        return tuple(response)


class CoKleisliStrategy(object):
    """
    Duplicator's strategy generated by a coKleisli map ``f``: the response to ``s`` is the coextension of ``f`` at
    ``s``, that is ``f(s, 1), ..., f(s, |s|)``.
    """
    def __init__(self, f):
        self.f = f
        self.k = f.k
        self.n = f.n

    def respond(self, word):
        word = tuple(tuple(pl) for pl in word)
        return tuple(self.f(comonad.IndexedPlay(word, j)) for j in range(1, len(word) + 1))


class DeduplicatingStrategy(object):
    """
    Answer a word with the base strategy's answer to the non-duplicating play of :func:`remove_duplicates`, pulled
    back along its index map. Every element pebbled in the word stays pebbled in the reduced play, so a winning base
    answer gives a winning answer to the word.
    """
    def __init__(self, base):
        self.base = base

    def respond(self, word):
        reduced, index_map = remove_duplicates(word)
        answer = self.base.respond(reduced)
        if answer is None:
            return None
        return tuple(answer[index_map[j] - 1] for j in range(1, len(word) + 1))


def response_wins(a, b, k, word, response, equality=True):
    """Check that every prefix of the response pairs the pebbled elements as a partial homomorphism."""
    if response is None or len(response) != len(word):
        return False
    consistent = _Consistency(a, b, equality)
    pos = [None] * k
    img = [None] * k
    for (p, x), y in zip(word, response):
        pos[p - 1] = x
        img[p - 1] = y
        if not consistent(tuple(pos), tuple(img)):
            return False
    return True


def find_losing_word(a, b, k, strategy, max_len, equality=True, words=None):
    """
    Probe a Duplicator strategy with every Spoiler word up to ``max_len`` (or the given words).

    :return: the first word the strategy fails to answer with a winning response, or ``None``
    """
    if words is None:
        words = comonad.iter_sequences(k, a.universe_size, max_len)
    for word in words:
        if not response_wins(a, b, k, word, strategy.respond(word), equality=equality):
            return word
    return None


# -------------------------- #
# Pebble-relation game       #
# -------------------------- #

def _homs_on(a, b, domain):
    """All homomorphisms from the substructure induced on ``domain`` into ``b``, as sorted tuples of pairs."""
    dom = sorted(domain)
    sub, emap = structures.induced_substructure(a, dom, return_map=True)
    return frozenset(tuple((x, h[emap[x]]) for x in dom) for h in structures.iter_homs(sub, b))


def _restrict(maps, domain):
    return frozenset(tuple(pr for pr in h if pr[0] in domain) for h in maps)


def decide_dalmau(a, b, k, budget=None):
    """
    Decide the pebble-relation game with Duplicator playing the complete strategy.

    Positions are pairs ``(I, T)`` with ``|I| <= k`` and ``T`` a set of homomorphisms from ``A`` restricted to ``I``
    into ``B``. Shrinking to ``I' ⊆ I`` restricts ``T``; blowing up to ``I' ⊇ I`` replies with every homomorphism on
    ``I'`` whose restriction lies in ``T``. Single-element moves generate all others, so only those are explored.

    :return: the verdict; a Spoiler certificate is the list of domains visited
    :rtype: :class:`GameVerdict`
    """
    budget = _state_budget(budget)
    homs_cache = dict()

    def homs(domain):
        if domain not in homs_cache:
            homs_cache[domain] = _homs_on(a, b, domain)
        return homs_cache[domain]

    start = (frozenset(), frozenset([()]))
    parent = {start: None}
    frontier = deque([start])
    while frontier:
        state = frontier.popleft()
        dom, maps = state
        moves = [dom - {x} for x in sorted(dom)]
        if len(dom) < k:
            moves.extend(dom | {x} for x in a.universe if x not in dom)
        for new_dom in moves:
            if new_dom < dom:
                new_maps = _restrict(maps, new_dom)
            else:
                new_maps = frozenset(h for h in homs(new_dom) if _restrict([h], dom) <= maps)
            new_state = (new_dom, new_maps)
            if new_state in parent:
                continue
            parent[new_state] = state
            if not new_maps:
                domains = []
                st = new_state
                while st is not None:
                    domains.append(sorted(st[0]))
                    st = parent[st]
                domains.reverse()
                logger.info('Spoiler wins the {}-pebble-relation game'.format(k))
                return GameVerdict(SPOILER, GAME_DALMAU, k, domains, states=len(parent))
            if len(parent) > budget:
                raise exceptions.BudgetExceededException('Pebble-relation game exceeded the state budget of {}'
                                                         .format(budget))
            frontier.append(new_state)
    logger.info('Duplicator wins the {}-pebble-relation game ({} states)'.format(k, len(parent)))
    return GameVerdict(DUPLICATOR, GAME_DALMAU, k, None, states=len(parent))


def replay_dalmau_domains(a, b, domains):
    """Replay a sequence of domains against the complete strategy, returning the final set of maps."""
    dom, maps = frozenset(), frozenset([()])
    for new_dom in domains:
        new_dom = frozenset(new_dom)
        if new_dom == dom:
            continue
        if new_dom < dom:
            maps = _restrict(maps, new_dom)
        elif dom <= new_dom:
            maps = frozenset(h for h in _homs_on(a, b, new_dom) if _restrict([h], dom) <= maps)
        else:
            raise exceptions.CertificateException('Domain {} neither shrinks nor blows up {}'
                                                  .format(sorted(new_dom), sorted(dom)))
        dom = new_dom
    return maps


# -------------------------------------- #
# Strategies <-> coKleisli maps          #
# -------------------------------------- #

def strategy_to_cokleisli(a, b, k, n, verdict, budget=None):
    """
    Turn a Duplicator win into a coKleisli map: ``f(s, i)`` is the ``i``-th element of Duplicator's response to ``s``.

    :param verdict: a Duplicator verdict of :func:`decide_all_in_one` (its strategy must answer words up to ``n``)
    :return: the map, checked to be a homomorphism from ``PR_{k,n} A`` to ``B``
    :rtype: :class:`~pebblepath.comonad.CoKleisliMap`
    :raises exceptions.GameException: if the verdict is not Duplicator's or the result is not a homomorphism
    """
    if not verdict.duplicator_wins:
        raise exceptions.GameException('A coKleisli map can only be extracted from a Duplicator win')
    if verdict.max_len is not None and verdict.max_len < n:
        raise exceptions.GameException('The verdict only covers words up to length {}'.format(verdict.max_len))
    strategy = verdict.certificate
    table = dict()
    for seq in comonad.iter_sequences(k, a.universe_size, n):
        response = strategy.respond(seq)
        if response is None:
            raise exceptions.GameException('The strategy has no response to {}'.format(seq))
        for i in range(1, len(seq) + 1):
            table[comonad.IndexedPlay(seq, i)] = response[i - 1]
    f = comonad.CoKleisliMap(k, n, table)
    pr = comonad.build_pr(a, k, n, budget=budget)
    if not comonad.is_sigma_morphism(pr, b, f):
        raise exceptions.GameException('The extracted map is not a homomorphism')
    return f


def cokleisli_to_strategy(a, b, f, budget=None):
    """
    Turn a coKleisli homomorphism into a Duplicator strategy answering with its coextension.

    The strategy wins the game read with relations (``equality=False``) on every word up to ``f.n``; on words
    without duplicated placements it also wins with equality.

    :raises exceptions.GameException: if ``f`` is not a homomorphism from ``PR_{k,n} A`` to ``B``
    """
    pr = comonad.build_pr(a, f.k, f.n, budget=budget)
    if not comonad.is_sigma_morphism(pr, b, f):
        raise exceptions.GameException('The coKleisli map is not a homomorphism')
    return CoKleisliStrategy(f)


def is_duplicating(seq):
    """``True`` if some placement repeats the element of an earlier placement whose pebble is still active."""
    for j in range(2, len(seq) + 1):
        for i in range(1, j):
            if seq[i - 1][1] == seq[j - 1][1] and comonad.is_active_at(seq, i, j):
                return True
    return False


def remove_duplicates(seq):
    """
    Rewrite a play so that no placement repeats an element held by another active pebble.

    A placement on an element that the reduced play already holds is dropped and indexed to the placement holding
    it. Any other placement is kept, but may be given a different pebble: its own pebble when that is free, else
    the least free pebble, where a pebble is free once no pebble of ``seq`` still sits on its element. The elements
    pebbled in ``seq`` after ``j`` placements are then always pebbled in the reduced play after ``index_map[j]``
    placements, at the positions the index map gives. A non-duplicating play comes back unchanged.

    :return: the reduced play and the 1-based index map ``j -> j'`` with the element at ``j'`` of the reduced play
     equal to the element at ``j`` of ``seq`` and ``j' <= j``
    :rtype: tuple(tuple, dict)
    """
    labels = sorted({p for p, _ in seq})
    placed = dict()
    board = dict()
    reduced = []
    index_map = dict()
    for j, (p, x) in enumerate(seq, start=1):
        placed.pop(p, None)
        occupied = set(placed.values())
        free = [lab for lab in labels if lab not in board or board[lab][0] not in occupied]
        holder = next((lab for lab, (y, _) in board.items() if y == x), None)

        if holder is not None and not (holder == p and x not in occupied):
            index_map[j] = board[holder][1]
        else:
            label = p if holder is not None or p in free else free[0]
            reduced.append((label, x))
            board[label] = (x, len(reduced))
            index_map[j] = len(reduced)
        placed[p] = x
    return tuple(reduced), index_map


def _active_positions(seq):
    last = dict()
    for i, (p, _) in enumerate(seq, start=1):
        last[p] = i
    return last


def dalmau_reply_from_cokleisli(f, a, seq):
    """
    The set-valued reply in the pebble-relation game generated by ``f`` after Spoiler's pebbles sit as in ``seq``.

    Every play ``s'`` of length at most ``f.n`` extending ``seq`` contributes the map sending each active element of
    ``seq`` to the image of its position under ``f`` at ``s'``.

    :return: the maps, each a sorted tuple of ``(element, image)`` pairs
    :rtype: frozenset
    """
    seq = tuple(tuple(pl) for pl in seq)
    m = len(seq)
    active = _active_positions(seq)
    placements = [(p, x) for p in range(1, f.k + 1) for x in a.universe]
    replies = set()
    for extra in range(0, f.n - m + 1):
        for tail in itertools.product(placements, repeat=extra):
            ext = seq + tail
            pairs = {(seq[z - 1][1], f(comonad.IndexedPlay(ext, z))) for z in active.values()}
            replies.add(tuple(sorted(pairs)))
    return frozenset(replies)


# ---------------------------- #
# Branching maps and isos      #
# ---------------------------- #

class BranchingMap(object):
    """
    The map ``a -> f(prefix + [(pebble, a)] + suffix, |prefix| + 1)`` generated by a coKleisli map.
    """
    def __init__(self, prefix, pebble, suffix, table):
        self.prefix = prefix
        self.pebble = pebble
        self.suffix = suffix
        self.table = dict(table)

    def __call__(self, x):
        return self.table[x]

    def is_bijection(self, target_size):
        return sorted(self.table.values()) == list(range(target_size)) and len(self.table) == target_size


def branching_map(f, a, prefix, pebble, suffix):
    """
    :raises exceptions.GameException: if the plays would be longer than ``f`` is defined for
    """
    prefix = tuple(tuple(pl) for pl in prefix)
    suffix = tuple(tuple(pl) for pl in suffix)
    if len(prefix) + 1 + len(suffix) > f.n:
        raise exceptions.GameException('Plays of length {} exceed the bound {}'
                                       .format(len(prefix) + 1 + len(suffix), f.n))
    index = len(prefix) + 1
    table = {x: f(comonad.IndexedPlay(prefix + ((pebble, x),) + suffix, index)) for x in a.universe}
    return BranchingMap(prefix, pebble, suffix, table)


def iter_branching_maps(f, a):
    """Every branching map of ``f`` with prefix and suffix within its length bound."""
    for total in range(1, f.n + 1):
        for before in range(total):
            after = total - 1 - before
            for prefix in _words(f.k, a.universe_size, before):
                for suffix in _words(f.k, a.universe_size, after):
                    for p in range(1, f.k + 1):
                        yield branching_map(f, a, prefix, p, suffix)


def _words(k, size, length):
    placements = [(p, x) for p in range(1, k + 1) for x in range(size)]
    return itertools.product(placements, repeat=length)


def check_cokleisli_iso(a, b, f, g):
    """
    Check that ``g`` after ``f`` and ``f`` after ``g`` (coKleisli composition) are both the counit, on every play up
    to the common length bound.
    """
    if (f.k, f.n) != (g.k, g.n):
        return False
    for pl in comonad.iter_carrier(f.k, a.universe_size, f.n):
        if g(comonad.coextension(f, pl)) != comonad.counit(pl):
            return False
    for pl in comonad.iter_carrier(g.k, b.universe_size, g.n):
        if f(comonad.coextension(g, pl)) != comonad.counit(pl):
            return False
    return True


def cokleisli_iso_from_isomorphism(a, b, h, k, n):
    """The pair ``(h . counit, h^-1 . counit)`` for an isomorphism ``h`` from ``a`` to ``b``."""
    if not structures.is_isomorphism(a, b, h):
        raise exceptions.GameException('Not an isomorphism')
    inv = [None] * b.universe_size
    for x in a.universe:
        inv[h[x]] = x
    return comonad.CoKleisliMap.lift_hom(a, k, n, h), comonad.CoKleisliMap.lift_hom(b, k, n, inv)


# ----------------------------------- #
# Bijective all-in-one pebble game    #
# ----------------------------------- #

class _IsoCheck(object):
    def __init__(self, a, b):
        self.a = a
        self.b = b
        self._cache = dict()

    def __call__(self, pairs):
        pairs = frozenset(pairs)
        if pairs not in self._cache:
            self._cache[pairs] = structures.is_partial_iso(self.a, self.b, pairs)
        return self._cache[pairs]


def bijective_response(a, b, k, word, hidden=None, iso_check=None):
    """
    Search for Duplicator's response to a Spoiler word in the bijective all-in-one game.

    Only the images of revealed elements matter for non-hidden positions, so those are chosen as single elements; at
    the hidden index a full bijection is chosen, and each prefix from there on must be a partial isomorphism for
    every element Spoiler may reveal.

    :param word: the placements; the element at the hidden index is ignored
    :param hidden: the 1-based hidden index, or ``None``
    :return: ``(images, bijection)`` where ``images[i]`` is the image at position ``i + 1`` (``None`` at the hidden
     index) and ``bijection`` is the hidden position's bijection (``None`` without a hidden index); or ``None`` if
     Duplicator cannot answer
    """
    if a.universe_size != b.universe_size:
        return None
    check = _IsoCheck(a, b) if iso_check is None else iso_check
    word = tuple(tuple(pl) for pl in word)
    n = len(word)
    reveals = list(a.universe) if hidden is not None else [None]
    bijections = list(itertools.permutations(b.universe))
    images = [None] * n
    chosen = [None]

    def prefix_ok(i):
        for r in (reveals if hidden is not None and i >= hidden else [None]):
            held = dict()
            for z in range(i):
                p, x = word[z]
                if z + 1 == hidden:
                    held[p] = (r, chosen[0][r])
                else:
                    held[p] = (x, images[z])
            if not check(held.values()):
                return False
        return True

    def extend(z):
        if z == n:
            return True
        if z + 1 == hidden:
            for psi in bijections:
                chosen[0] = psi
                if prefix_ok(z + 1) and extend(z + 1):
                    return True
            chosen[0] = None
            return False
        for y in b.universe:
            images[z] = y
            if prefix_ok(z + 1) and extend(z + 1):
                return True
        images[z] = None
        return False

    if extend(0):
        return list(images), chosen[0]
    return None


class BijectiveStrategy(object):
    """Duplicator's handle for the bijective all-in-one game, answering by search."""
    def __init__(self, a, b, k):
        self.a = a
        self.b = b
        self.k = k
        self._check = _IsoCheck(a, b)

    def respond(self, word, hidden=None):
        return bijective_response(self.a, self.b, self.k, word, hidden=hidden, iso_check=self._check)


def iter_bijective_words(k, size, max_len):
    """
    Every Spoiler move up to ``max_len``: for each length, first the words without a hidden index, then those with a
    hidden index ``1..m`` (the hidden element is recorded as ``None``).
    """
    for m in range(1, max_len + 1):
        for word in _words(k, size, m):
            yield word, None
        for hidden in range(1, m + 1):
            for before in _words(k, size, hidden - 1):
                for p in range(1, k + 1):
                    for after in _words(k, size, m - hidden):
                        yield before + ((p, None),) + after, hidden


def decide_bijective_all_in_one(a, b, k, max_len, budget=None):
    """
    Decide the bijective all-in-one k-pebble game for Spoiler words up to ``max_len``.

    Structures of different sizes are an immediate Spoiler win (there is no bijection); the certificate is then the
    empty word.

    :return: the verdict; a Spoiler certificate is the word, with ``hidden_index`` set if it hides an element
    :rtype: :class:`GameVerdict`
    """
    budget = _state_budget(budget)
    if a.universe_size != b.universe_size:
        return GameVerdict(SPOILER, GAME_BIJECTIVE, k, (), max_len=max_len)
    strategy = BijectiveStrategy(a, b, k)
    n_words = 0
    for word, hidden in iter_bijective_words(k, a.universe_size, max_len):
        n_words += 1
        if n_words > budget:
            raise exceptions.BudgetExceededException('Bijective game exceeded the state budget of {}'.format(budget))
        if strategy.respond(word, hidden) is None:
            logger.info('Spoiler wins the bijective all-in-one {}-pebble game with {} (hidden index {})'
                        .format(k, word, hidden))
            return GameVerdict(SPOILER, GAME_BIJECTIVE, k, word, max_len=max_len, hidden_index=hidden,
                               states=n_words)
    return GameVerdict(DUPLICATOR, GAME_BIJECTIVE, k, strategy, max_len=max_len, states=n_words)


# ---------------------------- #
# Certificate verification     #
# ---------------------------- #

def verify_certificate(a, b, verdict):
    """
    Re-check a verdict's certificate.

    Spoiler words must leave Duplicator without an answer; Duplicator strategies must answer every word up to the
    verdict's length bound (which is required for that check).

    :return: ``True`` if the certificate checks out
    :raises exceptions.CertificateException: for a Duplicator certificate without a length bound
    """
    if verdict.winner == SPOILER:
        if verdict.game == GAME_AIO:
            return len(replay_spoiler_word(a, b, verdict.k, verdict.certificate, verdict.equality)[-1]) == 0
        if verdict.game == GAME_DALMAU:
            return len(replay_dalmau_domains(a, b, verdict.certificate)) == 0
        if a.universe_size != b.universe_size:
            return True
        return bijective_response(a, b, verdict.k, verdict.certificate, verdict.hidden_index) is None

    if verdict.max_len is None:
        raise exceptions.CertificateException('Duplicator certificates can only be checked up to a length bound')
    if verdict.game == GAME_AIO:
        return find_losing_word(a, b, verdict.k, verdict.certificate, verdict.max_len, verdict.equality) is None
    if verdict.game == GAME_BIJECTIVE:
        for word, hidden in iter_bijective_words(verdict.k, a.universe_size, verdict.max_len):
            if verdict.certificate.respond(word, hidden) is None:
                return False
        return True
    raise exceptions.CertificateException('No replayable Duplicator certificate for game {}'.format(verdict.game))
