"""
Reading and writing the package's files: structures (JSON), path decompositions, covers, coalgebras, game
certificates and homomorphism vectors (text).

Elements are referred to by name in every file. Names may not contain ``:``, ``;`` or ``@`` since those delimit the
play encoding. All files are written with LF line endings.
"""
import json
from logging import getLogger
import os

from textui import uielements

from . import comonad, decomposition, exceptions, games, structures
from . import _reserved_identity

logger = getLogger('structio')

_forbidden_name_chars = ':;@'
_structure_fields = {'sigma', 'universe', 'relations'}


def should_write(path, overwrite=None):
    """
    Decide whether to write ``path``: always if it does not exist, otherwise according to ``overwrite``, asking the
    user if ``overwrite`` is ``None``.
    """
    if not os.path.exists(path):
        return True
    if overwrite is None:
        return uielements.user_input_yn('{} exists. Overwrite?'.format(path))
    if not overwrite:
        logger.info('Not writing {} - exists'.format(path))
    return overwrite


def write_text(path, text, overwrite):
    if not should_write(path, overwrite):
        return False
    with open(path, 'w', newline='\n') as wobj:
        wobj.write(text)
    logger.debug('Wrote {}'.format(path))
    return True


def _check_names(names):
    for nm in names:
        if not isinstance(nm, str) or not nm:
            raise exceptions.FormatException('Element names must be non-empty strings, got {!r}'.format(nm))
        bad = [c for c in _forbidden_name_chars if c in nm]
        if bad:
            raise exceptions.FormatException('Element name "{}" contains reserved character(s) {}'
                                             .format(nm, ''.join(bad)))


def _name_index(s):
    return {nm: i for i, nm in enumerate(s.names)}


def _lookup(index, name, what):
    try:
        return index[name]
    except KeyError:
        raise exceptions.FormatException('Unknown element "{}" in {}'.format(name, what))


# ------------- #
# Structures    #
# ------------- #

def structure_to_text(s):
    """
    The canonical JSON text of a structure: keys sorted, tuples sorted by element order, two-space indent, trailing
    newline.
    """
    _check_names(s.names)
    obj = {
        'sigma': s.signature.as_dict(),
        'universe': list(s.names),
        'relations': {name: [[s.names[x] for x in tup] for tup in s.tuples(name)] for name in s.signature.names},
    }
    return json.dumps(obj, sort_keys=True, indent=2) + '\n'


def structure_from_text(text, source='<text>'):
    """
    Parse a structure from JSON text.

    :raises exceptions.FormatException: on malformed JSON, unknown or missing fields, or unknown element names
    :raises exceptions.StructureException: if the parsed structure violates an invariant
    """
    try:
        obj = json.loads(text)
    except ValueError as err:
        raise exceptions.FormatException('{} is not valid JSON: {}'.format(source, err))
    if not isinstance(obj, dict):
        raise exceptions.FormatException('{} must hold a JSON object'.format(source))
    extra = set(obj) - _structure_fields
    missing = _structure_fields - set(obj)
    if extra:
        raise exceptions.FormatException('{} has unknown field(s): {}'.format(source, ', '.join(sorted(extra))))
    if missing:
        raise exceptions.FormatException('{} is missing field(s): {}'.format(source, ', '.join(sorted(missing))))

    names = obj['universe']
    _check_names(names)
    sigma = obj['sigma']
    if not isinstance(sigma, dict) or not all(isinstance(v, int) for v in sigma.values()):
        raise exceptions.FormatException('{}: "sigma" must map relation names to integer arities'.format(source))
    sig = structures.Signature(sigma, plus=_reserved_identity in sigma)
    index = {nm: i for i, nm in enumerate(names)}
    if len(index) != len(names):
        raise exceptions.StructureException('{}: duplicate element names'.format(source))
    relations = dict()
    for name, tuples in obj['relations'].items():
        relations[name] = [tuple(_lookup(index, nm, source) for nm in tup) for tup in tuples]
    return structures.Structure(sig, len(names), relations, names=names)


def read_structure(path):
    with open(path) as robj:
        return structure_from_text(robj.read(), source=path)


def write_structure(path, s, overwrite=None):
    return write_text(path, structure_to_text(s), overwrite)


def pr_to_text(pr):
    """
    A listing of a materialized ``PR_{k,n} A``: one ``element`` line per carrier element (position and play encoding
    with the base structure's names), then one line per related tuple, naming the relation and the positions.
    """
    lines = ['# PR_{{{},{}}} with {} elements'.format(pr.k, pr.n, len(pr))]
    for x, pl in enumerate(pr.carrier):
        lines.append('element {} {}'.format(x, comonad.encode_play(pl, pr.base.names)))
    for name in pr.as_structure.signature.names:
        for tup in pr.as_structure.tuples(name):
            lines.append('{} {}'.format(name, ' '.join(str(x) for x in tup)))
    return '\n'.join(lines) + '\n'


def write_pr(path, pr, overwrite=None):
    return write_text(path, pr_to_text(pr), overwrite)


# ------------------------------------- #
# Decompositions, covers, coalgebras    #
# ------------------------------------- #

def _content_lines(text):
    for line in text.splitlines():
        line = line.split('#', 1)[0].strip()
        if line:
            yield line


def pd_to_text(s, pd):
    """One ``bag`` line per bag, listing its element names in element order."""
    lines = ['bag ' + ' '.join(s.names[x] for x in sorted(bag)) for bag in pd.bags]
    return '\n'.join(['# path decomposition, width {}'.format(pd.width)] + lines) + '\n'


def pd_from_text(s, text):
    index = _name_index(s)
    bags = []
    for line in _content_lines(text):
        parts = line.split()
        if parts[0] != 'bag':
            raise exceptions.FormatException('Expected a "bag" line, got "{}"'.format(line))
        bags.append({_lookup(index, nm, 'bag') for nm in parts[1:]})
    return decomposition.PathDecomposition(bags)


def cover_to_text(s, cover):
    """A ``k`` line, then one ``chain`` line per chain of ``name:pebble`` entries in chain order."""
    lines = ['k {}'.format(cover.k)]
    for chain in cover.chains:
        lines.append('chain ' + ' '.join('{}:{}'.format(s.names[x], cover.pebbling[x]) for x in chain))
    return '\n'.join(lines) + '\n'


def cover_from_text(s, text):
    index = _name_index(s)
    k = None
    chains, pebbling = [], dict()
    for line in _content_lines(text):
        parts = line.split()
        if parts[0] == 'k' and len(parts) == 2:
            k = _int(parts[1], line)
        elif parts[0] == 'chain':
            chain = []
            for entry in parts[1:]:
                nm, _, peb = entry.rpartition(':')
                x = _lookup(index, nm, 'chain')
                chain.append(x)
                pebbling[x] = _int(peb, line)
            chains.append(chain)
        else:
            raise exceptions.FormatException('Unrecognized cover line "{}"'.format(line))
    if k is None:
        raise exceptions.FormatException('Cover text has no "k" line')
    return decomposition.LinearForestCover(chains, pebbling, k)


def _int(tok, line):
    try:
        return int(tok)
    except ValueError:
        raise exceptions.FormatException('Expected an integer in "{}", got "{}"'.format(line, tok))


def coalgebra_to_text(s, coalg):
    """A ``k`` line, then one ``name -> play`` line per element."""
    lines = ['k {}'.format(coalg.k)]
    for x in s.universe:
        lines.append('{} -> {}'.format(s.names[x], comonad.encode_play(coalg(x), s.names)))
    return '\n'.join(lines) + '\n'


def coalgebra_from_text(s, text):
    index = _name_index(s)
    k = None
    alpha = dict()
    for line in _content_lines(text):
        if line.startswith('k '):
            k = _int(line[2:].strip(), line)
            continue
        lhs, sep, rhs = line.partition('->')
        if not sep:
            raise exceptions.FormatException('Unrecognized coalgebra line "{}"'.format(line))
        alpha[_lookup(index, lhs.strip(), 'coalgebra')] = comonad.decode_play(rhs.strip(), index)
    if k is None:
        raise exceptions.FormatException('Coalgebra text has no "k" line')
    return decomposition.Coalgebra(k, alpha)


# --------------- #
# Certificates    #
# --------------- #

def certificate_to_text(a, verdict):
    """
    Header lines (``game``, ``winner``, ``k``, ``equality``, and ``max_len`` / ``hidden`` when set), then one line
    per Spoiler move: ``move PEBBLE ELEMENT`` (``?`` for a hidden element) or, for the pebble-relation game,
    ``domain NAMES...``. Duplicator certificates carry the header only and are checked by replay up to ``max_len``.
    """
    lines = ['game {}'.format(verdict.game),
             'winner {}'.format(verdict.winner),
             'k {}'.format(verdict.k),
             'equality {}'.format('true' if verdict.equality else 'false')]
    if verdict.max_len is not None:
        lines.append('max_len {}'.format(verdict.max_len))
    if verdict.hidden_index is not None:
        lines.append('hidden {}'.format(verdict.hidden_index))
    if verdict.winner == games.SPOILER:
        if verdict.game == games.GAME_DALMAU:
            for dom in verdict.certificate:
                lines.append(' '.join(['domain'] + [a.names[x] for x in dom]))
        else:
            for p, x in verdict.certificate:
                lines.append('move {} {}'.format(p, '?' if x is None else a.names[x]))
    return '\n'.join(lines) + '\n'


def certificate_from_text(a, b, text):
    """
    Parse a certificate back into a verdict. A Duplicator certificate gets the game's own strategy for ``a`` and
    ``b`` attached, ready for :func:`~pebblepath.games.verify_certificate`.
    """
    index = _name_index(a)
    header = dict()
    moves = []
    for line in _content_lines(text):
        parts = line.split()
        if parts[0] == 'move':
            if len(parts) != 3:
                raise exceptions.FormatException('Malformed move line "{}"'.format(line))
            x = None if parts[2] == '?' else _lookup(index, parts[2], 'move')
            moves.append((_int(parts[1], line), x))
        elif parts[0] == 'domain':
            moves.append(sorted(_lookup(index, nm, 'domain') for nm in parts[1:]))
        elif len(parts) == 2:
            header[parts[0]] = parts[1]
        else:
            raise exceptions.FormatException('Unrecognized certificate line "{}"'.format(line))
    for key in ('game', 'winner', 'k'):
        if key not in header:
            raise exceptions.FormatException('Certificate is missing its "{}" line'.format(key))

    game = header['game']
    winner = header['winner']
    k = _int(header['k'], 'k')
    equality = header.get('equality', 'true') == 'true'
    max_len = _int(header['max_len'], 'max_len') if 'max_len' in header else None
    hidden = _int(header['hidden'], 'hidden') if 'hidden' in header else None
    if game not in (games.GAME_AIO, games.GAME_DALMAU, games.GAME_BIJECTIVE):
        raise exceptions.FormatException('Unknown game "{}"'.format(game))
    if winner == games.SPOILER:
        cert = tuple(moves) if game != games.GAME_DALMAU else moves
    elif winner == games.DUPLICATOR:
        if game == games.GAME_AIO:
            cert = games.SurvivorStrategy(a, b, k, equality=equality)
        elif game == games.GAME_BIJECTIVE:
            cert = games.BijectiveStrategy(a, b, k)
        else:
            cert = None
    else:
        raise exceptions.FormatException('Unknown winner "{}"'.format(winner))
    return games.GameVerdict(winner, game, k, cert, max_len=max_len, equality=equality, hidden_index=hidden)


def write_certificate(path, a, verdict, overwrite=None):
    return write_text(path, certificate_to_text(a, verdict), overwrite)


def read_certificate(path, a, b):
    with open(path) as robj:
        return certificate_from_text(a, b, robj.read())


# ----------- #
# Vectors     #
# ----------- #

def vectors_to_text(va, vb):
    """Tab-separated structure id, count in the first target, count in the second, with a header line."""
    if va.ids != vb.ids:
        raise exceptions.FormatException('The two vectors are indexed differently')
    lines = ['id\tcount_a\tcount_b']
    lines.extend('{}\t{}\t{}'.format(cid, ca, cb) for (cid, ca), (_, cb) in zip(va, vb))
    return '\n'.join(lines) + '\n'


def write_vector(path, va, vb, overwrite=None):
    return write_text(path, vectors_to_text(va, vb), overwrite)
