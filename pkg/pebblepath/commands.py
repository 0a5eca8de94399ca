"""
Command line drivers. Each ``parse_*_args`` function fills in a subparser and sets its ``driver_fxn``; each driver
returns the exit status: 0 for a positive outcome (Duplicator wins, valid, true, equivalent), 1 otherwise.
"""
from logging import getLogger
import sys

from . import comonad, config, decomposition, exceptions, formula_io, games, logic, lovasz, structio

logger = getLogger('commands')


def _add_common_args(parser, budget_name=None):
    parser.add_argument('-c', '--config', dest='cfg_file', default=None,
                        help='Configuration file overriding the default budgets and probe settings.')
    grp = parser.add_mutually_exclusive_group()
    grp.add_argument('-o', '--overwrite', action='store_const', const=True, default=None,
                     help='Overwrite existing output files without asking.')
    grp.add_argument('-k', '--keep', action='store_const', const=False, dest='overwrite',
                     help='Never overwrite existing output files.')
    if budget_name is not None:
        parser.add_argument('--budget', type=int, default=None,
                            help='Override the configured {} for this run.'.format(budget_name))


def _report(lines, out=None):
    out = sys.stdout if out is None else out
    for line in lines:
        out.write(line + '\n')


# ---------- #
# build-pr   #
# ---------- #

def parse_build_pr_args(parser):
    parser.description = 'Materialize PR_{k,n} of a structure, optionally checking the comonad laws on it.'
    parser.add_argument('in_file', help='Structure file (JSON).')
    parser.add_argument('-K', '--pebbles', dest='k', type=int, required=True, help='Number of pebbles.')
    parser.add_argument('-n', '--max-length', dest='n', type=int, required=True, help='Maximum play length.')
    parser.add_argument('--out', dest='out_file', default=None, help='Write the carrier and relations here.')
    parser.add_argument('--check-laws', action='store_true', help='Check the comonad laws and print the report.')
    parser.add_argument('--seed', type=int, default=None, help='Seed for the random probe maps.')
    _add_common_args(parser, 'carrier_budget')
    parser.set_defaults(driver_fxn=build_pr_driver)


def build_pr_driver(in_file, k, n, out_file=None, check_laws=False, seed=None, cfg_file=None, overwrite=None,
                    budget=None):
    cfg = config.load_config_file(cfg_file)
    budget = config.get_limit('carrier_budget', cfg, budget)
    a = structio.read_structure(in_file)
    pr = comonad.build_pr(a, k, n, budget=budget)
    _report(['PR_{{{},{}}} has {} elements'.format(k, n, len(pr))])
    if out_file is not None:
        structio.write_pr(out_file, pr, overwrite=overwrite)
    if check_laws:
        dflt_seed, n_random = config.get_probe_settings(cfg)
        report = comonad.check_comonad_laws(a, k, n, seed=dflt_seed if seed is None else seed, n_random=n_random,
                                            budget=budget)
        _report(report.summary_lines())
        return 0 if report.passed else 1
    return 0


# ----------- #
# pathwidth   #
# ----------- #

def parse_pathwidth_args(parser):
    parser.description = 'Compute the exact pathwidth and coalgebra number of a structure.'
    parser.add_argument('in_file', help='Structure file (JSON).')
    parser.add_argument('--pd-out', default=None, help='Write an optimal path decomposition here.')
    parser.add_argument('--cover-out', default=None, help='Write the derived linear forest cover here.')
    parser.add_argument('--coalgebra-out', default=None, help='Write the derived coalgebra here.')
    _add_common_args(parser, 'state_budget')
    parser.set_defaults(driver_fxn=pathwidth_driver)


def pathwidth_driver(in_file, pd_out=None, cover_out=None, coalgebra_out=None, cfg_file=None, overwrite=None,
                     budget=None):
    cfg = config.load_config_file(cfg_file)
    budget = config.get_limit('state_budget', cfg, budget)
    a = structio.read_structure(in_file)
    width, pd = decomposition.pathwidth_exact(a, budget=budget, return_pd=True)
    number = decomposition.coalgebra_number(a, budget=budget)
    _report(['pathwidth {}'.format(width), 'coalgebra number {}'.format(number)])
    if number != max(width, 0) + 1:
        logger.error('Coalgebra number {} does not equal pathwidth + 1 = {}'.format(number, width + 1))
        return 1

    k = number
    cover = decomposition.pd_to_cover(a, pd, k)
    if pd_out is not None:
        structio.write_text(pd_out, structio.pd_to_text(a, pd), overwrite)
    if cover_out is not None:
        structio.write_text(cover_out, structio.cover_to_text(a, cover), overwrite)
    if coalgebra_out is not None:
        coalg = decomposition.cover_to_coalgebra(a, cover)
        structio.write_text(coalgebra_out, structio.coalgebra_to_text(a, coalg), overwrite)
    return 0


# -------- #
# decide   #
# -------- #

def parse_decide_args(parser):
    parser.description = 'Decide a pebble game between two structures and optionally save the certificate.'
    parser.add_argument('a_file', help='Spoiler\'s structure (JSON).')
    parser.add_argument('b_file', help='Duplicator\'s structure (JSON).')
    parser.add_argument('-K', '--pebbles', dest='k', type=int, required=True, help='Number of pebbles.')
    parser.add_argument('-g', '--game', default=games.GAME_AIO,
                        choices=(games.GAME_AIO, games.GAME_DALMAU, games.GAME_BIJECTIVE),
                        help='Which game to play. Default is %(default)s.')
    parser.add_argument('-m', '--max-len', type=int, default=None,
                        help='Only consider Spoiler words up to this length (required for bij-aio).')
    parser.add_argument('--no-equality', dest='equality', action='store_false',
                        help='Read the pebbled pairs as a relation rather than a partial function (aio only).')
    parser.add_argument('--cert-out', default=None, help='Write the certificate here.')
    _add_common_args(parser, 'state_budget')
    parser.set_defaults(driver_fxn=decide_driver)


def decide_driver(a_file, b_file, k, game=games.GAME_AIO, max_len=None, equality=True, cert_out=None, cfg_file=None,
                  overwrite=None, budget=None):
    cfg = config.load_config_file(cfg_file)
    budget = config.get_limit('state_budget', cfg, budget)
    a = structio.read_structure(a_file)
    b = structio.read_structure(b_file)
    if game == games.GAME_AIO:
        verdict = games.decide_all_in_one(a, b, k, equality=equality, max_len=max_len, budget=budget)
    elif game == games.GAME_DALMAU:
        verdict = games.decide_dalmau(a, b, k, budget=budget)
    else:
        if max_len is None:
            raise exceptions.GameException('The bijective game needs --max-len')
        verdict = games.decide_bijective_all_in_one(a, b, k, max_len, budget=budget)

    lines = ['{} wins the {} game with {} pebbles'.format(verdict.winner, verdict.game, k)]
    if not verdict.duplicator_wins and verdict.game != games.GAME_DALMAU:
        lines.append('word: {}'.format(' '.join('{}:{}'.format(p, '?' if x is None else a.names[x])
                                                for p, x in verdict.certificate)))
    _report(lines)
    if cert_out is not None:
        structio.write_certificate(cert_out, a, verdict, overwrite=overwrite)
    return 0 if verdict.duplicator_wins else 1


# ------------- #
# verify-cert   #
# ------------- #

def parse_verify_cert_args(parser):
    parser.description = 'Re-check a certificate written by "decide".'
    parser.add_argument('a_file', help='Spoiler\'s structure (JSON).')
    parser.add_argument('b_file', help='Duplicator\'s structure (JSON).')
    parser.add_argument('cert_file', help='The certificate.')
    parser.set_defaults(driver_fxn=verify_cert_driver)


def verify_cert_driver(a_file, b_file, cert_file):
    a = structio.read_structure(a_file)
    b = structio.read_structure(b_file)
    verdict = structio.read_certificate(cert_file, a, b)
    ok = games.verify_certificate(a, b, verdict)
    _report(['certificate {} ({} wins the {} game)'.format('valid' if ok else 'INVALID', verdict.winner,
                                                           verdict.game)])
    return 0 if ok else 1


# ------------- #
# model-check   #
# ------------- #

def parse_model_check_args(parser):
    parser.description = 'Evaluate a formula on a structure.'
    parser.add_argument('in_file', help='Structure file (JSON).')
    parser.add_argument('formula_file', help='Formula file (s-expression).')
    parser.add_argument('-a', '--assign', action='append', default=[],
                        help='Assign a variable, e.g. "x1=a" with "a" an element name. May be repeated.')
    parser.add_argument('-K', '--pebbles', dest='k', type=int, default=None,
                        help='If given, also check the formula uses at most this many variables.')
    parser.set_defaults(driver_fxn=model_check_driver)


def _parse_assignment(a, items):
    index = {nm: i for i, nm in enumerate(a.names)}
    asg = dict()
    for item in items:
        var, sep, name = item.partition('=')
        if not sep or name not in index:
            raise exceptions.FormatException('Bad assignment "{}"'.format(item))
        asg[var.strip()] = index[name]
    return asg


def model_check_driver(in_file, formula_file, assign=(), k=None):
    a = structio.read_structure(in_file)
    f = formula_io.read_formula_file(formula_file)
    asg = _parse_assignment(a, assign)
    translated = any(isinstance(g, (logic.AndPair, logic.CountExact)) for g in _walk(f))
    if not translated:
        check = logic.validate_restricted(f, k=k)
        if not check:
            _report(['formula is not restricted: {} at {}'.format(check.message, check.path)])
            return 1
        result = logic.model_check(a, asg, f)
    else:
        result = logic.model_check_translated(a, asg, f)
    _report(['true' if result else 'false'])
    return 0 if result else 1


def _walk(f):
    yield f
    for g in logic.children(f):
        for h in _walk(g):
            yield h


# -------- #
# lovasz   #
# -------- #

def parse_lovasz_args(parser):
    parser.description = 'Compare two structures by homomorphism counts from small structures of bounded pathwidth.'
    parser.add_argument('a_file', help='First structure (JSON).')
    parser.add_argument('b_file', help='Second structure (JSON).')
    parser.add_argument('-K', '--pebbles', dest='k', type=int, required=True,
                        help='Count from structures of pathwidth below this.')
    parser.add_argument('-s', '--max-size', type=int, required=True, help='Largest structure to count from.')
    parser.add_argument('-e', '--emit-vector', default=None, help='Write both homomorphism vectors here (TSV).')
    parser.add_argument('-n', '--n-procs', type=int, default=1,
                        help='Number of processes to count with. Default is %(default)d.')
    _add_common_args(parser, 'enum_budget')
    parser.set_defaults(driver_fxn=lovasz_driver)


def lovasz_driver(a_file, b_file, k, max_size, emit_vector=None, n_procs=1, cfg_file=None, overwrite=None,
                  budget=None):
    cfg = config.load_config_file(cfg_file)
    budget = config.get_limit('enum_budget', cfg, budget)
    a = structio.read_structure(a_file)
    b = structio.read_structure(b_file)
    verdict = lovasz.lovasz_equiv(a, b, k, max_size, n_procs=n_procs, budget=budget)
    _report([verdict.describe()])
    if emit_vector is not None:
        structio.write_vector(emit_vector, *verdict.vectors, overwrite=overwrite)
    return 0 if verdict.equivalent else 1
