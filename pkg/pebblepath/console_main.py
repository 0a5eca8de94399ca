from argparse import ArgumentParser
import sys

from . import commands, pplogging


def parse_args(argv=None):
    p = ArgumentParser(description='Pebble-relation comonad, pebble games and bounded-pathwidth equivalences')
    pplogging.add_logging_clargs(p)

    subp = p.add_subparsers()

    prp = subp.add_parser('build-pr', help='Materialize PR_{k,n} of a structure and check the comonad laws')
    commands.parse_build_pr_args(prp)

    pwp = subp.add_parser('pathwidth', help='Exact pathwidth, coalgebra number and decompositions')
    commands.parse_pathwidth_args(pwp)

    decp = subp.add_parser('decide', help='Decide a pebble game between two structures')
    commands.parse_decide_args(decp)

    verp = subp.add_parser('verify-cert', help='Re-check a game certificate')
    commands.parse_verify_cert_args(verp)

    mcp = subp.add_parser('model-check', help='Evaluate a formula on a structure')
    commands.parse_model_check_args(mcp)

    lovp = subp.add_parser('lovasz', help='Compare homomorphism counts from bounded-pathwidth structures')
    commands.parse_lovasz_args(lovp)

    args = vars(p.parse_args(argv))
    if 'driver_fxn' not in args:
        p.error('a command is required')
    return args


def main(argv=None):
    args = parse_args(argv)
    pplogging.setup_logging_from_clargs(args)
    driver = args.pop('driver_fxn')
    return driver(**args)


if __name__ == '__main__':
    status = main()
    if not isinstance(status, int):
        status = 0
    sys.exit(status)
