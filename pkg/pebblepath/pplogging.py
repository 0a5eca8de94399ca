import logging

_levels = {-1: logging.ERROR, 0: logging.WARNING, 1: logging.INFO, 2: logging.DEBUG}
_log_format = '%(levelname)s from %(name)s [%(asctime)s]: %(message)s'
_handler_name = 'pebblepath'


def add_logging_clargs(parser):
    """
    Add the verbosity and log file options shared by every command

    :param parser: the parser (or subparser) to add the options to
    :type parser: :class:`argparse.ArgumentParser`
    :return: None
    """
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='Increase detail of logging messages. Once gives verdicts and summaries, twice also '
                             'gives search progress.')
    parser.add_argument('-q', '--quiet', action='store_const', const=-1, dest='verbose',
                        help='Only log errors')
    parser.add_argument('-f', '--log-file', dest='to_file', default=False,
                        help='File to divert the logging messages to')


def setup_logging_from_clargs(args):
    verbosity = args.pop('verbose', 0)
    to_file = args.pop('to_file', False)
    setup_logging(verbosity=verbosity, to_file=to_file)


def setup_logging(verbosity=0, to_file=False):
    """
    Attach this package's handler to the root logger, replacing one attached by an earlier call.

    :param verbosity: -1 (errors) to 2 (debug); values outside that range are clipped
    :param to_file: path of a log file, or ``False`` to log to stderr
    :return: the handler
    """
    level = _levels[min(max(verbosity, -1), 2)]
    root = logging.getLogger()
    for old in [h for h in root.handlers if h.get_name() == _handler_name]:
        root.removeHandler(old)
        old.close()

    handler = logging.FileHandler(filename=to_file) if to_file else logging.StreamHandler()
    handler.set_name(_handler_name)
    handler.setFormatter(logging.Formatter(_log_format, datefmt='%Y-%m-%d %H:%M:%S'))
    root.addHandler(handler)
    root.setLevel(level)
    return handler
