from logging import getLogger

from configobj import ConfigObj, flatten_errors
from validate import Validator

from . import exceptions, _config_spec_file

logger = getLogger('config')
_default_cfg = None


def load_config_file(cfg_file=None):
    """
    Load a run-limits configuration file, filling in defaults from the configspec

    :param cfg_file: path to the configuration file. If ``None``, only the defaults from
     :file:`etc/pebblepath_val.cfg` are used.
    :type cfg_file: str or None

    :return: the validated configuration
    :rtype: :class:`configobj.ConfigObj`
    :raises exceptions.ConfigException: if any option fails validation.
    """
    cfg = ConfigObj(cfg_file if cfg_file is not None else [], configspec=_config_spec_file)
    validator = Validator()
    result = cfg.validate(validator, preserve_errors=True)
    if result is not True:
        error_msgs = []
        for sects, key, msg in flatten_errors(cfg, result):
            error_msgs.append('{}/{}: {}'.format('/'.join(sects), key, msg))
        final_error_msg = 'There are problems with one or more options in {}:\n*  {}'.format(
            cfg_file, '\n*  '.join(error_msgs)
        )
        raise exceptions.ConfigException(final_error_msg)
    logger.debug('Loaded configuration from {}'.format(cfg_file or 'defaults'))
    return cfg


def default_config():
    """Return the configuration built from the configspec defaults alone (loaded once)."""
    global _default_cfg
    if _default_cfg is None:
        _default_cfg = load_config_file()
    return _default_cfg


def get_limit(name, cfg=None, override=None):
    """
    Get one of the ``[limits]`` budgets, preferring an explicit override.

    :param name: the key in the ``[limits]`` section, e.g. "carrier_budget"
    :param cfg: an already loaded configuration; defaults are used if ``None``
    :param override: a value that takes precedence if not ``None``
    :return: the budget
    :rtype: int
    """
    if override is not None:
        return int(override)
    if cfg is None:
        cfg = default_config()
    return cfg['limits'][name]


def get_probe_settings(cfg=None):
    if cfg is None:
        cfg = default_config()
    return cfg['probes']['seed'], cfg['probes']['n_random']
