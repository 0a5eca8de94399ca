import os

_pkg_dir = os.path.dirname(__file__)
_etc_dir = os.path.join(_pkg_dir, 'etc')
_config_spec_file = os.path.join(_etc_dir, 'pebblepath_val.cfg')

_reserved_identity = 'I'
