import os

_test_dir = os.path.dirname(__file__)
_test_data_dir = os.path.join(_test_dir, 'test_data')
