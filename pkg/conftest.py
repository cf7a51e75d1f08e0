import logging

import pytest

from colfin import cache
from colfin.field import QQ, PrimeField

collect_ignore = ["setup.py"]

_FIELDS = {'q': QQ, 'fp:2': PrimeField(2), 'fp:5': PrimeField(5)}


@pytest.fixture(scope='session')
def clean_column_cache():
    """
    Start and end the test session with an empty column memo.

    This fixture is activated in ../pytest.ini.
    """
    cache.clear_cache()
    yield
    cache.clear_cache()


def pytest_addoption(parser):
    parser.addoption("--logging", "-L", action='store_true',
                     help="Enables the logging output.")


def pytest_generate_tests(metafunc):
    if 'each_field' in metafunc.fixturenames:
        metafunc.parametrize('each_field', list(_FIELDS.values()), ids=list(_FIELDS))


def pytest_configure(config):
    if config.option.logging:
        root = logging.getLogger()
        root.setLevel(logging.DEBUG)
