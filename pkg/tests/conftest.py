import os

os.environ.setdefault('APP_MODE', 'test')
os.environ.setdefault('HECKECAT_LOG_LEVEL', 'WARNING')

import pytest  # noqa: E402

from heckecat.config import EngineConfig  # noqa: E402
from heckecat.sbim import SoergelCategory  # noqa: E402
from heckecat.weyl import root_datum  # noqa: E402


@pytest.fixture(scope='session')
def a1_p3():
    return root_datum('A1', 3)


@pytest.fixture(scope='session')
def a1_p5():
    return root_datum('A1', 5)


@pytest.fixture(scope='session')
def a2_p5():
    return root_datum('A2', 5)


@pytest.fixture(scope='session')
def a2ad_p3():
    return root_datum('A2ad', 3)


@pytest.fixture(scope='session')
def a1_category(a1_p3):
    return SoergelCategory(a1_p3, EngineConfig(p=3, samples=1, max_len=4))


@pytest.fixture(scope='session')
def a1_p5_category(a1_p5):
    return SoergelCategory(a1_p5, EngineConfig(p=5, samples=1, max_len=3))


@pytest.fixture
def config_file(tmp_path):
    def make(text):
        path = tmp_path / 'run.conf'
        path.write_text(text)
        return str(path)
    return make


@pytest.fixture(scope='session')
def a2_category(a2_p5):
    return SoergelCategory(a2_p5, EngineConfig(p=5, samples=1, max_len=3))
