import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from tdpair.linalg import Matrix  # noqa: E402
from tdpair.scalars import GF, QQ  # noqa: E402
from tdpair.tdcore import verify_td_system  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def mat(field, rows):
    return Matrix.from_values(field, rows)


@pytest.fixture
def running_pair():
    """The 2x2 Leonard pair A = [[0,0],[1,1]], A* = [[0,1],[0,1]] over Q."""
    return mat(QQ, [[0, 0], [1, 1]]), mat(QQ, [[0, 1], [0, 1]])


@pytest.fixture
def running_system(running_pair):
    return verify_td_system(*running_pair)


@pytest.fixture(scope="session")
def small_pool():
    from tdpair.construct import instance_pool
    return instance_pool(GF(101), 3, "unit", 8, dmin=1)


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    number, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    if call.excinfo is not None:
        detail = f"{call.excinfo.typename}: {call.excinfo.value}".splitlines()[0][:200]
    _CRITERIA[number] = (title, call.excinfo is None, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed, detail = _CRITERIA[number]
        line = f"{'PASS' if passed else 'FAIL'} criterion {number:2d}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
