import pytest

from mipaug.instance import make_instance


def raymond(b=3, c=(-2, 0, 1), hi=None):
    return make_instance([[1, 1, 1]], [b], c, 2, box=((0,), (b if hi is None else hi,)))


def kw(b=4, c=(1, 1, 1)):
    return make_instance([[2, 1, 2]], [b], c, 2, box=((0,), (b // 2,)))


def lone(c=(1, 1, 1), hi=3):
    return make_instance([[1, -1, 2]], [3], c, 2, box=((0,), (hi,)))


def unpointed(c=(1, 1, 1, 1)):
    return make_instance([[1, -1, 2, 2]], [1], c, 2, box=((0, 0), (2, 2)))


@pytest.fixture
def R():
    return raymond()


@pytest.fixture
def KW():
    return kw()


@pytest.fixture
def L():
    return lone()


@pytest.fixture
def U():
    return unpointed()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k])
