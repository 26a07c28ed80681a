import pytest
from hypothesis import settings

from bpk.network import make_network

# exact elimination is slow on the occasional wide draw
settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

TWO_SKIP_NET = dict(widths=[1, 1, 1, 1, 1], skips=[(0, 2), (2, 4)])


@pytest.fixture
def two_skip_net():
    return make_network(TWO_SKIP_NET["widths"], TWO_SKIP_NET["skips"])


@pytest.fixture
def overlap_net():
    # naive union of the two substructure bases is rank deficient here
    return make_network([1, 1, 1, 2], [(0, 2)])


def pytest_terminal_summary(terminalreporter):
    import sys
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, detail) in sorted(acc.RESULTS.items()):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
