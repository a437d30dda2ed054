import pytest
from hypothesis import strategies as st

from affine_fpf.affine_group import from_code


@st.composite
def affine_perms(draw, n=None, max_entry=4):
    """Random affine permutations via their codes (each code needs a zero)."""
    if n is None:
        n = draw(st.integers(2, 5))
    c = draw(st.lists(st.integers(0, max_entry), min_size=n, max_size=n))
    c[draw(st.integers(0, n - 1))] = 0
    return from_code(c)


@pytest.fixture
def tmp_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("AFFINE_FPF_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion with a time limit in seconds")
    config._criteria = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    number, title, limit = mark.args
    ok = call.excinfo is None
    item.config._criteria[number] = (title, ok, call.duration, limit)


def pytest_terminal_summary(terminalreporter, config):
    crit = getattr(config, "_criteria", {})
    if not crit:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(crit):
        title, ok, dur, limit = crit[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {dur:7.2f}s (limit {limit}s)  {title}")
