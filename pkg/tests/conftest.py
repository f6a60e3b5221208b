import pytest

from supermac import macdonald


@pytest.fixture(autouse=True)
def _no_shared_cache(monkeypatch):
    # tests never read or write a cache left behind by the CLI
    monkeypatch.delenv("SUPERMAC_CACHE", raising=False)
    macdonald.set_cache_dir(None)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
