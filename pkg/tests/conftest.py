import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "wgwa", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("wgwa")

_CRITERIA: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _CRITERIA.setdefault(n, []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        verdict = "PASS" if all(_CRITERIA[n]) else "FAIL"
        terminalreporter.write_line(f"CRITERION {n}: {verdict}")


@pytest.fixture(scope="session")
def corpus():
    from wgwa.corpus import full_corpus

    return list(full_corpus())


@pytest.fixture(scope="session")
def corpus_matrices(corpus):
    from wgwa.oracle import to_matrices

    return [(u, mod, to_matrices(mod)) for u, mod in corpus]
