import pytest

from torusgit.corpus import CFG_A, CFG_B, CFG_C, CFG_D, random_corpus

CORPUS_SIZE = 20


@pytest.fixture
def cfg_a():
    return CFG_A


@pytest.fixture
def cfg_b():
    return CFG_B


@pytest.fixture
def cfg_c():
    return CFG_C


@pytest.fixture
def cfg_d():
    return CFG_D


@pytest.fixture(scope="session")
def corpus():
    """Projective reference configurations plus the seeded random ones."""
    return [CFG_A, CFG_B, CFG_C] + random_corpus(CORPUS_SIZE, seed=0)


@pytest.fixture(scope="session")
def small_corpus():
    """Random configurations with n <= 5 and d <= 2."""
    return random_corpus(20, seed=7, max_n=5, max_d=2)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok, seconds = results[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  ({seconds:.2f} s)")
