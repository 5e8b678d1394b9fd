import os

import pytest
from hypothesis import HealthCheck, settings

from cornerrank.corpus import builtin_corpus
from cornerrank.rings import MatrixRing, ZMod

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CORPUS = builtin_corpus()


@pytest.fixture(params=CORPUS, ids=[e.name for e in CORPUS])
def corpus_ring(request):
    return request.param.ring()


@pytest.fixture
def m2f2():
    return MatrixRing(ZMod(2), 2)


@pytest.fixture
def units(m2f2):
    """e11, e12, e21, e22 in M_2(Z/2)."""
    M = m2f2
    return M.unit(0, 0), M.unit(0, 1), M.unit(1, 0), M.unit(1, 1)


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
