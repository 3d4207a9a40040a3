import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def sl2z():
    from bergman_poincare.groups import load_preset

    return load_preset("sl2z")


@pytest.fixture
def g0(sl2z):
    from bergman_poincare.groups import element

    return element(sl2z, [[2, 1], [1, 1]])


@pytest.fixture
def i_point():
    from bergman_poincare.domains import DomainPoint

    return DomainPoint.halfplane(1j)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k].line())
