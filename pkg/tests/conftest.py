import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def s3_instance():
    from crossext.instances import s3_pair
    return s3_pair()


@pytest.fixture(scope="session")
def a5_instance():
    from crossext.instances import a5_pair
    return a5_pair()


@pytest.fixture(scope="session")
def kac_a5(a5_instance):
    from crossext.hopf import kac_bicrossed
    return kac_bicrossed(a5_instance[0])


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
