import functools

import pytest
from hypothesis import HealthCheck, settings

from contactkit.catalog import (make_darboux_sasakian, make_kappa_mu_group, make_perturbed_r3,
                                make_perturbed_symplectic, make_s3, make_standard_sasakian,
                                make_standard_symplectic)

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def entry(name, *args):
    makers = {"r2n1": make_standard_sasakian, "s3": make_s3, "kappa-mu": make_kappa_mu_group,
              "darboux": make_darboux_sasakian, "perturbed-r3": make_perturbed_r3,
              "r2n": make_standard_symplectic, "r2-perturbed": make_perturbed_symplectic}
    return makers[name](*args)


@pytest.fixture(scope="session")
def r3():
    return entry("r2n1", 1)


@pytest.fixture(scope="session")
def s3():
    return entry("s3")


@pytest.fixture(scope="session")
def kappa_mu():
    return entry("kappa-mu", 3)


@pytest.fixture(scope="session")
def perturbed():
    return entry("perturbed-r3", "x")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
