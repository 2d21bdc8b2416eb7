import numpy as np
import pytest

from cotkahler import lifts as lf
from cotkahler.profiles import flat_identity_profile, make_case_profile
from cotkahler.spaceform import SpaceForm


def random_point(M, rng, t_max=3.0, t_min=0.0):
    q = rng.uniform(-1, 1, M.n)
    q *= 0.5 * M.chart_radius * rng.uniform() / np.linalg.norm(q)
    u = rng.normal(size=M.n)
    u /= np.linalg.norm(u)
    t = rng.uniform(t_min, t_max)
    p = np.sqrt(2 * t) / M.conformal_factor(q) * u
    return lf.cotangent_point(M, q, p)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def case1():
    return make_case_profile("case1", c=1.0, B=1.0, k=2.0)


@pytest.fixture(scope="session")
def case2():
    return make_case_profile("case2", c=1.0, B=1.0, k=2.0)


@pytest.fixture(scope="session")
def case3():
    return make_case_profile("case3", c=1.0, k=1.0)


@pytest.fixture(scope="session")
def flat():
    return flat_identity_profile()


@pytest.fixture(scope="session")
def M3():
    return SpaceForm(3, 1.0)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
