import numpy as np
import pytest

from vrsd.algorithms import CandidateSet, Query

# 3-candidate fixture shared by several modules: the image of (T={3,5,2}, t=8, k=2)
FIXTURE_VECTORS = [[3.0, 1.0], [5.0, 1.0], [2.0, 1.0]]
FIXTURE_QUERY = [8.0, 2.0]


def random_instance(rng: np.random.Generator, n: int, d: int):
    """Gaussian candidates and query; no normalisation."""
    cands = CandidateSet.from_vectors(rng.standard_normal((n, d)))
    return cands, Query("q", rng.standard_normal(d))


def random_orthogonal(rng: np.random.Generator, d: int, reflections: int = 4) -> np.ndarray:
    """Product of random Householder reflections."""
    Q = np.eye(d)
    for _ in range(reflections):
        v = rng.standard_normal(d)
        v /= np.linalg.norm(v)
        Q = (np.eye(d) - 2.0 * np.outer(v, v)) @ Q
    return Q


@pytest.fixture
def fixture_instance():
    return CandidateSet.from_vectors(FIXTURE_VECTORS, ["a", "b", "c"]), Query("q", FIXTURE_QUERY)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
