import numpy as np
import pytest

from bigfusion.bifusion import BiGFusionPair
from bigfusion.gfusion import GFusionSystem
from bigfusion.harness import draw_spec, generate
from bigfusion.subspace import Subspace


def cgauss(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def unit(rng, n):
    v = cgauss(rng, n)
    return v / np.linalg.norm(v)


def diagonal_system(weights):
    """Items (span e_i, I, w_i); frame operator diag(w_i^2)."""
    n = len(weights)
    e = np.eye(n)
    spaces = [Subspace(e[:, [i]]) for i in range(n)]
    return GFusionSystem.from_lists(spaces, [e] * n, list(weights))


def random_pair(seed, mode="hermitian-compatible", **kw):
    return generate(draw_spec(seed, mode, **kw))


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def parseval_pair():
    return BiGFusionPair.coincident(diagonal_system([1.0, 1.0]))


@pytest.fixture
def diag41_pair():
    return BiGFusionPair.coincident(diagonal_system([2.0, 1.0]))


# filled by test_acceptance.py, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
