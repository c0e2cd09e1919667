import numpy as np
import pytest

from circrank import kernels
from circrank.graph import new_graph


@pytest.fixture(scope="session", autouse=True)
def warm_kernel():
    # compile/load the jitted LP kernel once so timed tests measure the
    # algorithm, not the JIT
    kernels.solve_min(np.ones((1, 2)), np.ones(1), np.zeros(2))
    yield


def consecutive_graph(n, k):
    return new_graph(n, list(range(1, k + 1)))


def all_connection_sets(n):
    """Every negation-closed residue set on n vertices (incl. empty)."""
    reps = list(range(1, n // 2 + 1))
    out = []
    for mask in range(1 << len(reps)):
        residues = [r for i, j in enumerate(reps) if mask >> i & 1 for r in (j, n - j)]
        out.append(new_graph(n, residues))
    return out
