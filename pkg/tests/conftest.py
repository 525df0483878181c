import numpy as np
import pytest

import reidemeister as rm

# criterion number -> verdict line, filled by tests/test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(ACCEPTANCE_RESULTS[n])


@pytest.fixture(scope="session")
def sp2_5():
    return rm.generate_group(rm.standard_generators(1, 5))


@pytest.fixture(scope="session")
def sp2_7():
    return rm.generate_group(rm.standard_generators(1, 7))


@pytest.fixture(scope="session")
def sp2_13():
    return rm.generate_group(rm.standard_generators(1, 13))


@pytest.fixture(scope="session")
def dihedral8():
    # order-8 dihedral matrix group over Z_3: quarter turn + reflection
    r = rm.ModMatrix([[0, 1], [2, 0]], 3)
    s = rm.ModMatrix([[1, 0], [0, 2]], 3)
    g = rm.generate_group([r, s])
    assert g.order == 8
    return g


@pytest.fixture(scope="session")
def dihedral8_chi(dihedral8):
    # the determinant character: -1 exactly on the reflections
    vals = np.array([1 if rm.det(dihedral8.element(i)) == 1 else -1
                     for i in range(dihedral8.order)])
    return rm.Character(dihedral8, vals)


@pytest.fixture(scope="session")
def gl2_z2():
    # all invertible 2x2 matrices over Z_2 (order 6, nonabelian)
    a = rm.ModMatrix([[0, 1], [1, 0]], 2)
    b = rm.ModMatrix([[1, 1], [0, 1]], 2)
    g = rm.generate_group([a, b])
    assert g.order == 6
    return g


@pytest.fixture(scope="session")
def quaternion8():
    # Q8 inside SL(2, Z_3)
    i = rm.ModMatrix([[0, 2], [1, 0]], 3)
    j = rm.ModMatrix([[1, 1], [1, 2]], 3)
    g = rm.generate_group([i, j])
    assert g.order == 8
    return g


def brute_force_twisted_partition(g, phi):
    """Independent O(|G|^2) oracle: union-find over x ~ a x phi(a)^-1 with
    every group element as a move, no generator BFS involved."""
    n = g.order
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    m = g.m
    inv_images = [g.elements[g.inverse_id(phi.apply_id(a))] for a in range(n)]
    for x in range(n):
        mat = g.elements[x]
        for a in range(n):
            y = (g.elements[a] @ mat @ inv_images[a]) % m
            union(x, g.id_of(rm.ModMatrix(y, g.modulus)))
    roots = {}
    labels = []
    for x in range(n):
        r = find(x)
        if r not in roots:
            roots[r] = len(roots)
        labels.append(roots[r])
    return labels, len(roots)
