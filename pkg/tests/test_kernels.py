"""The compiled kernels and the pure-Python twin must agree bit-for-bit."""

import numpy as np
import pytest

from blocklab import _kernels_py as py

try:
    from blocklab import _ckernels as cy
except ImportError:
    cy = None

pytestmark = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


@pytest.fixture(scope="module", params=[(3, 2), (4, 3), (5, 2)])
def tables(request):
    n, m = request.param
    t = py.dc_mult_table(n, m)
    inv = py.inverse_map(t)
    return n, m, t, inv


def test_dc_mult_table(tables):
    n, m, t, _ = tables
    assert np.array_equal(cy.dc_mult_table(n, m), t)


def test_inverse_map(tables):
    _, _, t, inv = tables
    assert np.array_equal(cy.inverse_map(t), inv)


def test_conjugacy_classes(tables):
    _, _, t, inv = tables
    cid_p, reps_p = py.conjugacy_classes(t, inv)
    cid_c, reps_c = cy.conjugacy_classes(t, inv)
    assert np.array_equal(cid_p, cid_c) and reps_p == reps_c


def test_centralizer(tables):
    _, _, t, _ = tables
    for e in (0, 1, len(t) // 2, len(t) - 1):
        assert py.centralizer_of(t, e) == cy.centralizer_of(t, e)


def test_closure(tables):
    _, _, t, _ = tables
    for gens in ([1], [2, 3], [1, len(t) - 1], []):
        assert py.closure(t, gens) == cy.closure(t, gens)


def test_orbit_partition(tables):
    _, _, t, inv = tables
    size = len(t)
    flip = np.arange(size, dtype=np.int32)
    flip[1], flip[2] = 2, 1
    partial = np.full(size, -1, dtype=np.int32)
    partial[: size // 2] = np.arange(size // 2, dtype=np.int32)[::-1]
    for maps in ([], [flip], [flip, partial]):
        oid_p, reps_p = py.orbit_partition(t, inv, maps)
        oid_c, reps_c = cy.orbit_partition(t, inv, maps)
        assert np.array_equal(oid_p, oid_c) and reps_p == reps_c


def test_structure_constants(tables):
    _, _, t, inv = tables
    cid, reps = py.conjugacy_classes(t, inv)
    assert np.array_equal(
        py.structure_constants(t, inv, cid, reps), cy.structure_constants(t, inv, cid, reps)
    )


def test_commutators(tables):
    _, _, t, inv = tables
    assert py.commutators(t, inv) == cy.commutators(t, inv)


def test_normalizer(tables):
    _, _, t, inv = tables
    sub = py.closure(t, [2])
    assert py.normalizer_of(t, inv, sub) == cy.normalizer_of(t, inv, sub)
    sub2 = py.closure(t, [1, len(t) - 1])
    assert py.normalizer_of(t, inv, sub2) == cy.normalizer_of(t, inv, sub2)
