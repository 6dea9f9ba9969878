import random

import numpy as np
import pytest

from blocklab import pcgroup as pc
from blocklab.pcgroup import Element, GroupParams

GRID = [(n, m) for n in (3, 4, 5, 6) for m in (2, 3, 4)]


@pytest.fixture(scope="module")
def d32():
    return pc.make_group(3, 2)


@pytest.fixture(scope="module")
def d42():
    return pc.make_group(4, 2)


def test_params_reject_out_of_range():
    with pytest.raises(ValueError, match="n must be >= 3"):
        GroupParams(2, 2)
    with pytest.raises(ValueError, match="m must be >= 2"):
        GroupParams(3, 1)


@pytest.mark.parametrize("n,m", GRID)
def test_family_structure_constants(n, m):
    g = pc.make_group(n, m)
    assert g.order == 2 ** (n + m - 1)
    assert len(pc.center(g).elems) == 2 ** m
    assert g.order // len(pc.derived_subgroup(g).elems) == 2 ** (m + 1)
    x, y, z = g.generators
    assert g.element_order(x) == 2 ** (n - 1)
    assert g.element_order(y) == 2
    assert g.element_order(z) == 2 ** m


def test_defining_relations(d32):
    g = d32
    x, y, z = g.generators
    assert g.elements[g.mult(g.mult(y, x), y)] == Element(1, 0, 2)  # y x y = x^{-1} = x z^2
    assert g.power(x, 2) == g.power(z, 2)  # x^{2^{n-2}} = z^{2^{m-1}}
    assert g.mult(x, z) == g.mult(z, x)
    assert g.mult(y, z) == g.mult(z, y)


def test_center_is_generated_by_z(d42):
    z = d42.generators[2]
    zgen = pc.generated_subgroup(d42, [z])
    assert pc.center(d42).elems == zgen.elems


def test_centralizer_of_x(d42):
    c = pc.centralizer(d42, Element(1, 0, 0))
    x, _, z = d42.generators
    assert c.elems == pc.generated_subgroup(d42, [x, z]).elems
    assert c.order == 2 ** (4 + 2 - 2)


def test_centralizer_rejects_foreign_element(d32):
    with pytest.raises(ValueError, match="does not belong"):
        pc.centralizer(d32, Element(7, 0, 0))


def _brute_force_classes(g):
    """Independent conjugation-orbit oracle: no kernel code."""
    seen = set()
    classes = []
    for a in range(g.order):
        if a in seen:
            continue
        orbit = {g.conj(d, a) for d in range(g.order)}
        seen |= orbit
        classes.append(frozenset(orbit))
    return set(classes)


@pytest.mark.parametrize("n,m,count", [(3, 2, 10), (4, 2, 14)])
def test_class_counts_against_brute_force(n, m, count):
    g = pc.make_group(n, m)
    got = pc.conjugacy_classes(g)
    assert len(got) == count
    assert {frozenset(mem) for _, mem in got} == _brute_force_classes(g)
    for rep, mem in got:
        assert rep == min(mem)


@pytest.mark.parametrize("n,m", GRID)
def test_class_equation(n, m):
    g = pc.make_group(n, m)
    classes = pc.conjugacy_classes(g)
    assert sum(len(mem) for _, mem in classes) == g.order
    assert len(classes) == 2 ** (m - 1) * (2 ** (n - 2) + 3)


def test_abelian_group_has_singleton_classes():
    elems = list(range(6))
    c6 = pc.GroupTable.from_mult(elems, lambda a, b: (a + b) % 6, tag={"family": "C6"})
    assert all(len(mem) == 1 for _, mem in pc.conjugacy_classes(c6))


def test_normal_form_confluence():
    # product of a random generator word is independent of evaluation order
    rng = random.Random(99)
    g = pc.make_group(4, 3)
    gens = g.generators + [g.inverse(a) for a in g.generators]

    def eval_random_split(word):
        if len(word) == 1:
            return word[0]
        cut = rng.randrange(1, len(word))
        return g.mult(eval_random_split(word[:cut]), eval_random_split(word[cut:]))

    for _ in range(10_000):
        word = [rng.choice(gens) for _ in range(rng.randint(1, 10))]
        left = 0
        for a in word:
            left = g.mult(left, a)
        assert eval_random_split(word) == left


def test_oversize_class_guard(monkeypatch, d32):
    monkeypatch.setattr(pc, "MAX_CLASS_ORDER", 8)
    with pytest.raises(pc.OversizeGroupError):
        pc.conjugacy_classes(pc.make_group(3, 2))


# -- D8*C_2^m subgroup search -------------------------------------------------


def test_d8cm_subgroups_in_d42(d42):
    subs = pc.subgroups_isomorphic_to_d8cm(d42, 2)
    orbits = pc.subgroup_fusion_orbits(d42, subs)
    assert len(orbits) == 2
    z = d42.index[Element(0, 0, 1)]
    assert all(z in set(s.elems) for s in subs)
    # the explicit representatives of the two classes
    x, y, _ = d42.generators
    q1 = pc.generated_subgroup(d42, [d42.power(x, 2), y, d42.generators[2]])
    q2 = pc.generated_subgroup(d42, [d42.power(x, 2), d42.mult(x, y), d42.generators[2]])
    found = {s.elems for s in subs}
    assert q1.elems in found and q2.elems in found and q1.elems != q2.elems


def test_d8cm_subgroups_in_d52():
    g = pc.make_group(5, 2)
    subs = pc.subgroups_isomorphic_to_d8cm(g, 2)
    orbits = pc.subgroup_fusion_orbits(g, subs)
    assert len(orbits) == 2
    z = g.index[Element(0, 0, 1)]
    assert all(z in set(s.elems) for s in subs)


def test_d8cm_subgroup_of_d3m_is_whole_group(d32):
    subs = pc.subgroups_isomorphic_to_d8cm(d32, 2)
    assert len(subs) == 1 and subs[0].order == d32.order


# -- automorphism search --------------------------------------------------------


@pytest.mark.parametrize("n,m,expect", [(3, 2, True), (3, 3, True), (4, 2, False), (5, 2, False)])
def test_order3_automorphism_parity(n, m, expect):
    g = pc.make_group(n, m)
    found = pc.automorphism_search(g, order_constraint=3)
    assert bool(found) is expect
    for a in found:
        assert a.order() == 3
        # odd-order automorphisms fix the center pointwise
        assert a.fixes_pointwise(pc.center(g).elems)


def test_order3_automorphism_on_q1_fixing_z(d42):
    x, y, z = d42.generators
    q1 = pc.generated_subgroup(d42, [d42.power(x, 2), y, z])
    q1t = q1.as_table()
    zsub = pc.generated_subgroup(q1t, [q1t.index[Element(0, 0, 1)]])
    autos = pc.automorphism_search(q1t, order_constraint=3, fixed_points=zsub.elems)
    assert autos


def test_search_space_guard(monkeypatch, d32):
    monkeypatch.setattr(pc, "MAX_AUT_SEARCH", 1)
    with pytest.raises(pc.SearchSpaceError):
        pc.automorphism_search(pc.make_group(3, 2))


def test_oversize_automorphism_guard():
    g = pc.make_group(5, 4)  # order 256 > 2^7
    with pytest.raises(pc.OversizeGroupError):
        pc.automorphism_search(g)


# -- semidirect products --------------------------------------------------------


def test_semidirect_with_order3_twist(d32):
    alpha = pc.automorphism_search(d32, order_constraint=3)[0]
    sd = pc.semidirect_product(d32, alpha)
    assert sd.order == 48
    assert len(pc.conjugacy_classes(sd)) == 14


def test_semidirect_trivial_twist_is_direct_product(d32):
    ident = pc.GroupMap(d32, d32, np.arange(d32.order), check=False)
    dp = pc.semidirect_product(d32, ident, t=3)
    assert dp.order == 48
    assert len(pc.conjugacy_classes(dp)) == len(pc.conjugacy_classes(d32)) * 3


def test_semidirect_rejects_non_automorphism(d32):
    squaring = pc.GroupMap(d32, d32, [d32.power(a, 2) for a in range(d32.order)], check=False)
    with pytest.raises(ValueError):
        pc.semidirect_product(d32, squaring)


# -- serialization ----------------------------------------------------------------


def test_group_json_roundtrip_family(d42):
    obj = pc.group_to_json(d42)
    assert obj == {"family": "D*C", "n": 4, "m": 2}
    g2 = pc.group_from_json(obj)
    assert g2.order == d42.order and np.array_equal(g2.table, d42.table)


def test_group_json_roundtrip_semidirect(d32):
    alpha = pc.automorphism_search(d32, order_constraint=3)[0]
    sd = pc.semidirect_product(d32, alpha)
    obj = pc.group_to_json(sd)
    assert obj["family"] == "semidirect" and obj["base"] == {"family": "D*C", "n": 3, "m": 2}
    sd2 = pc.group_from_json(obj)
    assert sd2.order == sd.order
    assert len(pc.conjugacy_classes(sd2)) == len(pc.conjugacy_classes(sd))
