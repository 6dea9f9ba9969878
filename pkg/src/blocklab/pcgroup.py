"""Group engine: normal forms for D(n,m) = D_{2^n} * C_{2^m} and generic
finite-group machinery (classes, centralizers, subgroup search, automorphism
search, semidirect products) over dense Cayley tables.

Element indices encode the normal form x^i y^j z^k as (i*2 + j)*2^m + k with
i < 2^{n-2}, j < 2, k < 2^m; the relation x^{2^{n-2}} = z^{2^{m-1}} is folded
into the reduction, so index 0 is always the identity.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

import numpy as np

from blocklab import _kernels as K

MAX_CLASS_ORDER = 1 << 13
MAX_AUT_ORDER = 1 << 7
MAX_AUT_SEARCH = 1 << 24


class OversizeGroupError(ValueError):
    """Raised when a desk-scale guard refuses an oversized group."""


class SearchSpaceError(RuntimeError):
    """Raised when an exhaustive search would exceed its candidate budget."""


@dataclass(frozen=True)
class GroupParams:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"n must be >= 3 (got n={self.n})")
        if self.m < 2:
            raise ValueError(f"m must be >= 2 (got m={self.m})")

    @property
    def order(self) -> int:
        return 1 << (self.n + self.m - 1)


class Element(NamedTuple):
    """Normal-form word x^i y^j z^k."""

    i: int
    j: int
    k: int


def normal_form(n: int, m: int, i: int, j: int, k: int) -> Element:
    ni = 1 << (n - 2)
    i %= 1 << (n - 1)
    j &= 1
    k %= 1 << m
    if i >= ni:
        i -= ni
        k = (k + (1 << (m - 1))) % (1 << m)
    return Element(i, j, k)


class GroupTable:
    """A finite group as an element list plus a dense Cayley table on indices.

    elements[0] is always the identity.
    """

    def __init__(self, elements: list, table: np.ndarray, tag: Optional[dict] = None,
                 generators: Sequence[int] = ()):
        self.elements = list(elements)
        self.table = np.ascontiguousarray(table, dtype=np.int32)
        if not np.array_equal(self.table[0], np.arange(len(elements), dtype=np.int32)):
            raise ValueError("elements[0] must be the identity")
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.inv = K.inverse_map(self.table)
        self.tag = dict(tag or {})
        self.generators = list(generators)
        self._classes = None
        self._bfs = None
        self._orders = None

    # -- basics ------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def mult(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def power(self, a: int, e: int) -> int:
        if e < 0:
            return self.power(self.inverse(a), -e)
        r, b = 0, a
        while e:
            if e & 1:
                r = int(self.table[r, b])
            b = int(self.table[b, b])
            e >>= 1
        return r

    def conj(self, g: int, a: int) -> int:
        """g a g^{-1}"""
        return int(self.table[self.table[g, a], self.inv[g]])

    def element_order(self, a: int) -> int:
        if self._orders is None:
            self._orders = [0] * self.order
        o = self._orders[a]
        if o:
            return o
        b, o = a, 1
        while b != 0:
            b = int(self.table[b, a])
            o += 1
        self._orders[a] = o
        return o

    def exponent(self) -> int:
        return math.lcm(*(self.element_order(a) for a in range(self.order)))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def resolve(self, e) -> int:
        """Element label or index -> index, rejecting foreigners."""
        if isinstance(e, (int, np.integer)):
            if not 0 <= int(e) < self.order:
                raise ValueError(f"element index {e} outside group of order {self.order}")
            return int(e)
        if e in self.index:
            return self.index[e]
        raise ValueError(f"element {e!r} does not belong to this group")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_mult(cls, elements: list, mult: Callable, tag: Optional[dict] = None,
                  generator_labels: Sequence = ()) -> "GroupTable":
        index = {e: i for i, e in enumerate(elements)}
        size = len(elements)
        table = np.empty((size, size), dtype=np.int32)
        for i, a in enumerate(elements):
            row = table[i]
            for j, b in enumerate(elements):
                p = mult(a, b)
                if p not in index:
                    raise ValueError(f"multiplication leaves the element set: {a!r} * {b!r} = {p!r}")
                row[j] = index[p]
        g = cls(elements, table, tag=tag,
                generators=[index[e] for e in generator_labels])
        g.spot_check_associativity()
        return g

    def spot_check_associativity(self, triples: int = 40, seed: int = 0) -> None:
        rng = random.Random(seed)
        n = self.order
        t = self.table
        for _ in range(triples):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if t[t[a, b], c] != t[a, t[b, c]]:
                raise ValueError(f"multiplication is not associative at ({a},{b},{c})")

    def sub_table(self, indices: Sequence[int], generators: Sequence[int] = (),
                  tag: Optional[dict] = None) -> "GroupTable":
        """The subgroup on `indices` as its own GroupTable (labels kept)."""
        idx = sorted(int(i) for i in indices)
        pos = {a: p for p, a in enumerate(idx)}
        size = len(idx)
        table = np.empty((size, size), dtype=np.int32)
        for p, a in enumerate(idx):
            for q, b in enumerate(idx):
                c = int(self.table[a, b])
                if c not in pos:
                    raise ValueError("index set is not closed under multiplication")
                table[p, q] = pos[c]
        gens = [pos[int(g)] for g in generators]
        return GroupTable([self.elements[a] for a in idx], table,
                          tag=tag or {"kind": "subgroup", "parent": self.tag},
                          generators=gens)

    # -- cached structure ----------------------------------------------------

    def bfs_words(self, gens: Sequence[int]) -> list[tuple[int, int, int]]:
        """(element, parent, generator-slot) triples in BFS order, root omitted."""
        key = tuple(gens)
        if self._bfs is not None and self._bfs[0] == key:
            return self._bfs[1]
        t = self.table
        seen = [False] * self.order
        seen[0] = True
        out = []
        queue = [0]
        head = 0
        while head < len(queue):
            a = queue[head]
            head += 1
            for slot, g in enumerate(gens):
                b = int(t[a, g])
                if not seen[b]:
                    seen[b] = True
                    out.append((b, a, slot))
                    queue.append(b)
        if len(queue) != self.order:
            raise ValueError("given generators do not generate the group")
        self._bfs = (key, out)
        return out

    def generating_set(self) -> list[int]:
        """Designated generators, or a greedy canonical generating set."""
        if self.generators:
            return list(self.generators)
        gens: list[int] = []
        have = [0]
        for a in range(1, self.order):
            if a not in have:
                gens.append(a)
                have = K.closure(self.table, gens)
                if len(have) == self.order:
                    break
        self.generators = gens
        return list(gens)


@dataclass(frozen=True)
class Subgroup:
    parent: GroupTable
    elems: tuple
    gens: tuple = ()

    @property
    def order(self) -> int:
        return len(self.elems)

    def __contains__(self, a: int) -> bool:
        return a in set(self.elems)

    def as_table(self, tag: Optional[dict] = None) -> GroupTable:
        return self.parent.sub_table(self.elems, generators=self.gens, tag=tag)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self.elems == other.elems

    def __hash__(self):
        return hash((id(self.parent), self.elems))


class GroupMap:
    """A verified homomorphism between group tables, stored as a total index map."""

    def __init__(self, domain: GroupTable, codomain: GroupTable, images: np.ndarray,
                 check: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.images = np.asarray(images, dtype=np.int32)
        if check:
            self._verify()
        self.bijective = len(np.unique(self.images)) == domain.order and \
            domain.order == codomain.order

    def _verify(self):
        f, dt, ct = self.images, self.domain.table, self.codomain.table
        if f[0] != 0:
            raise ValueError("map does not fix the identity")
        for g in self.domain.generating_set():
            if not np.array_equal(f[dt[:, g]], ct[f, f[g]]):
                raise ValueError("map is not a homomorphism")

    @property
    def is_automorphism(self) -> bool:
        return self.domain is self.codomain and self.bijective

    def __call__(self, a: int) -> int:
        return int(self.images[a])

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self after other."""
        if other.codomain is not self.domain:
            raise ValueError("maps are not composable")
        return GroupMap(other.domain, self.codomain, self.images[other.images], check=False)

    def order(self) -> int:
        if not self.is_automorphism:
            raise ValueError("order is defined for automorphisms only")
        ident = np.arange(self.domain.order, dtype=np.int32)
        cur, o = self.images, 1
        while not np.array_equal(cur, ident):
            cur = self.images[cur]
            o += 1
        return o

    def fixes_pointwise(self, indices: Iterable[int]) -> bool:
        return all(int(self.images[a]) == int(a) for a in indices)

    def __eq__(self, other):
        return isinstance(other, GroupMap) and self.domain is other.domain and \
            self.codomain is other.codomain and np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash((id(self.domain), id(self.codomain), self.images.tobytes()))


# -- the family -------------------------------------------------------------


def make_group(params: GroupParams | int, m: Optional[int] = None) -> GroupTable:
    """The group D(n,m) of order 2^{n+m-1} with generators x, y, z."""
    if not isinstance(params, GroupParams):
        params = GroupParams(params, m)
    n, m = params.n, params.m
    table = K.dc_mult_table(n, m)
    nk = 1 << m
    elements = [Element(i, j, k)
                for i in range(1 << (n - 2)) for j in range(2) for k in range(nk)]
    x = (1 * 2 + 0) * nk if n >= 3 else 0
    y = nk
    z = 1
    return GroupTable(elements, table, tag={"family": "D*C", "n": n, "m": m},
                      generators=[x, y, z])


def family_params(g: GroupTable) -> GroupParams:
    if g.tag.get("family") != "D*C":
        raise ValueError("group is not a member of the D*C family")
    return GroupParams(g.tag["n"], g.tag["m"])


# -- generic operations ------------------------------------------------------


def conjugacy_classes(g: GroupTable) -> list[tuple[int, list[int]]]:
    """(representative, class members) pairs; representatives are minimal indices."""
    if g.order > MAX_CLASS_ORDER:
        raise OversizeGroupError(
            f"group of order {g.order} exceeds the class-enumeration guard {MAX_CLASS_ORDER}")
    if g._classes is None:
        cid, reps = K.conjugacy_classes(g.table, g.inv)
        members: list[list[int]] = [[] for _ in reps]
        for a, c in enumerate(cid.tolist()):
            members[c].append(a)
        g._classes = [(reps[c], members[c]) for c in range(len(reps))]
    return g._classes


def center(g: GroupTable) -> Subgroup:
    t = g.table
    idx = [a for a in range(g.order) if np.array_equal(t[a], t[:, a])]
    return Subgroup(g, tuple(idx))


def centralizer(g: GroupTable, e) -> Subgroup:
    a = g.resolve(e)
    return Subgroup(g, tuple(K.centralizer_of(g.table, a)))


def derived_subgroup(g: GroupTable) -> Subgroup:
    comms = K.commutators(g.table, g.inv)
    elems = K.closure(g.table, comms)
    return Subgroup(g, tuple(elems), gens=tuple(comms))


def normalizer(g: GroupTable, s: Subgroup | Sequence[int]) -> Subgroup:
    elems = s.elems if isinstance(s, Subgroup) else tuple(s)
    for a in elems:
        g.resolve(a)
    return Subgroup(g, tuple(K.normalizer_of(g.table, g.inv, list(elems))))


def generated_subgroup(g: GroupTable, gens: Sequence) -> Subgroup:
    idx = [g.resolve(e) for e in gens]
    return Subgroup(g, tuple(K.closure(g.table, idx)), gens=tuple(idx))


def sylow_two(g: GroupTable) -> Subgroup:
    """The set of 2-elements, when it happens to be a (then normal) subgroup."""
    two = [a for a in range(g.order) if g.element_order(a) & (g.element_order(a) - 1) == 0]
    target = 1
    while g.order % (2 * target) == 0:
        target *= 2
    if len(two) != target or len(K.closure(g.table, two)) != target:
        raise ValueError("2-elements do not form a normal Sylow 2-subgroup")
    return Subgroup(g, tuple(sorted(two)))


# -- subgroup enumeration ----------------------------------------------------


def subgroups_up_to_order(g: GroupTable, max_order: int,
                          containing: Sequence[int] = ()) -> dict[int, list[tuple[int, ...]]]:
    """All subgroups of 2-power order <= max_order containing the seed set.

    Layered: every subgroup of order 2^{t+1} is <H, e> for an index-2 subgroup
    H already listed and e normalizing H with e^2 in H.
    """
    base = K.closure(g.table, [g.resolve(e) for e in containing]) if containing else [0]
    if len(base) & (len(base) - 1):
        raise ValueError("seed subgroup must have 2-power order")
    layers: dict[int, list[tuple[int, ...]]] = {len(base): [tuple(base)]}
    cur = len(base)
    t = g.table
    while cur < max_order:
        grown: set[tuple[int, ...]] = set()
        for sub in layers[cur]:
            inside = set(sub)
            for e in K.normalizer_of(t, g.inv, list(sub)):
                if e in inside or int(t[e, e]) not in inside:
                    continue
                new = K.closure(t, list(sub) + [e])
                if len(new) != 2 * cur:
                    raise AssertionError("layered extension produced a wrong order")
                grown.add(tuple(new))
        cur *= 2
        layers[cur] = sorted(grown)
        if not grown:
            break
    return layers


def is_isomorphic_to_d8cm(g: GroupTable, sub: Subgroup, m: int) -> bool:
    """Exact isomorphism test of a subgroup against D_8 * C_{2^m}."""
    if sub.order != 1 << (m + 2):
        return False
    s = sub.as_table()
    if len(center(s).elems) != 1 << m or s.exponent() != 1 << m:
        return False
    if len(conjugacy_classes(s)) != 5 << (m - 1):
        return False
    # generator-mapping search against the presentation of D(3,m)
    zord = 1 << m
    half = 1 << (m - 1)
    cand_a = [a for a in range(s.order) if s.element_order(a) == 4]
    cand_b = [a for a in range(s.order) if s.element_order(a) == 2]
    cand_c = [a for a in range(s.order) if s.element_order(a) == zord]
    for c in cand_c:
        chalf = s.power(c, half)
        for a in cand_a:
            if s.mult(a, c) != s.mult(c, a) or s.mult(a, a) != chalf:
                continue
            for b in cand_b:
                if s.mult(b, c) != s.mult(c, b):
                    continue
                if s.conj(b, a) != s.inverse(a):
                    continue
                if len(K.closure(s.table, [a, b, c])) == s.order:
                    return True
    return False


def subgroups_isomorphic_to_d8cm(g: GroupTable, m: int) -> list[Subgroup]:
    """All subgroups of g isomorphic to D_8 * C_{2^m}, by honest enumeration."""
    target = 1 << (m + 2)
    layers = subgroups_up_to_order(g, target)
    out = []
    for elems in layers.get(target, []):
        sub = Subgroup(g, elems)
        if is_isomorphic_to_d8cm(g, sub, m):
            out.append(sub)
    return out


def subgroup_fusion_orbits(g: GroupTable, subs: Sequence[Subgroup]) -> list[list[Subgroup]]:
    """Group subgroups into conjugacy classes under g."""
    remaining = {s.elems: s for s in subs}
    orbits = []
    while remaining:
        seed = min(remaining)
        orbit = set()
        queue = [seed]
        while queue:
            cur = queue.pop()
            if cur in orbit:
                continue
            orbit.add(cur)
            for d in range(g.order):
                img = tuple(sorted(g.conj(d, a) for a in cur))
                if img not in orbit:
                    queue.append(img)
        members = [remaining.pop(e) for e in sorted(orbit) if e in remaining]
        orbits.append(members)
    return orbits


# -- automorphism search -----------------------------------------------------


def _extend_generator_images(g: GroupTable, gens: Sequence[int],
                             images: Sequence[int]) -> Optional[np.ndarray]:
    """Total map sending gens -> images if it is an endomorphism, else None."""
    t = g.table
    f = np.full(g.order, -1, dtype=np.int32)
    f[0] = 0
    for e, parent, slot in g.bfs_words(gens):
        f[e] = t[f[parent], images[slot]]
    for slot, gen in enumerate(gens):
        if not np.array_equal(f[t[:, gen]], t[f, images[slot]]):
            return None
    return f


def automorphism_search(g: GroupTable, order_constraint: Optional[int] = None,
                        fixed_points: Optional[Sequence[int]] = None) -> list[GroupMap]:
    """All automorphisms matching the constraints, by exhaustive generator-image search.

    Candidates are pruned by element orders and by the orders of generator
    pairs/commutators before the full homomorphism extension runs.
    """
    if g.order > MAX_AUT_ORDER:
        raise OversizeGroupError(
            f"group of order {g.order} exceeds the automorphism-search guard {MAX_AUT_ORDER}")
    gens = g.generating_set()
    r = len(gens)
    by_order: dict[int, list[int]] = {}
    for a in range(g.order):
        by_order.setdefault(g.element_order(a), []).append(a)
    cands = [by_order.get(g.element_order(gen), []) for gen in gens]
    space = math.prod(len(c) for c in cands)
    if space > MAX_AUT_SEARCH:
        raise SearchSpaceError(f"search space of {space} candidates exceeds {MAX_AUT_SEARCH}")
    pair_target = {(i, j): (g.element_order(g.mult(gens[i], gens[j])),
                            g.element_order(g.mult(g.mult(g.inverse(gens[i]), g.inverse(gens[j])),
                                                   g.mult(gens[i], gens[j]))))
                   for i in range(r) for j in range(i + 1, r)}
    fixed = [g.resolve(e) for e in fixed_points] if fixed_points is not None else None
    found: list[GroupMap] = []
    chosen = [0] * r

    def descend(slot: int):
        if slot == r:
            f = _extend_generator_images(g, gens, chosen)
            if f is None or len(np.unique(f)) != g.order:
                return
            amap = GroupMap(g, g, f, check=False)
            if order_constraint is not None and amap.order() != order_constraint:
                return
            if fixed is not None and not amap.fixes_pointwise(fixed):
                return
            found.append(amap)
            return
        for cand in cands[slot]:
            ok = True
            for prev in range(slot):
                to, tc = pair_target[(prev, slot)]
                p = g.mult(chosen[prev], cand)
                if g.element_order(p) != to:
                    ok = False
                    break
                comm = g.mult(g.mult(g.inverse(chosen[prev]), g.inverse(cand)), p)
                if g.element_order(comm) != tc:
                    ok = False
                    break
            if ok:
                chosen[slot] = cand
                descend(slot + 1)

    descend(0)
    return found


# -- semidirect products -----------------------------------------------------


def semidirect_product(g: GroupTable, a: GroupMap, t: Optional[int] = None) -> GroupTable:
    """G semidirect C_t: (e1,c1)(e2,c2) = (e1 * a^{c1}(e2), c1+c2 mod t).

    t defaults to the order of the twisting automorphism; passing a larger
    multiple (e.g. the trivial map with t=3) yields the direct product.
    """
    if not a.is_automorphism or a.domain is not g:
        raise ValueError("twisting map must be an automorphism of the base group")
    aorder = a.order()
    t = aorder if t is None else t
    if t % aorder:
        raise ValueError(f"t={t} must be a multiple of the automorphism order {aorder}")
    n = g.order
    powers = [np.arange(n, dtype=np.int32)]
    for _ in range(t - 1):
        powers.append(a.images[powers[-1]])
    size = t * n
    table = np.empty((size, size), dtype=np.int32)
    gt = g.table
    for c1 in range(t):
        twisted = gt[:, powers[c1]]  # (e1, e2) -> e1 * a^{c1}(e2)
        for c2 in range(t):
            dest = ((c1 + c2) % t) * n
            table[c1 * n:(c1 + 1) * n, c2 * n:(c2 + 1) * n] = dest + twisted
    elements = [(g.elements[e], c) for c in range(t) for e in range(n)]
    gens = [int(gi) for gi in g.generators] + [n]
    tag = {"family": "semidirect", "base": dict(g.tag), "t": t,
           "automorphism": [list(g.elements[int(a.images[gi])]) for gi in g.generators]}
    sd = GroupTable(elements, table, tag=tag, generators=gens)
    sd.spot_check_associativity()
    return sd


# -- serialization -----------------------------------------------------------


def group_to_json(g: GroupTable) -> dict:
    tag = g.tag
    if tag.get("family") == "D*C":
        return {"family": "D*C", "n": tag["n"], "m": tag["m"]}
    if tag.get("family") == "semidirect":
        return {"family": "semidirect", "base": {"family": "D*C", "n": tag["base"]["n"],
                                                 "m": tag["base"]["m"]},
                "automorphism": tag["automorphism"]}
    raise ValueError("only family and semidirect groups serialize")


def group_from_json(obj: dict) -> GroupTable:
    if obj["family"] == "D*C":
        return make_group(obj["n"], obj["m"])
    if obj["family"] == "semidirect":
        base = group_from_json(obj["base"])
        images = [base.index[Element(*img)] for img in obj["automorphism"]]
        f = _extend_generator_images(base, base.generating_set(), images)
        if f is None:
            raise ValueError("automorphism images do not define an endomorphism")
        amap = GroupMap(base, base, f, check=False)
        if not amap.bijective:
            raise ValueError("automorphism images do not define a bijection")
        return semidirect_product(base, amap)
    raise ValueError(f"unknown family {obj.get('family')!r}")
