"""2-block partition of ordinary characters via mod-2 reduction of central
characters, plus principal-block invariants for the witness groups.

Two characters lie in the same 2-block iff the central-character values
|K| chi(g_K) / chi(1) agree for every class K after reduction through a
maximal ideal over 2: zeta_{2^a} -> 1 (totally ramified) and zeta_r -> a fixed
generator of the order-r subgroup of GF(2^s)^x, s = ord_r(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from blocklab import pcgroup
from blocklab.chartab import CharacterTable, DefectData, defects_heights
from blocklab.cyclo import Cyclotomic, nu2, _split_conductor


class NonIntegralCentralCharacter(RuntimeError):
    """A central character failed the algebraic-integer check (table is wrong)."""


class UnsupportedLComputation(RuntimeError):
    """l(B) is only computed in the single-block, normal-Sylow situation."""


def _gf2_polmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _gf2_polmod(a: int, mod: int) -> int:
    dm = mod.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= mod << (a.bit_length() - 1 - dm)
    return a


def _irreducible_poly(s: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree s over F_2."""
    if s == 1:
        return 0b10  # x
    for cand in range(1 << s, 1 << (s + 1)):
        if not cand & 1:
            continue
        ok = True
        for d in range(2, (1 << (s // 2 + 1))):
            if d.bit_length() - 1 < 1 or d.bit_length() - 1 > s // 2:
                continue
            # trial division by d
            rem = cand
            dd = d.bit_length() - 1
            while rem.bit_length() - 1 >= dd:
                rem ^= d << (rem.bit_length() - 1 - dd)
            if rem == 0:
                ok = False
                break
        if ok:
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {s}")


class GF2m:
    """GF(2^s) as polynomial bitmasks modulo a fixed irreducible polynomial."""

    def __init__(self, s: int):
        self.s = s
        self.modulus = _irreducible_poly(s)
        self.size = 1 << s

    def mul(self, a: int, b: int) -> int:
        return _gf2_polmod(_gf2_polmul(a, b), self.modulus)

    def pow(self, a: int, e: int) -> int:
        r, b = 1, a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        o, b = 1, a
        while b != 1:
            b = self.mul(b, a)
            o += 1
        return o

    def elements_of_order(self, r: int) -> list[int]:
        return sorted(a for a in range(1, self.size) if self.element_order(a) == r)


class ModTwoEmbedding:
    """Reduction of Z[zeta_N] through a maximal ideal over 2.

    generator_choice selects among the elements of order r; any choice yields
    the same block partition (tested), only the labelling of values moves.
    """

    def __init__(self, conductor: int, generator_choice: int = 0):
        two, three = _split_conductor(conductor)
        self.conductor = conductor
        self.two = two
        self.r = three
        if self.r == 1:
            self.field = GF2m(1)
            self.zr_image = 1
            self._mu = 0
        else:
            s = 1
            while (2 ** s - 1) % self.r:
                s += 1
            self.field = GF2m(s)
            roots = self.field.elements_of_order(self.r)
            self.zr_image = roots[generator_choice % len(roots)]
            self._mu = pow(two, -1, self.r)

    def reduce(self, c: Cyclotomic) -> int:
        c = c.promote(math.lcm(c.n, self.conductor))
        if c.n != self.conductor:
            raise ValueError(f"value of conductor {c.n} does not embed in {self.conductor}")
        if not c.is_integral():
            raise NonIntegralCentralCharacter(f"{c!r} is not an algebraic integer")
        acc = 0
        for e, q in c.coeffs.items():
            if q.numerator % 2:
                # zeta_N^e = zeta_{2^a}^{e*lambda} * zeta_r^{e*mu} -> g^{e*mu}
                acc ^= self.field.pow(self.zr_image, (e * self._mu) % self.r) if self.r > 1 else 1
        return acc

    def verify(self) -> None:
        """Ring-homomorphism sanity on root-of-unity products."""
        if self.r == 1:
            return
        zr = self.conductor // self.r
        z2 = self.conductor // self.two
        from blocklab.cyclo import zeta

        a = zeta(self.conductor, zr)   # a 2-power root
        b = zeta(self.conductor, z2)   # an order-r root
        assert self.reduce(a) == 1
        assert self.reduce(b) == self.zr_image
        assert self.reduce(a * b) == self.field.mul(self.reduce(a), self.reduce(b))
        assert self.reduce(b * b) == self.field.mul(self.zr_image, self.zr_image)


@dataclass
class BlockPartition:
    blocks: list[list[int]]
    defects: list[int]
    principal: int

    @property
    def nblocks(self) -> int:
        return len(self.blocks)

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks], "principal": self.principal}


def block_partition(t: CharacterTable, embedding: ModTwoEmbedding | None = None) -> BlockPartition:
    """Partition Irr(G) into 2-blocks by equality of reduced central characters."""
    g = t.group
    conductor = g.exponent()
    for row in t.chars:
        for v in row:
            conductor = math.lcm(conductor, v.n)
    emb = embedding if embedding is not None else ModTwoEmbedding(conductor)
    if emb.conductor % conductor:
        raise ValueError("embedding conductor does not cover the table values")
    signatures = []
    for i in range(t.nchars):
        deg = t.degree(i)
        sig = []
        for l in range(t.nclasses):
            omega = t.chars[i][l] * Fraction(t.class_sizes[l], deg)
            sig.append(emb.reduce(omega))
        signatures.append(tuple(sig))
    groups: dict[tuple, list[int]] = {}
    for i, sig in enumerate(signatures):
        groups.setdefault(sig, []).append(i)
    blocks = sorted(groups.values(), key=min)
    if sum(len(b) for b in blocks) != t.nchars:
        raise AssertionError("blocks do not partition the characters")
    v2_g = nu2(Fraction(g.order)) if g.order % 2 == 0 else 0
    defects = [max(v2_g - nu2(Fraction(t.degree(i))) for i in b) for b in blocks]
    principal = next(bi for bi, b in enumerate(blocks)
                     if any(t.degree(i) == 1 and all(v == 1 for v in t.chars[i]) for i in b))
    return BlockPartition(blocks, defects, principal)


def defect_zero_count(t: CharacterTable) -> int:
    """Number of chi with nu_2(chi(1)) = nu_2(|G|); each is its own defect-0 block."""
    order = t.group.order
    v2_g = 0
    while order % 2 == 0:
        order //= 2
        v2_g += 1
    count = 0
    for i in range(t.nchars):
        d, v = t.degree(i), 0
        while d % 2 == 0:
            d //= 2
            v += 1
        if v == v2_g:
            count += 1
    return count


@dataclass
class PrincipalInvariants:
    k: int
    k_by_height: dict[int, int]
    l: int

    @property
    def k0(self) -> int:
        return self.k_by_height.get(0, 0)

    @property
    def k1(self) -> int:
        return self.k_by_height.get(1, 0)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.k, self.k0, self.k1, self.l)


def principal_block_invariants(p: BlockPartition, t: CharacterTable,
                               sylow_order: int) -> PrincipalInvariants:
    """(k, k_h, l) of the principal block for witnesses with normal Sylow 2-subgroup."""
    g = t.group
    sylow = pcgroup.sylow_two(g)  # raises if the 2-elements are not a normal subgroup
    if sylow.order != sylow_order:
        raise ValueError(f"Sylow order is {sylow.order}, expected {sylow_order}")
    if p.nblocks > 1:
        raise UnsupportedLComputation(
            f"witness splits into {p.nblocks} 2-blocks; l(B) is only computed "
            "in the single-block normal-Sylow situation")
    dd = defects_heights(t, sylow_order)
    block = p.blocks[p.principal]
    k_by_height: dict[int, int] = {}
    for i in block:
        h = dd.heights[i]
        k_by_height[h] = k_by_height.get(h, 0) + 1
    two_regular = sum(1 for rep, _ in pcgroup.conjugacy_classes(g)
                      if g.element_order(rep) % 2 == 1)
    return PrincipalInvariants(len(block), k_by_height, two_regular)
