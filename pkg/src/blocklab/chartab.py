"""Exact ordinary character tables.

Two independent constructions: a closed-form table for the family D(n,m)
(characters of D_{2^n} x C_{2^m} whose kernel contains the identified central
element) and a generic class-sum engine for witness groups (split the
commuting class-sum matrices over a prime field F_q with q = 1 mod exponent,
then lift eigenvalue data back to exact root-of-unity values).  Both verify
the orthogonality relations before returning.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from blocklab import cyclo, pcgroup
from blocklab import _kernels as K
from blocklab.cyclo import Cyclotomic, nu2, rational, zeta
from blocklab.pcgroup import GroupParams, GroupTable

DEFAULT_DIXON_GUARD = 1 << 10
PRIME_SEARCH_BOUND = 1_000_000


class TableError(RuntimeError):
    """A character-table construction failed its internal verification."""


class CharacterTable:
    def __init__(self, group: GroupTable, class_reps: list[int], class_sizes: list[int],
                 chars: list[list[Cyclotomic]]):
        self.group = group
        self.class_reps = list(class_reps)
        self.class_sizes = list(class_sizes)
        self.chars = chars
        self._class_of = None

    @property
    def nclasses(self) -> int:
        return len(self.class_reps)

    @property
    def nchars(self) -> int:
        return len(self.chars)

    @property
    def identity_class(self) -> int:
        return self.class_reps.index(0)

    def degree(self, i: int) -> int:
        d = self.chars[i][self.identity_class].rational_value()
        if d.denominator != 1:
            raise TableError("non-integral character degree")
        return d.numerator

    @property
    def degrees(self) -> list[int]:
        return [self.degree(i) for i in range(self.nchars)]

    def class_of(self, a: int) -> int:
        if self._class_of is None:
            cid, reps = K.conjugacy_classes(self.group.table, self.group.inv)
            rep_to_col = {r: self.class_reps.index(r) for r in reps}
            self._class_of = [rep_to_col[reps[c]] for c in cid.tolist()]
        return self._class_of[a]

    def inner_product(self, i: int, j: int) -> Fraction:
        acc = Cyclotomic.zero(1)
        for l in range(self.nclasses):
            acc = acc + self.class_sizes[l] * self.chars[i][l] * self.chars[j][l].conjugate()
        return (acc / self.group.order).rational_value()

    def verify(self) -> None:
        """Both orthogonality relations, exactly."""
        order = self.group.order
        if self.nchars != self.nclasses:
            raise TableError("character count differs from class count")
        if sum(d * d for d in self.degrees) != order:
            raise TableError("degree squares do not sum to the group order")
        if self._verify_vectorized():
            return
        for i in range(self.nchars):
            for j in range(i, self.nchars):
                ip = self.inner_product(i, j)
                if ip != (1 if i == j else 0):
                    raise TableError(f"row orthogonality fails at ({i},{j}): {ip}")
        for l in range(self.nclasses):
            for r in range(l, self.nclasses):
                acc = Cyclotomic.zero(1)
                for i in range(self.nchars):
                    acc = acc + self.chars[i][l] * self.chars[i][r].conjugate()
                want = rational(order // self.class_sizes[l]) if l == r else rational(0)
                if acc != want:
                    raise TableError(f"column orthogonality fails at ({l},{r})")

    def _verify_vectorized(self) -> bool:
        """Exact int64 orthogonality check; False if the table needs the slow path."""
        import numpy as np

        k = self.nchars
        cond = 1
        for row in self.chars:
            for v in row:
                cond = math.lcm(cond, v.n)
        basis = cyclo.basis_exponents(cond)
        pos = {e: d for d, e in enumerate(basis)}
        dim = len(basis)
        a = np.zeros((k, k, dim), dtype=np.int64)
        for i, row in enumerate(self.chars):
            for l, v in enumerate(row):
                for e, c in v.promote(cond).coeffs.items():
                    if not isinstance(c, int):
                        return False
                    a[i, l, pos[e]] = c
        sizes = np.array(self.class_sizes, dtype=np.int64)
        amax = int(np.abs(a).max())
        if amax * amax * int(sizes.max()) * k * dim >= (1 << 62):
            return False
        red = cyclo._reduction_table(cond)
        conj = np.zeros_like(a)
        for d, e in enumerate(basis):
            for eb, sg in red[-e % cond]:
                conj[:, :, pos[eb]] += sg * a[:, :, d]

        def fold(z):
            out = np.zeros((z.shape[0], z.shape[2], dim), dtype=np.int64)
            for d1, e1 in enumerate(basis):
                for d2, e2 in enumerate(basis):
                    for eb, sg in red[(e1 + e2) % cond]:
                        if sg > 0:
                            out[:, :, pos[eb]] += z[:, d1, :, d2]
                        else:
                            out[:, :, pos[eb]] -= z[:, d1, :, d2]
            return out

        order = self.group.order
        rowg = fold(np.tensordot(a * sizes[None, :, None], conj, axes=([1], [1])))
        want = np.zeros((k, k, dim), dtype=np.int64)
        want[np.arange(k), np.arange(k), pos[0]] = order
        if not np.array_equal(rowg, want):
            raise TableError("row orthogonality fails")
        colg = fold(np.tensordot(a.transpose(1, 0, 2), conj.transpose(1, 0, 2), axes=([1], [1])))
        wantc = np.zeros((k, k, dim), dtype=np.int64)
        wantc[np.arange(k), np.arange(k), pos[0]] = order // sizes
        if not np.array_equal(colg, wantc):
            raise TableError("column orthogonality fails")
        return True

    def permuted_by(self, perm: dict[int, int]) -> "CharacterTable":
        """Relabel columns by a class permutation (old column -> new column)."""
        k = self.nclasses
        reps = [0] * k
        sizes = [0] * k
        for old, new in perm.items():
            reps[new] = self.class_reps[old]
            sizes[new] = self.class_sizes[old]
        chars = [[row[old] for old in sorted(perm, key=perm.get)] for row in self.chars]
        return CharacterTable(self.group, reps, sizes, chars)

    def sorted_rows(self) -> "CharacterTable":
        order = sorted(range(self.nchars),
                       key=lambda i: (self.degree(i), [v.sort_key() for v in self.chars[i]]))
        t = CharacterTable(self.group, self.class_reps, self.class_sizes,
                           [self.chars[i] for i in order])
        t._class_of = self._class_of
        return t

    def value_multiset(self) -> list:
        return sorted(tuple(v.sort_key() for v in row) for row in self.chars)

    def to_json(self) -> dict:
        def rep_label(r):
            lbl = self.group.elements[r]
            return list(lbl) if isinstance(lbl, tuple) else lbl

        return {
            "classes": [{"rep": rep_label(r), "size": s}
                        for r, s in zip(self.class_reps, self.class_sizes)],
            "chars": [[cyclo.to_json(v) for v in row] for row in self.chars],
        }

    def to_tsv(self) -> str:
        lines = ["\t".join(["size"] + [str(s) for s in self.class_sizes])]
        lines.append("\t".join(["rep"] + [repr(self.group.elements[r]) for r in self.class_reps]))
        for i, row in enumerate(self.chars):
            lines.append("\t".join([f"chi{i}"] + [repr(v) for v in row]))
        return "\n".join(lines) + "\n"


# -- closed-form family table -------------------------------------------------


def family_table(params: GroupParams | int, m: Optional[int] = None,
                 group: Optional[GroupTable] = None) -> CharacterTable:
    """Irr(D(n,m)): the characters of D_{2^n} x C_{2^m} that kill the identified
    central element; 2^{m+1} linear and 2^{m-1}(2^{n-2}-1) of degree 2."""
    if not isinstance(params, GroupParams):
        params = GroupParams(params, m)
    n, m = params.n, params.m
    g = group if group is not None else pcgroup.make_group(params)
    classes = pcgroup.conjugacy_classes(g)
    reps = [rep for rep, _ in classes]
    sizes = [len(mem) for _, mem in classes]
    rep_words = [g.elements[r] for r in reps]
    ncond = 1 << max(n - 1, m)
    chars: list[list[Cyclotomic]] = []
    for e1 in (0, 1):
        for e2 in (0, 1):
            for s in range(0, 1 << m, 2):
                chars.append([
                    rational((-1) ** (e1 * i + e2 * j)) * zeta(1 << m, s * k).promote(ncond)
                    for (i, j, k) in rep_words])
    for t in range(1, 1 << (n - 2)):
        for s in range(t % 2, 1 << m, 2):
            row = []
            for (i, j, k) in rep_words:
                if j:
                    row.append(Cyclotomic.zero(ncond))
                else:
                    row.append((zeta(1 << (n - 1), t * i) + zeta(1 << (n - 1), -t * i))
                               * zeta(1 << m, s * k))
            chars.append(row)
    table = CharacterTable(g, reps, sizes, chars).sorted_rows()
    table.verify()
    return table


# -- F_q linear algebra for the class-sum engine --------------------------------


def _rref(rows: list[list[int]], p: int) -> list[list[int]]:
    rows = [r[:] for r in rows]
    out = []
    cols = len(rows[0]) if rows else 0
    lead = 0
    for c in range(cols):
        piv = next((r for r in range(lead, len(rows)) if rows[r][c] % p), None)
        if piv is None:
            continue
        rows[lead], rows[piv] = rows[piv], rows[lead]
        inv = pow(rows[lead][c], p - 2, p)
        rows[lead] = [(v * inv) % p for v in rows[lead]]
        for r in range(len(rows)):
            if r != lead and rows[r][c] % p:
                f = rows[r][c]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[lead])]
        lead += 1
        if lead == len(rows):
            break
    return [r for r in rows[:lead]]


def _nullspace(mat: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {x : mat x = 0} over F_p, deterministic order."""
    d = len(mat[0])
    r = _rref(mat, p)
    pivots = []
    for row in r:
        pivots.append(next(c for c in range(d) if row[c]))
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * d
        v[fc] = 1
        for row, pc in zip(r, pivots):
            v[pc] = (-row[fc]) % p
        basis.append(v)
    return basis


def _charpoly_hessenberg(a: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial coefficients (ascending) over F_p."""
    d = len(a)
    h = [row[:] for row in a]
    for c in range(d - 2):
        piv = next((r for r in range(c + 1, d) if h[r][c] % p), None)
        if piv is None:
            continue
        if piv != c + 1:
            h[c + 1], h[piv] = h[piv], h[c + 1]
            for r in range(d):
                h[r][c + 1], h[r][piv] = h[r][piv], h[r][c + 1]
        inv = pow(h[c + 1][c], p - 2, p)
        for r in range(c + 2, d):
            f = (h[r][c] * inv) % p
            if f:
                h[r] = [(x - f * y) % p for x, y in zip(h[r], h[c + 1])]
                for rr in range(d):
                    h[rr][c + 1] = (h[rr][c + 1] + f * h[rr][r]) % p
    polys = [[1]]  # p_0 = 1
    for k in range(1, d + 1):
        # p_k = (x - h[k-1][k-1]) p_{k-1} - sum_i h[i-1][k-1] (prod subdiag) p_{i-1}
        prev = polys[k - 1]
        cur = [0] + prev  # x * p_{k-1}
        cur = [(cv - h[k - 1][k - 1] * pv) % p for cv, pv in zip(cur, prev + [0])]
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = (prod * h[i][i - 1]) % p
            coef = (h[i - 1][k - 1] * prod) % p
            if coef:
                pi = polys[i - 1]
                cur = [(cv - coef * (pi[t] if t < len(pi) else 0)) % p
                       for t, cv in enumerate(cur)]
        polys.append(cur)
    return polys[d]


def _poly_roots(poly: list[int], p: int) -> list[int]:
    roots = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


def _matvec(rows: list[list[int]], v: list[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(r, v)) % p for r in rows]


# -- Dixon class-sum engine ------------------------------------------------------


def dixon_guard() -> int:
    return int(os.environ.get("BLOCKLAB_MAX_ORDER", str(DEFAULT_DIXON_GUARD)))


def _dixon_prime(exponent: int, order: int) -> int:
    q = exponent + 1
    while q < PRIME_SEARCH_BOUND:
        if q > 2 and q * q > 4 * order and all(q % d for d in range(2, math.isqrt(q) + 1)):
            return q
        q += exponent
    raise TableError(f"no prime q = 1 mod {exponent} with q^2 > 4*{order} below {PRIME_SEARCH_BOUND}")


def _primitive_root(q: int) -> int:
    phi = q - 1
    prime_factors = set()
    x = phi
    d = 2
    while d * d <= x:
        if x % d == 0:
            prime_factors.add(d)
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        prime_factors.add(x)
    for g in range(2, q):
        if all(pow(g, phi // f, q) != 1 for f in prime_factors):
            return g
    raise AssertionError("no primitive root found")


def dixon_table(g: GroupTable) -> CharacterTable:
    """Exact character table by class-sum matrix splitting over F_q."""
    guard = dixon_guard()
    if g.order > guard:
        raise pcgroup.OversizeGroupError(
            f"group of order {g.order} exceeds the class-sum guard {guard}")
    if g.order == 1:
        t = CharacterTable(g, [0], [1], [[rational(1)]])
        t.verify()
        return t
    e = g.exponent()
    q = _dixon_prime(e, g.order)
    classes = pcgroup.conjugacy_classes(g)
    reps = [rep for rep, _ in classes]
    sizes = [len(mem) for _, mem in classes]
    k = len(reps)
    cid, kreps = K.conjugacy_classes(g.table, g.inv)
    assert kreps == reps
    sc = K.structure_constants(g.table, g.inv, cid, reps)
    mats = [[[int(sc[i, j, l]) % q for l in range(k)] for j in range(k)] for i in range(k)]

    # split into common eigenspaces of the commuting class-sum matrices;
    # vectors v satisfy (M_i v)_j = sum_l a_{ijl} v_l = omega_i v_j
    spaces: list[list[list[int]]] = [[[1 if c == r else 0 for c in range(k)] for r in range(k)]]
    for i in range(k):
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            rb = _rref(basis, q)
            d = len(rb)
            pivots = [next(c for c in range(k) if row[c]) for row in rb]
            images = [_matvec(mats[i], b, q) for b in rb]
            a = [[img[pc] for pc in pivots] for img in images]
            for img, coeff in zip(images, a):
                recon = [sum(cf * rb[s][c] for s, cf in enumerate(coeff)) % q for c in range(k)]
                if recon != img:
                    raise TableError("class-sum matrix does not stabilize a split space")
            at = [[a[r][c] for r in range(d)] for c in range(d)]
            roots = _poly_roots(_charpoly_hessenberg(at, q), q)
            dims = 0
            for lam in sorted(roots):
                shifted = [[(at[r][c] - (lam if r == c else 0)) % q for c in range(d)]
                           for r in range(d)]
                ker = _nullspace(shifted, q)
                if not ker:
                    continue
                vecs = [[sum(cf * rb[s][c] for s, cf in enumerate(cv)) % q for c in range(k)]
                        for cv in ker]
                dims += len(vecs)
                new_spaces.append(vecs)
            if dims != d:
                raise TableError("class-sum matrix is not diagonalizable mod q")
        spaces = new_spaces
        if all(len(b) == 1 for b in spaces):
            break
    if len(spaces) != k or any(len(b) != 1 for b in spaces):
        raise TableError("class-sum splitting did not separate all characters")

    id_col = reps.index(0)
    size_inv = [pow(s, q - 2, q) for s in sizes]
    inv_class = [int(cid[g.inv[r]]) for r in reps]
    theta = pow(_primitive_root(q), (q - 1) // e, q)
    power_class = [[int(cid[g.power(rep, v)]) for v in range(g.element_order(rep))]
                   for rep in reps]

    chars: list[list[Cyclotomic]] = []
    for (vec,) in spaces:
        if vec[id_col] % q == 0:
            raise TableError("eigenvector vanishes on the identity class")
        norm = pow(vec[id_col], q - 2, q)
        omega = [(v * norm) % q for v in vec]
        s_val = sum(omega[l] * omega[inv_class[l]] * size_inv[l] for l in range(k)) % q
        if s_val == 0:
            raise TableError("degree equation degenerates")
        dsq = (g.order % q) * pow(s_val, q - 2, q) % q
        deg = next((x for x in range(1, math.isqrt(g.order) + 1) if x * x % q == dsq), None)
        if deg is None:
            raise TableError("no integral degree matches the eigenvector")
        fval = [(deg * omega[l] * size_inv[l]) % q for l in range(k)]
        row = []
        for l in range(k):
            o = g.element_order(reps[l])
            th = pow(theta, e // o, q)
            th_inv = pow(th, q - 2, q)
            oinv = pow(o % q, q - 2, q)
            val = Cyclotomic.zero(e)
            total = 0
            for u in range(o):
                acc = 0
                for v in range(o):
                    acc = (acc + fval[power_class[l][v]] * pow(th_inv, u * v, q)) % q
                mult = (acc * oinv) % q
                total += mult
                if mult:
                    val = val + mult * zeta(e, u * (e // o))
            if total != deg:
                raise TableError("eigenvalue multiplicities do not sum to the degree")
            row.append(val)
        chars.append(row)
    table = CharacterTable(g, reps, sizes, chars).sorted_rows()
    table.verify()
    return table


# -- defects and heights -----------------------------------------------------------


@dataclass
class DefectData:
    defects: list[int]
    heights: list[int]

    @property
    def k_by_defect(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.defects:
            out[d] = out.get(d, 0) + 1
        return out

    @property
    def k_by_height(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for h in self.heights:
            out[h] = out.get(h, 0) + 1
        return out


def defects_heights(t: CharacterTable, sylow_order: int) -> DefectData:
    order = t.group.order
    if sylow_order & (sylow_order - 1):
        raise ValueError(f"sylow_order must be a 2-power, got {sylow_order}")
    if order % sylow_order or (order // sylow_order) % 2 == 0:
        raise ValueError(f"sylow_order {sylow_order} must divide |G|={order} with odd cofactor")
    v2_g = nu2(Fraction(order))
    defects, heights = [], []
    for i in range(t.nchars):
        v2_deg = nu2(Fraction(t.degree(i)))
        defects.append(v2_g - v2_deg)
        heights.append(v2_deg)  # |G : P| odd, so the height is nu_2 of the degree
    return DefectData(defects, heights)
