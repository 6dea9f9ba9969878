"""Exact cyclotomic arithmetic: Galois action, 2-adic valuation, coefficient columns.

Values live in Q(zeta_N) for conductors N = 2^a * 3^b (b <= 1), which covers
every exponent occurring in the group family and its witness groups.  Elements
are stored over the tensor basis obtained by eliminating zeta_{2^a}^{2^{a-1}}
= -1 on the 2-part and zeta_3^2 = -1 - zeta_3 on the 3-part, so equality is a
dictionary comparison and "is an integer" is decidable coefficient-wise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "Cyclotomic",
    "CoeffColumns",
    "zeta",
    "rational",
    "valuation",
    "galois_expand",
    "galois_coeffs",
    "parity_check_height_zero",
    "hermitian_product",
    "nu2",
]

INFINITE = math.inf


def _split_conductor(n: int) -> tuple[int, int]:
    """Return (2-part, 3-part) of n, rejecting unsupported conductors."""
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    two = 1
    while n % 2 == 0:
        n //= 2
        two *= 2
    three = 1
    if n % 3 == 0:
        n //= 3
        three = 3
    if n != 1:
        raise ValueError(
            f"unsupported conductor: only 2^a * 3^b (b<=1) conductors are handled, "
            f"leftover factor {n}"
        )
    return two, three


def _crt(r2: int, r3: int, two: int, three: int) -> int:
    if three == 1:
        return r2
    if two == 1:
        return r3
    for t in range(3):
        e = r2 + two * t
        if e % 3 == r3:
            return e
    raise AssertionError("CRT failure")


# per conductor: exponent e -> tuple of (basis exponent, sign) rewriting zeta^e
_RED_CACHE: dict[int, list[tuple[tuple[int, int], ...]]] = {}


def _reduction_table(n: int) -> list[tuple[tuple[int, int], ...]]:
    tab = _RED_CACHE.get(n)
    if tab is None:
        two, three = _split_conductor(n)
        tab = []
        for e in range(n):
            r2, r3 = e % two, e % three
            sign = 1
            if two > 1 and r2 >= two // 2:
                r2 -= two // 2
                sign = -sign
            if three == 3 and r3 == 2:
                # zeta_3^2 = -(1 + zeta_3)
                tab.append(tuple((_crt(r2, r3b, two, three), -sign) for r3b in (0, 1)))
            else:
                tab.append(((_crt(r2, r3, two, three), sign),))
        _RED_CACHE[n] = tab
    return tab


def basis_exponents(n: int) -> list[int]:
    """Canonical basis exponents of the reduced representation, sorted."""
    red = _reduction_table(n)
    return sorted({e for pairs in red for e, _ in pairs}) if n > 1 else [0]


def _norm_coeff(c):
    """Keep exact coefficients as ints whenever possible (fast path)."""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class Cyclotomic:
    """An exact element of Q(zeta_N), N = 2^a * 3^b.

    Coefficients are ints when integral, Fractions otherwise.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]]):
        self.n = n
        red = _reduction_table(n)
        out: dict[int, object] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for e, c in items:
            c = _norm_coeff(c)
            for eb, sg in red[e % n]:
                out[eb] = out.get(eb, 0) + (c if sg > 0 else -c)
        self.coeffs = {e: c for e, c in out.items() if c}

    @classmethod
    def _raw(cls, n: int, canonical: dict) -> "Cyclotomic":
        """Internal: build from already-canonical exponents."""
        self = object.__new__(cls)
        self.n = n
        self.coeffs = {e: c for e, c in canonical.items() if c}
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int = 1) -> "Cyclotomic":
        return cls(n, {})

    @classmethod
    def from_rational(cls, q, n: int = 1) -> "Cyclotomic":
        _split_conductor(n)
        return cls._raw(n, {0: _norm_coeff(q)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return all(e == 0 for e in self.coeffs)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.coeffs.get(0, 0))

    def is_integral(self) -> bool:
        """True iff the value lies in Z[zeta_N] (integer basis coefficients)."""
        return all(isinstance(c, int) for c in self.coeffs.values())

    def promote(self, n: int) -> "Cyclotomic":
        if n == self.n:
            return self
        if n % self.n != 0:
            raise ValueError(f"cannot promote conductor {self.n} to {n}")
        scale = n // self.n
        return Cyclotomic(n, {e * scale: c for e, c in self.coeffs.items()})

    def shrink(self) -> "Cyclotomic":
        """Rewrite over the smallest conductor containing the value."""
        c = self
        changed = True
        while changed:
            changed = False
            for p in (2, 3):
                if c.n % p == 0 and all(e % p == 0 for e in c.coeffs):
                    c = Cyclotomic(c.n // p, {e // p: v for e, v in c.coeffs.items()})
                    changed = True
        return c

    def sort_key(self):
        return tuple(sorted((e, Fraction(c).numerator, Fraction(c).denominator)
                            for e, c in self.coeffs.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = _common(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        s = self.shrink()
        return hash((s.n, tuple(sorted(s.coeffs.items()))))

    def __repr__(self):
        if self.is_zero():
            return "Cyc(0)"
        parts = []
        for e, c in sorted(self.coeffs.items()):
            if e == 0:
                parts.append(f"{c}")
            else:
                parts.append(f"{c}*z{self.n}^{e}")
        return "Cyc(" + " + ".join(parts) + ")"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = _common(self, other)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            out[e] = out.get(e, 0) + c
        return Cyclotomic._raw(a.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.n, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = _common(self, other)
        n = a.n
        red = _reduction_table(n)
        out: dict[int, object] = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                c = c1 * c2
                for eb, sg in red[(e1 + e2) % n]:
                    out[eb] = out.get(eb, 0) + (c if sg > 0 else -c)
        return Cyclotomic._raw(n, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1, 1) / Fraction(other)
            return Cyclotomic._raw(self.n,
                                   {e: _norm_coeff(c * inv) for e, c in self.coeffs.items()})
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclotomic.from_rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        red = _reduction_table(self.n)
        out: dict[int, object] = {}
        for e, c in self.coeffs.items():
            for eb, sg in red[-e % self.n]:
                out[eb] = out.get(eb, 0) + (c if sg > 0 else -c)
        return Cyclotomic._raw(self.n, out)

    def galois(self, t: int) -> "Cyclotomic":
        """Apply zeta -> zeta^t; t must be coprime to the conductor."""
        if math.gcd(t, self.n) != 1:
            raise ValueError(f"{t} is not coprime to conductor {self.n}")
        return Cyclotomic(self.n, {(e * t) % self.n: c for e, c in self.coeffs.items()})


def _coerce(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.from_rational(x)
    return NotImplemented


def _common(a: Cyclotomic, b: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
    if a.n == b.n:
        return a, b
    n = math.lcm(a.n, b.n)
    return a.promote(n), b.promote(n)


def zeta(n: int, e: int = 1) -> Cyclotomic:
    """The root of unity zeta_n^e."""
    return Cyclotomic(n, {e: Fraction(1)})


def rational(q) -> Cyclotomic:
    return Cyclotomic.from_rational(q)


def nu2(q: Fraction) -> int:
    """2-adic valuation of a nonzero rational."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("nu2(0) is infinite")
    v = 0
    num, den = q.numerator, q.denominator
    while num % 2 == 0:
        num //= 2
        v += 1
    while den % 2 == 0:
        den //= 2
        v -= 1
    return v


def valuation(c: Cyclotomic):
    """The 2-adic valuation nu with nu(2) = 1, for 2-power-conductor values.

    nu(c) = nu_2(Norm(c)) / phi(2^a), with the norm taken as the exact product
    of all Galois conjugates.  Returns math.inf for the zero element.
    """
    if c.is_zero():
        return INFINITE
    c = c.shrink()
    two, three = _split_conductor(c.n)
    if three != 1:
        raise ValueError(f"valuation requires a 2-power conductor, got {c.n}")
    if two <= 2:
        return Fraction(nu2(c.rational_value()))
    phi = two // 2
    norm = Cyclotomic.from_rational(1, two)
    for t in range(1, two, 2):
        norm = norm * c.galois(t)
    return Fraction(nu2(norm.rational_value()), phi)


# -- integer coefficient columns for generalized decomposition numbers -----


class CoeffColumns:
    """Integer coefficient columns a_i, i in [0, 2^{k-1}), of d(u) for |u| = 2^k.

    The stored half determines the rest through a_{i+2^{k-1}} = -a_i.
    Rows are indexed by characters.
    """

    def __init__(self, order: int, rows: list[list[int]]):
        if order < 2 or order & (order - 1):
            raise ValueError(f"order must be a 2-power >= 2, got {order}")
        width = order // 2
        for r in rows:
            if len(r) != width:
                raise ValueError(f"rows must have {width} columns, got {len(r)}")
        self.order = order
        self.rows = [list(map(int, r)) for r in rows]

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def coeff(self, row: int, i: int) -> int:
        """a_i(chi) with the sign convention extended to all integers i."""
        half = self.order // 2
        i %= self.order
        if i < half:
            return self.rows[row][i]
        return -self.rows[row][i - half]

    def column(self, i: int) -> list[int]:
        return [self.coeff(r, i) for r in range(self.nrows)]

    def __eq__(self, other):
        return (
            isinstance(other, CoeffColumns)
            and self.order == other.order
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"CoeffColumns(order={self.order}, rows={self.rows!r})"


def galois_expand(cols: CoeffColumns, gamma: int) -> list[Cyclotomic]:
    """Reconstruct the column d(u^gamma) = sum_s a_s zeta_{2^k}^{s*gamma}."""
    if gamma % 2 == 0:
        raise ValueError(f"gamma must be odd (a Galois twist), got {gamma}")
    n = cols.order
    out = []
    for row in cols.rows:
        out.append(Cyclotomic(n, {(s * gamma) % n: Fraction(c) for s, c in enumerate(row) if c}))
    return out


def galois_coeffs(columns: Mapping[int, list[Cyclotomic]], order: int) -> CoeffColumns:
    """Invert galois_expand: a_s = 2^{1-k} sum_gamma d(u^gamma) zeta^{-gamma*s}.

    `columns` must be indexed by a full transversal of odd residues mod 2^k
    (the Galois group of Q(zeta_{2^k})/Q).
    """
    if order < 2 or order & (order - 1):
        raise ValueError(f"order must be a 2-power >= 2, got {order}")
    half = order // 2
    keyed = {g % order: col for g, col in columns.items()}
    expected = set(range(1, order, 2))
    if set(keyed) != expected:
        raise ValueError(
            f"incomplete Galois transversal: need all odd residues mod {order}, got {sorted(keyed)}"
        )
    nrows = {len(col) for col in keyed.values()}
    if len(nrows) != 1:
        raise ValueError("columns have inconsistent lengths")
    (k_rows,) = nrows
    scale = Fraction(1, half)
    rows = [[0] * half for _ in range(k_rows)]
    for s in range(half):
        acc = [Cyclotomic.zero(order) for _ in range(k_rows)]
        for g, col in keyed.items():
            tw = zeta(order, (-g * s) % order)
            for r in range(k_rows):
                acc[r] = acc[r] + col[r].promote(math.lcm(col[r].n, order)) * tw
        for r in range(k_rows):
            v = acc[r] * scale
            if not v.is_rational():
                raise ValueError(f"column family is not a Galois orbit (a_{s} not rational)")
            q = v.rational_value()
            if q.denominator != 1:
                raise ValueError(f"column family gives non-integer coefficient a_{s} = {q}")
            rows[r][s] = q.numerator
    return CoeffColumns(order, rows)


def parity_check_height_zero(cols: CoeffColumns, row: int) -> bool:
    """True iff sum_i a_i(chi) over the stored half-range is odd."""
    return sum(cols.rows[row]) % 2 == 1


def hermitian_product(u: list[Cyclotomic], v: list[Cyclotomic]) -> Cyclotomic:
    """Sum_i u_i * conj(v_i)."""
    if len(u) != len(v):
        raise ValueError("length mismatch")
    acc = Cyclotomic.zero(1)
    for a, b in zip(u, v):
        b = b if isinstance(b, Cyclotomic) else Cyclotomic.from_rational(b)
        a = a if isinstance(a, Cyclotomic) else Cyclotomic.from_rational(a)
        acc = acc + a * b.conjugate()
    return acc


def to_json(c: Cyclotomic) -> dict:
    return {"N": c.n, "coeffs": {str(e): [q.numerator, q.denominator]
                                 for e, q in sorted(c.coeffs.items())}}


def from_json(obj: dict) -> Cyclotomic:
    return Cyclotomic(obj["N"], {int(e): Fraction(num, den)
                                 for e, (num, den) in obj["coeffs"].items()})
