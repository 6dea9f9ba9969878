import math
import random
from fractions import Fraction

import pytest

from blocklab.cyclo import (
    CoeffColumns,
    Cyclotomic,
    galois_coeffs,
    galois_expand,
    hermitian_product,
    nu2,
    parity_check_height_zero,
    rational,
    valuation,
    zeta,
)


def test_basic_relations():
    assert zeta(4) * zeta(4) == rational(-1)
    assert zeta(3) ** 3 == rational(1)
    assert zeta(3) ** 2 + zeta(3) + 1 == rational(0)
    assert zeta(8) ** 4 == rational(-1)
    assert zeta(8) ** 2 == zeta(4)
    assert zeta(24) ** 8 == zeta(3)


def test_conjugate_and_galois():
    z = zeta(16)
    assert z * z.conjugate() == rational(1)
    assert z.galois(3) == z ** 3
    with pytest.raises(ValueError):
        z.galois(4)


def test_mixed_conductor_arithmetic():
    v = zeta(8) + zeta(3)
    assert v - zeta(3) == zeta(8)
    assert (zeta(3) * zeta(8)) == zeta(24, 8 + 3)  # zeta_24^8 * zeta_24^3


def test_integrality_flag():
    assert (zeta(8) + 1).is_integral()
    assert not (zeta(8) / 2).is_integral()


def test_unsupported_conductor_rejected():
    with pytest.raises(ValueError):
        zeta(5)
    with pytest.raises(ValueError):
        zeta(9)


# -- valuation ---------------------------------------------------------------


def test_valuation_of_two_is_one():
    assert valuation(rational(2)) == 1
    assert valuation(rational(Fraction(1, 2))) == -1
    assert valuation(rational(3)) == 0


def test_valuation_one_plus_i():
    # 2*nu(1+i) = nu((1+i)^2) = nu(2i) = 1
    assert valuation(rational(1) + zeta(4)) == Fraction(1, 2)


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_valuation_one_plus_zeta_2k(k):
    # oracle: Norm(1+zeta) = Phi_{2^k}(-1) = (-1)^{2^{k-1}} + 1 = 2,
    # so nu = nu2(2)/phi(2^k) = 2^{1-k}
    phi_at_minus_one = (-1) ** (2 ** (k - 1)) + 1
    expected = Fraction(nu2(Fraction(phi_at_minus_one)), 2 ** (k - 1))
    v = valuation(rational(1) + zeta(2 ** k))
    assert v == expected == Fraction(1, 2 ** (k - 1))
    assert 0 < v < 1


def test_valuation_zero_is_infinite():
    assert valuation(Cyclotomic.zero(8)) == math.inf


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_valuation_two_plus_cosine_term(m):
    # nu(2 + zeta^{j-k} + zeta^{k-j}) <= 1 for a primitive 2^m-th root, j != k
    half = 2 ** (m - 1)
    for j in range(half):
        for k in range(half):
            if j == k:
                continue
            v = rational(2) + zeta(2 ** m, j - k) + zeta(2 ** m, k - j)
            assert valuation(v) <= 1


def test_valuation_multiplicative_and_ultrametric():
    rng = random.Random(20240)
    values = []
    while len(values) < 60:
        k = rng.choice([2, 3, 4, 5])
        n = 2 ** k
        c = Cyclotomic(n, {rng.randrange(n): Fraction(rng.randint(-4, 4)) for _ in range(3)})
        if not c.is_zero():
            values.append(c)
    pairs = [(rng.choice(values), rng.choice(values)) for _ in range(1000)]
    for a, b in pairs:
        va, vb = valuation(a), valuation(b)
        assert valuation(a * b) == va + vb
        s = a + b
        if not s.is_zero():
            assert valuation(s) >= min(va, vb)


# -- coefficient columns -------------------------------------------------------


def test_sign_extension_convention():
    cols = CoeffColumns(8, [[1, 2, 0, -1]])
    assert cols.coeff(0, 1) == 2
    assert cols.coeff(0, 5) == -2
    assert cols.coeff(0, -1) == -cols.coeff(0, 3)


def test_galois_expand_identity_twist():
    cols = CoeffColumns(8, [[1, -2, 0, 3], [0, 1, 1, 0]])
    d = galois_expand(cols, 1)
    assert d[0] == rational(1) - 2 * zeta(8) + 3 * zeta(8, 3)
    assert d[1] == zeta(8) + zeta(8, 2)


def test_galois_expand_single_coefficient():
    # a_1 = e_1, gamma=3, k=3 -> column e_1 * zeta_8^3
    cols = CoeffColumns(8, [[0, 1, 0, 0]])
    d = galois_expand(cols, 3)
    assert d[0] == zeta(8, 3)


def test_galois_expand_rejects_even_twist():
    cols = CoeffColumns(4, [[1, 0]])
    with pytest.raises(ValueError):
        galois_expand(cols, 2)


def test_real_column_fixed_by_complex_conjugation():
    # a chosen so the expanded value is real: 2 - zeta_8 + zeta_8^3 has
    # conjugate 2 + zeta_8^{-1} - zeta_8^{-3} = 2 - zeta_8 + zeta_8^3
    cols = CoeffColumns(8, [[2, -1, 0, 1]])
    d1 = galois_expand(cols, 1)[0]
    dm1 = galois_expand(cols, -1)[0]
    assert d1 == dm1 == d1.conjugate()


def test_galois_roundtrip_random():
    rng = random.Random(7)
    for k in (2, 3, 4):
        order = 2 ** k
        rows = [[rng.randint(-5, 5) for _ in range(order // 2)] for _ in range(20)]
        cols = CoeffColumns(order, rows)
        family = {g: galois_expand(cols, g) for g in range(1, order, 2)}
        back = galois_coeffs(family, order)
        assert back == cols


def test_galois_coeffs_constant_family():
    # d(u^gamma) = d for an integral constant column: a_0 = d, a_s = 0 otherwise
    order = 8
    d = [rational(3), rational(-1), rational(0)]
    family = {g: list(d) for g in range(1, order, 2)}
    cols = galois_coeffs(family, order)
    assert cols.rows == [[3, 0, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0]]


def test_galois_coeffs_incomplete_transversal():
    order = 8
    cols = CoeffColumns(order, [[1, 0, 0, 0]])
    family = {1: galois_expand(cols, 1), 3: galois_expand(cols, 3)}
    with pytest.raises(ValueError):
        galois_coeffs(family, order)


def test_parity_check():
    cols = CoeffColumns(8, [[1, 0, 0, 0], [1, 1, 0, 0], [1, 2, 2, 4]])
    assert parity_check_height_zero(cols, 0) is True
    assert parity_check_height_zero(cols, 1) is False
    assert parity_check_height_zero(cols, 2) is True


def test_hermitian_product():
    u = [zeta(8), rational(1)]
    assert hermitian_product(u, u) == rational(2)
    v = [zeta(8, 3), rational(0)]
    assert hermitian_product(u, v) == zeta(8, -2 % 8)
