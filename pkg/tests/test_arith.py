import pytest
from hypothesis import given, strategies as st

from oddshor.arith import (
    SquareDecomposition,
    crt_split,
    decompose_square,
    gcd,
    integer_sqrt,
    is_perfect_square,
    jacobi,
    lcm,
    mod_pow,
    two_adic_split,
)
from oddshor.errors import DomainError

from oracles import crt_reconstruct, jacobi_by_tables, naive_pow


@pytest.mark.parametrize("x, y, expected", [(9, 21, 3), (7, 21, 7), (0, 5, 5), (5, 0, 5), (0, 0, 0)])
def test_gcd(x, y, expected):
    assert gcd(x, y) == expected


@pytest.mark.parametrize("x, y, expected", [(2, 3, 6), (4, 6, 12), (0, 7, 0), (7, 0, 0)])
def test_lcm(x, y, expected):
    assert lcm(x, y) == expected


def test_lcm_of_component_orders_of_two_mod_21():
    # 2 has order 2 mod 3 and order 3 mod 7; its order mod 21 is 6.
    assert lcm(2, 3) == 6
    assert mod_pow(2, 6, 21) == 1 and mod_pow(2, 3, 21) != 1 and mod_pow(2, 2, 21) != 1


@pytest.mark.parametrize("b, e, n, expected", [(4, 3, 21, 1), (2, 6, 21, 1), (17, 0, 21, 1), (2, 3, 21, 8)])
def test_mod_pow(b, e, n, expected):
    assert mod_pow(b, e, n) == expected


def test_mod_pow_rejects_small_modulus():
    with pytest.raises(DomainError):
        mod_pow(3, 2, 1)


def test_mod_pow_matches_repeated_multiplication():
    for n in range(2, 10_001, 7):
        for x in (0, 1, 2, n - 1, n // 3 + 1):
            for e in range(51):
                assert mod_pow(x, e, n) == naive_pow(x, e, n)


@given(st.integers(2, 10_000), st.integers(0, 10**9), st.integers(0, 50))
def test_mod_pow_property(n, x, e):
    assert mod_pow(x, e, n) == naive_pow(x, e, n)


@pytest.mark.parametrize("x, expected", [(16, 4), (21, 4), (0, 0), (1, 1), (24, 4), (25, 5)])
def test_integer_sqrt(x, expected):
    assert integer_sqrt(x) == expected


def test_integer_sqrt_bracket_exhaustive():
    for x in range(10**6 + 1):
        r = integer_sqrt(x)
        assert r * r <= x < (r + 1) * (r + 1)


@pytest.mark.parametrize("x, expected", [(16, True), (21, False), (1, True), (0, True), (2, False)])
def test_is_perfect_square(x, expected):
    assert is_perfect_square(x) is expected


@pytest.mark.parametrize(
    "b, root, m",
    [(4, 2, 1), (16, 2, 2), (7, 7, 0), (27, 27, 0), (256, 2, 3), (36, 6, 1), (81, 3, 2)],
)
def test_decompose_square(b, root, m):
    assert decompose_square(b) == SquareDecomposition(b, root, m)


def test_decompose_square_rejects_small():
    for b in (0, 1):
        with pytest.raises(DomainError):
            decompose_square(b)


def test_decompose_square_exhaustive():
    for b in range(2, 10**5 + 1):
        d = decompose_square(b)
        assert d.root ** (2**d.exponent) == b
        assert not is_perfect_square(d.root)
        assert (d.exponent == 0) == (not is_perfect_square(b))


@pytest.mark.parametrize("t, split", [(6, (1, 3)), (3, (0, 3)), (8, (3, 1)), (1, (0, 1)), (96, (5, 3))])
def test_two_adic_split(t, split):
    assert two_adic_split(t) == split


def test_two_adic_split_rejects_zero():
    with pytest.raises(DomainError):
        two_adic_split(0)


@pytest.mark.parametrize("a, n, expected", [(4, 21, 1), (7, 21, 0), (2, 21, -1), (0, 3, 0), (1, 9, 1)])
def test_jacobi(a, n, expected):
    assert jacobi(a, n) == expected


@pytest.mark.parametrize("n", [1, 2, 4, 22])
def test_jacobi_rejects_bad_modulus(n):
    with pytest.raises(DomainError):
        jacobi(2, n)


def test_jacobi_matches_residue_tables():
    # Every odd n up to 1501 and every a; a stride of n up to 1e4.
    ns = list(range(3, 1502, 2)) + list(range(1503, 10_001, 76))
    for n in ns:
        for a in range(n):
            if gcd(a, n) == 1:
                assert jacobi(a, n) == jacobi_by_tables(a, n), (a, n)
            else:
                assert jacobi(a, n) == 0


@pytest.mark.parametrize("c, p1, p2, expected", [(16, 3, 7, (1, 2)), (1, 3, 7, (1, 1)), (20, 3, 7, (2, 6))])
def test_crt_split(c, p1, p2, expected):
    assert crt_split(c, p1, p2) == expected


def test_crt_split_round_trip():
    pairs = [(p1, p2) for p1 in (3, 5, 7, 11, 13) for p2 in (17, 19, 23, 29, 31, 37) if p1 * p2 <= 10**4]
    for p1, p2 in pairs:
        for c in range(p1 * p2):
            assert crt_reconstruct(*crt_split(c, p1, p2), p1, p2) == c
