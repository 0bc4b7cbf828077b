import pytest

from grasscode.field import GF, _is_irreducible, field_for_order, is_prime, make_field, parse_field_header

PRIME_POWERS_16 = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
PRIME_POWERS_256 = [
    q
    for q in range(2, 257)
    if any(q == p**e for p in range(2, 257) if is_prime(p) for e in range(1, 9))
]


def test_prime_field_modulus_is_x():
    assert make_field(2, 1).modulus == (0, 1)
    assert make_field(3, 1).modulus == (0, 1)


def test_gf4_modulus_matches_brute_force():
    # oracle: of the four monic quadratics over GF(2), keep those with no root
    # and no factorization into two monic linear terms
    candidates = []
    for c0 in range(2):
        for c1 in range(2):
            poly = (c0, c1, 1)
            has_root = any((c0 + c1 * x + x * x) % 2 == 0 for x in range(2))
            if not has_root:
                candidates.append(poly)
    assert candidates == [(1, 1, 1)]
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_moduli_are_irreducible_by_construction():
    for p, e in [(2, 3), (2, 4), (3, 2), (5, 2), (2, 8)]:
        f = make_field(p, e)
        assert _is_irreducible(list(f.modulus), p)
        assert f.modulus[-1] == 1


def test_arith_examples():
    f2, f3, f4 = make_field(2, 1), make_field(3, 1), make_field(2, 2)
    assert f2.add(1, 1) == 0
    # x * x reduced mod x^2+x+1 is x+1, encoding 3
    assert f4.mul(2, 2) == 3
    assert f3.inv(2) == 2
    assert f3.mul(2, f3.inv(2)) == 1
    assert f4.arith("sub", 0, 1) == f4.neg(1)


def test_inv_zero_raises():
    with pytest.raises(ZeroDivisionError):
        make_field(5, 1).inv(0)


def test_bad_field_parameters():
    with pytest.raises(ValueError):
        make_field(4, 1)
    with pytest.raises(ValueError):
        make_field(2, 17)
    with pytest.raises(ValueError):
        make_field(2, 0)
    with pytest.raises(ValueError):
        GF(2, 2, (1, 0, 1))  # x^2 + 1 = (x+1)^2 over GF(2)


def test_enumerate_elements():
    assert list(make_field(2, 1).elements()) == [0, 1]
    assert list(make_field(3, 1).elements()) == [0, 1, 2]
    f4 = make_field(2, 2)
    assert list(f4.elements()) == [0, 1, 2, 3]
    # 2 and 3 encode the two roots of x^2 + x + 1
    for a in (2, 3):
        assert f4.add(f4.mul(a, a), f4.add(a, 1)) == 0


@pytest.mark.parametrize("q", PRIME_POWERS_16)
def test_field_axioms_exhaustive(q):
    f = field_for_order(q)
    els = list(f.elements())
    for a in els:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert sum(1 for b in els if f.add(a, b) == 0) == 1
        if a:
            assert sum(1 for b in els if f.mul(a, b) == 1) == 1
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in els:
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("q", PRIME_POWERS_256)
def test_frobenius_fixed_points(q):
    f = field_for_order(q)
    for a in f.elements():
        assert f.pow(a, q) == a


@pytest.mark.parametrize("q", PRIME_POWERS_256)
def test_multiplicative_group_cyclic(q):
    f = field_for_order(q)
    g = f.multiplicative_generator()
    x, order = g, 1
    while x != 1:
        x = f.mul(x, g)
        order += 1
    assert order == q - 1


def test_pow_handles_negative_exponents():
    f = make_field(3, 2)
    for a in range(1, f.q):
        assert f.mul(f.pow(a, -1), a) == 1
        assert f.pow(a, 0) == 1


def test_header_roundtrip():
    for f in (make_field(2, 1), make_field(2, 2), make_field(3, 2)):
        assert parse_field_header(f.header()) == f


def test_field_for_order():
    assert field_for_order(8).p == 2 and field_for_order(8).e == 3
    assert field_for_order(9).p == 3
    with pytest.raises(ValueError):
        field_for_order(6)


def test_large_field_scalar_path():
    # beyond the table limit: on-the-fly polynomial arithmetic
    f = make_field(2, 10)
    assert f.q == 1024
    a, b = 513, 700
    assert f.mul(a, f.inv(a)) == 1
    assert f.add(a, b) == a ^ b
    assert f.pow(a, f.q) == a
