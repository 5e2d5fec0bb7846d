import random

import numpy as np
import pytest

from conicac.gf import FieldCtx, FieldError, factor_prime_power, field_new

PRIME_POWERS_64 = [q for q in range(2, 65) if factor_prime_power(q)]


def oracle_mul(ctx, a, b):
    """Independent check: schoolbook polynomial product reduced by long
    division against the context modulus."""
    p = ctx.p
    if ctx.m == 1:
        return (a * b) % p

    def digits(x):
        out = []
        while x:
            out.append(x % p)
            x //= p
        return out

    da, db = digits(a), digits(b)
    prod = [0] * (len(da) + len(db) or 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = ctx.modulus
    deg = len(mod) - 1
    while len(prod) > deg:
        lead = prod[-1]
        if lead:
            shift = len(prod) - 1 - deg
            for i, c in enumerate(mod):
                prod[shift + i] = (prod[shift + i] - lead * c) % p
        prod.pop()
    code = 0
    for c in reversed(prod):
        code = code * p + c
    return code


def test_minimal_modulus_gf8():
    # degree-3 monic polys over F_2 ordered by coefficient integer:
    # x^3+x+1 (11) precedes x^3+x^2+1 (13)
    assert field_new(2, 3).modulus == [1, 1, 0, 1]


def test_minimal_modulus_gf9():
    # x^2+1 has no root in F_3: 0^2+1=1, 1^2+1=2, 2^2+1=2
    assert field_new(3, 2).modulus == [1, 0, 1]


def test_prime_field_has_no_modulus():
    assert field_new(5, 1).modulus is None


def test_construction_errors():
    with pytest.raises(FieldError):
        FieldCtx(4, 1)
    with pytest.raises(FieldError):
        FieldCtx(2, 0)
    with pytest.raises(FieldError):
        FieldCtx(2, 64)


def test_gf8_mul_examples():
    f = field_new(2, 3)
    assert f.mul(2, 2) == 4          # x * x = x^2
    assert f.mul(2, 4) == 3          # x * x^2 = x^3 = x + 1
    assert all(f.add(a, 0) == a for a in range(8))


def test_inv_zero_rejected():
    for f in (field_new(7, 1), field_new(2, 3)):
        with pytest.raises(FieldError):
            f.inv(0)


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (2, 4), (5, 2), (3, 3)])
def test_mul_matches_long_division_oracle(p, m):
    f = field_new(p, m)
    rng = random.Random(p * 100 + m)
    for _ in range(300):
        a, b = rng.randrange(f.q), rng.randrange(f.q)
        assert f.mul(a, b) == oracle_mul(f, a, b)


def _tables(f):
    q = f.q
    add = np.array([[f.add(a, b) for b in range(q)] for a in range(q)])
    mul = np.array([[f.mul(a, b) for b in range(q)] for a in range(q)])
    return add, mul


@pytest.mark.parametrize("q", PRIME_POWERS_64)
def test_field_axioms(q):
    f = field_new(*factor_prime_power(q))
    add, mul = _tables(f)
    # commutativity and associativity, exhaustive
    assert np.array_equal(add, add.T) and np.array_equal(mul, mul.T)
    for t in (add, mul):
        assert np.array_equal(t[t], t[:, t])  # t[t[a,b],c] == t[a,t[b,c]]
    # distributivity on random triples
    rng = random.Random(q)
    for _ in range(1000):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    # inverses
    for a in range(1, q):
        assert f.mul(a, f.inv(a)) == 1


@pytest.mark.parametrize("q", PRIME_POWERS_64)
def test_frobenius_and_order(q):
    f = field_new(*factor_prime_power(q))
    for a in range(q):
        for b in range(q):
            assert f.pow(f.add(a, b), f.p) == f.add(f.pow(a, f.p), f.pow(b, f.p))
    for a in range(1, q):
        assert f.pow(a, q - 1) == 1


def test_multiplicative_group_cyclic_small():
    for q in (4, 8, 9, 16, 25, 27):
        f = field_new(*factor_prime_power(q))
        orders = set()
        for a in range(1, q):
            o = 1
            x = a
            while x != 1:
                x = f.mul(x, a)
                o += 1
            orders.add(o)
        assert q - 1 in orders  # a generator exists
        assert all((q - 1) % o == 0 for o in orders)


def test_factor_prime_power():
    assert factor_prime_power(139129) == (373, 2)
    assert factor_prime_power(128) == (2, 7)
    assert factor_prime_power(100) is None
    assert factor_prime_power(97) == (97, 1)
