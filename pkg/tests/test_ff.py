"Tests for the `superelliptic.ff` module."

import itertools

import numpy as np
import pytest

from superelliptic.errors import FieldError, InvalidModel, WildCover
from superelliptic.ff import (FpPoly, PrimeModulus, check_tame, element_power, find_generator, is_irreducible,
                              make_extension, mth_root_count)

CONTEXTS = [(p, k) for p in (2, 3, 5, 7, 13, 17) for k in range(1, 7)]


def test_prime_modulus():
    assert PrimeModulus(13) == 13
    with pytest.raises(FieldError, match="not prime"):
        PrimeModulus(15)
    with pytest.raises(FieldError, match="outside the supported range"):
        PrimeModulus(2**20 + 7)


def test_fp_poly_normalizes():
    f = FpPoly(5, (-1, 0, 7, 0, 0))
    assert f.coeffs == (4, 0, 2)
    assert f.degree == 2
    assert FpPoly(5).degree == -1
    assert str(FpPoly(3, (1, 0, 1))) == "x^2 + 1"


def test_fp_poly_arithmetic():
    p = 7
    f = FpPoly(p, (1, 2, 3, 1))
    g = FpPoly(p, (5, 1))
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree
    assert f.derivative() == FpPoly(p, (2, 6, 3))
    assert f.compose_square() == FpPoly(p, (1, 0, 2, 0, 3, 0, 1))
    assert all(f.shift(3)(x) == f((x + 3) % p) for x in range(p))
    assert (f * g).gcd(g * g) == g.monic()


def test_is_irreducible():
    assert is_irreducible(FpPoly(3, (1, 0, 1)))
    assert not is_irreducible(FpPoly(2, (1, 0, 1)))
    assert is_irreducible(FpPoly(2, (1, 1, 1)))
    assert not is_irreducible(FpPoly(5, (6, 5, 1)))  # (x + 2)(x + 3)


def test_make_extension_examples():
    ctx = make_extension(2, 1)
    assert ctx.q == 2
    assert ctx.modulus.coeffs == (0, 1)
    assert make_extension(2, 2).modulus.coeffs == (1, 1, 1)
    ctx = make_extension(3, 2)
    assert ctx.modulus.coeffs == (1, 0, 1)
    assert ctx.q == 9


@pytest.mark.parametrize("p, k", [(2, 4), (3, 3), (5, 2), (7, 3), (17, 6)])
def test_make_extension_is_lexicographically_least(p, k):
    ctx = make_extension(p, k)
    assert is_irreducible(ctx.modulus)
    chosen = ctx.modulus.coeffs[:k]
    # every lexicographically smaller monic candidate is reducible (c_0 = 0 is divisible by x)
    first = range(1, p) if k > 1 else range(p)
    for low in itertools.product(first, *[range(p)] * (k - 1)):
        if low == chosen:
            break
        assert not is_irreducible(FpPoly(p, low + (1,)))


def test_make_extension_errors():
    with pytest.raises(FieldError):
        make_extension(5, 0)
    with pytest.raises(FieldError):
        make_extension(5, 13)
    with pytest.raises(FieldError):
        make_extension(9, 2)


def test_element_power_examples():
    f5 = make_extension(5, 1)
    assert element_power(f5.one, 10**9) == f5.one
    assert element_power(f5.embed(2), 4) == f5.one
    f4 = make_extension(2, 2)
    assert element_power(f4.x, 3) == f4.one
    assert element_power(f4.zero, 0) == f4.one
    assert element_power(f4.zero, 5) == f4.zero
    with pytest.raises(ValueError):
        element_power(f4.x, -1)


def test_mth_root_count_examples():
    f7 = make_extension(7, 1)
    assert mth_root_count(f7.zero, 3) == 1
    assert mth_root_count(f7.one, 3) == 3
    assert mth_root_count(f7.embed(3), 3) == 0
    with pytest.raises(WildCover):
        mth_root_count(f7.one, 14)


def test_find_generator_examples():
    assert find_generator(make_extension(2, 1)) == make_extension(2, 1).one
    assert find_generator(make_extension(5, 1)).index == 2
    assert find_generator(make_extension(7, 1)).index == 3


@pytest.mark.parametrize("p, k", [(2, 6), (3, 4), (13, 2), (17, 3)])
def test_generator_has_full_order(p, k):
    ctx = make_extension(p, k)
    g = ctx.generator
    assert element_power(g, ctx.q - 1) == ctx.one
    powers = set()
    x = ctx.one
    for _ in range(min(ctx.q - 1, 5000)):
        powers.add(x.index)
        x = x * g
    assert len(powers) == min(ctx.q - 1, 5000)


@pytest.mark.parametrize("p, k", CONTEXTS)
def test_field_axioms(p, k, rng):
    ctx = make_extension(p, k)
    for _ in range(10):
        a, b, c = (ctx.from_index(rng.randrange(ctx.q)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a + b) - b == a
        if not a.is_zero():
            assert a * a.inverse() == ctx.one
        # Frobenius is additive
        assert element_power(a + b, p) == element_power(a, p) + element_power(b, p)


@pytest.mark.parametrize("p, k", [(2, 4), (2, 6), (3, 3), (5, 2), (7, 2), (13, 1), (17, 2)])
def test_mth_root_count_matches_enumeration(p, k):
    ctx = make_extension(p, k)
    for m in (2, 3, 4, 5, 6):
        if m % p == 0:
            continue
        hist = {}
        for y in ctx.elements():
            key = element_power(y, m).index
            hist[key] = hist.get(key, 0) + 1
        total = 0
        for c in ctx.elements():
            n = mth_root_count(c, m)
            assert n == hist.get(c.index, 0)
            total += n
        assert total == ctx.q


@pytest.mark.parametrize("p, k", [(2, 5), (3, 3), (7, 2), (17, 2)])
def test_vectorized_kernels_match_scalar(p, k, rng):
    ctx = make_extension(p, k)
    idx_a = [rng.randrange(ctx.q) for _ in range(50)]
    idx_b = [rng.randrange(ctx.q) for _ in range(50)]
    prod = ctx.pack(ctx.vmul(ctx.unpack(idx_a), ctx.unpack(idx_b)))
    cubes = ctx.pack(ctx.vpow(ctx.unpack(idx_a), 3))
    for i, (a, b) in enumerate(zip(idx_a, idx_b)):
        x, y = ctx.from_index(a), ctx.from_index(b)
        assert prod[i] == (x * y).index
        assert cubes[i] == (x ** 3).index

    f = FpPoly(p, (3, 0, 1, 2, 1))
    values = ctx.pack(ctx.veval(f, ctx.unpack(idx_a)))
    for i, a in enumerate(idx_a):
        x = ctx.from_index(a)
        expected = ctx.zero
        for c in reversed(f.coeffs):
            expected = expected * x + c
        assert values[i] == expected.index


@pytest.mark.parametrize("p, k", [(2, 1), (3, 2), (5, 3), (2, 8)])
def test_log_table(p, k):
    ctx = make_extension(p, k)
    log = ctx.log_table
    assert log[0] == -1
    assert sorted(log[1:].tolist()) == list(range(ctx.q - 1))
    for i in range(1, ctx.q, max(1, ctx.q // 50)):
        assert element_power(ctx.generator, int(log[i])).index == i


def test_embedding_commutes_with_evaluation():
    p = 5
    f = FpPoly(p, (1, 4, 0, 2))
    for k in (2, 3):
        ctx = make_extension(p, k)
        xs = ctx.unpack(np.array([ctx.embed(x).index for x in range(p)]))
        values = ctx.pack(ctx.veval(f, xs))
        assert values.tolist() == [ctx.embed(f(x)).index for x in range(p)]


def test_mixed_fields_rejected():
    with pytest.raises(FieldError):
        make_extension(3, 2).one + make_extension(3, 3).one


def test_check_tame():
    check_tame(2, 3)
    with pytest.raises(InvalidModel):
        check_tame(1, 5)
    with pytest.raises(WildCover):
        check_tame(10, 5)
