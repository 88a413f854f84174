"Tests for the `superelliptic.count` module."

import pytest
from sympy import primerange

from superelliptic import config
from superelliptic.count import (chunk_ranges, count_affine, count_affine_bruteforce, count_points,
                                 count_sequence, infinity_count, m8_hyperelliptic_locus_count,
                                 m8_quartic_locus_count, resolve_strategy, weil_bound_holds)
from superelliptic.curves import catalog_entry, make_curve
from superelliptic.errors import BudgetExceeded, WildCover
from superelliptic.ff import FpPoly, FqContext, make_extension

SMALL_FIELDS = [(p, k) for p in (2, 3, 5, 7, 11, 13) for k in range(1, 5) if p ** k <= 4096]

SMALL_CURVES = [
    (3, (0, -1, 0, 0, 1)),
    (2, (0, 1, 0, 9, 0, 6, 0, 1)),
    (5, (0, 1, 3, -24, 1)),
    (4, (1, 0, 0, 0, 1)),
    (6, (2, 1, 0, 1)),
]


def naive_affine(m, coeffs, ctx):
    """Scalar double loop over F_q x F_q."""
    elements = list(ctx.elements())
    powers = [y ** m for y in elements]
    total = 0
    for x in elements:
        value = ctx.zero
        for c in reversed(coeffs):
            value = value * x + ctx.embed(c)
        total += sum(1 for yy in powers if yy == value)
    return total


def test_count_affine_examples():
    assert count_affine(3, FpPoly(2, (0, 1, 0, 0, 1)), make_extension(2, 1)) == 2
    assert count_affine(2, FpPoly(3, (0, 1, 0, 1)), make_extension(3, 1)) == 3
    assert count_affine(5, FpPoly(2, (1, 1, 0, 1)), make_extension(2, 1)) == 2


def test_count_affine_wild():
    with pytest.raises(WildCover):
        count_affine(3, FpPoly(3, (1, 1)), make_extension(3, 1))


def test_count_points_examples():
    m6 = catalog_entry("M6").curve_for(2)
    assert count_points(m6, 1) == 3
    assert count_points(make_curve(3, 2, [0, 1, 0, 1]), 1) == 4


def test_two_points_at_infinity():
    curve = make_curve(3, 2, [1, 0, 0, 0, 1])
    assert curve.delta == 2
    assert infinity_count(curve, make_extension(3, 1)) == 2
    assert count_points(curve, 1) == 4


def test_m6_sequence_over_f2():
    # x^4 = x on F_4, so every x there gives the single point y = 0
    counts = count_sequence(catalog_entry("M6").curve_for(2), 3)
    assert counts.counts == (3, 5, 9)
    assert len(counts) == 3


def test_m16_sequence_over_f2():
    curve = catalog_entry("M16").curve_for(2)
    counts = count_sequence(curve)
    assert len(counts) == 6
    for k, n in enumerate(counts.counts, start=1):
        assert (n - 2 ** k - 1) ** 2 <= 144 * 2 ** k


def test_sequence_of_one():
    curve = make_curve(7, 3, [0, -1, 0, 0, 1])
    assert count_sequence(curve, 1).counts == (count_points(curve, 1),)
    with pytest.raises(ValueError):
        count_sequence(curve, 7)


def test_budget():
    curve = catalog_entry("M16").curve_for(17)
    with pytest.raises(BudgetExceeded) as err:
        count_points(curve, 3, budget=1000)
    assert err.value.q == 17 ** 3
    with pytest.raises(BudgetExceeded):
        count_sequence(curve, budget=10**6)


def test_weil_bound_holds():
    assert weil_bound_holds(4, 3, 1)
    assert weil_bound_holds(7, 3, 1)
    assert not weil_bound_holds(0, 3, 1)
    assert not weil_bound_holds(9, 3, 1)


def test_resolve_strategy():
    assert resolve_strategy(make_extension(5, 2)) == "table"
    assert resolve_strategy(make_extension(5, 2), "power") == "power"
    with pytest.raises(ValueError):
        resolve_strategy(make_extension(5, 2), "sieve")


def test_chunk_ranges():
    assert chunk_ranges(10, 4) == [(0, 4), (4, 8), (8, 10)]
    assert chunk_ranges(3, 4) == [(0, 3)]


@pytest.mark.parametrize("p, k", [(p, k) for p, k in SMALL_FIELDS if p ** k <= 64])
def test_vectorized_matches_naive(p, k):
    ctx = make_extension(p, k)
    for m, coeffs in SMALL_CURVES:
        if m % p == 0:
            continue
        assert count_affine(m, FpPoly(p, coeffs), ctx) == naive_affine(m, coeffs, ctx)


@pytest.mark.parametrize("p, k", SMALL_FIELDS)
def test_strategies_match_oracle(p, k):
    ctx = make_extension(p, k)
    for m, coeffs in SMALL_CURVES:
        if m % p == 0:
            continue
        g_poly = FpPoly(p, coeffs)
        expected = count_affine_bruteforce(m, g_poly, ctx)
        assert count_affine(m, g_poly, ctx, strategy="table") == expected
        assert count_affine(m, g_poly, ctx, strategy="power") == expected


def test_avoid_matches_oracle():
    ctx = make_extension(7, 2)
    g_poly, avoid = FpPoly(7, (0, 1, 0, 1)), FpPoly(7, (1, 0, 1))
    expected = count_affine_bruteforce(4, g_poly, ctx, avoid=avoid)
    assert count_affine(4, g_poly, ctx, avoid=avoid) == expected
    assert count_affine(4, g_poly, ctx, avoid=avoid, strategy="power") == expected


def test_oracle_budget():
    with pytest.raises(BudgetExceeded):
        count_affine_bruteforce(2, FpPoly(5, (1, 1)), make_extension(5, 6))


def test_chunked_pool_matches_serial(monkeypatch):
    ctx = make_extension(3, 5)
    g_poly = FpPoly(3, (0, 1, 0, 0, 2, 1))
    serial = count_affine(4, g_poly, ctx)
    monkeypatch.setattr(config, "CHUNK_SIZE", 50)
    assert len(chunk_ranges(ctx.q)) > 1
    assert count_affine(4, g_poly, ctx) == serial
    assert count_affine(4, g_poly, ctx, workers=2) == serial


def test_m8_bijection():
    entry = catalog_entry("M8")
    cubics = [entry.f_integer] + [c for _, c in entry.exceptional_primes]
    for p in primerange(3, 200):
        k = 1
        while p ** k <= 400:
            ctx = make_extension(p, k)
            for cubic in cubics:
                f3 = FpPoly(p, cubic)
                assert m8_quartic_locus_count(f3, ctx) == m8_hyperelliptic_locus_count(f3, ctx)
            k += 1


@pytest.mark.parametrize("p, k", [(3, 1), (5, 2), (2, 4)])
def test_oracle_uses_no_vector_kernels(p, k, monkeypatch):
    ctx = make_extension(p, k)
    m = 2 if p == 3 else 3
    g_poly = FpPoly(p, (1, 1, 0, 1))
    expected = count_affine(m, g_poly, ctx, strategy="power")

    def unavailable(*args):
        raise AssertionError("vector kernel called")

    for name in ("unpack", "pack", "vmul", "vpow", "veval"):
        monkeypatch.setattr(FqContext, name, unavailable)
    assert count_affine_bruteforce(m, g_poly, ctx) == expected
