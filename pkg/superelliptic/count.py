"""Point counting on y^m = f(x) over F_{p^k}.

The affine count is sum over x of #{y : y^m = f(x)}. F_q is walked in
contiguous index chunks; each chunk is evaluated with numpy and its
m'-th power residues classified either by one exponentiation per x
("power") or by a discrete-log table ("table"). Chunks are independent, so
they can be farmed out to a process pool and summed.
"""
import logging
import multiprocessing
from collections import Counter
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import config
from .errors import BudgetExceeded, WeilViolation
from .ff import FpPoly, check_tame, make_extension, mth_root_count

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointCounts:
    curve: object
    counts: tuple

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, i):
        return self.counts[i]


def check_budget(q, budget=None):
    budget = config.ENUMERATION_BUDGET if budget is None else budget
    if q > budget:
        raise BudgetExceeded(q, budget)


def resolve_strategy(ctx, strategy="auto"):
    if strategy == "auto":
        return "table" if ctx.q <= config.TABLE_LIMIT else "power"
    if strategy not in ("table", "power"):
        raise ValueError(f"unknown residue strategy {strategy!r}")
    return strategy


def _count_range(ctx, m, poly, avoid, start, stop, strategy):
    xs = ctx.unpack(np.arange(start, stop, dtype=np.int64))
    values = ctx.veval(poly, xs)
    keep = np.ones(stop - start, dtype=bool)
    if avoid is not None:
        keep = ctx.veval(avoid, xs).any(axis=0)

    zero = ~values.any(axis=0)
    mp = gcd(m, ctx.q - 1)
    if mp == 1:
        residue = ~zero
    elif strategy == "table":
        logs = ctx.log_table[ctx.pack(values)]
        residue = (logs % mp == 0) & ~zero
    else:
        powered = ctx.vpow(values, (ctx.q - 1) // mp)
        residue = (powered[0] == 1) & ~powered[1:].any(axis=0)
    return int((zero & keep).sum()) + mp * int((residue & keep).sum())


def _count_range_task(args):
    p, k, m, coeffs, avoid_coeffs, start, stop, strategy = args
    ctx = make_extension(p, k)
    avoid = FpPoly(p, avoid_coeffs) if avoid_coeffs is not None else None
    return _count_range(ctx, m, FpPoly(p, coeffs), avoid, start, stop, strategy)


def chunk_ranges(q, chunk=None):
    chunk = chunk or config.CHUNK_SIZE
    return [(start, min(start + chunk, q)) for start in range(0, q, chunk)]


def count_affine(m, g_poly, ctx, avoid=None, strategy="auto", workers=1, budget=None):
    """#{(x, y) in F_q^2 : y^m = g_poly(x)}, optionally only over x with avoid(x) != 0.

    g_poly need not be separable.
    """
    check_tame(m, ctx.p)
    check_budget(ctx.q, budget)
    g_poly = FpPoly(ctx.p, g_poly.coeffs)
    q = ctx.q
    if avoid is None and gcd(m, q - 1) == 1:
        # y -> y^m is a bijection of F_q: one point per x
        return q
    strategy = resolve_strategy(ctx, strategy)
    ranges = chunk_ranges(q)
    if workers > 1 and len(ranges) > 1:
        avoid_coeffs = avoid.coeffs if avoid is not None else None
        tasks = [(ctx.p, ctx.k, m, g_poly.coeffs, avoid_coeffs, a, b, strategy) for a, b in ranges]
        with multiprocessing.Pool(workers) as pool:
            return sum(pool.map(_count_range_task, tasks))
    return sum(_count_range(ctx, m, g_poly, avoid, a, b, strategy) for a, b in ranges)


def _scalar_eval(poly, x):
    acc = x.ctx.zero
    for c in reversed(poly.coeffs):
        acc = acc * x + c
    return acc


def count_affine_bruteforce(m, g_poly, ctx, avoid=None):
    """Oracle: join a histogram of y^m against g_poly(x), all in scalar arithmetic.

    Shares no code with the numpy kernels.
    """
    check_tame(m, ctx.p)
    check_budget(ctx.q, config.ORACLE_LIMIT)
    g_poly = FpPoly(ctx.p, g_poly.coeffs)
    if ctx.k == 1:
        p = ctx.p
        powers = Counter(pow(y, m, p) for y in range(p))
        return sum(powers[g_poly(x)] for x in range(p) if avoid is None or avoid(x))
    powers = Counter((y ** m).index for y in ctx.elements())
    total = 0
    for x in ctx.elements():
        if avoid is not None and _scalar_eval(avoid, x).is_zero():
            continue
        total += powers[_scalar_eval(g_poly, x).index]
    return total


def infinity_count(curve, ctx):
    if curve.delta == 1:
        return 1
    return mth_root_count(ctx.embed(curve.f.lc), curve.m)


def count_points(curve, k, strategy="auto", workers=1, budget=None):
    """N_k = #C(F_{p^k}) for the smooth model of ``curve``."""
    ctx = make_extension(curve.p, k)
    check_budget(ctx.q, budget)
    affine = count_affine(curve.m, curve.f, ctx, strategy=strategy, workers=workers, budget=budget)
    return affine + infinity_count(curve, ctx)


def weil_bound_holds(n, q, g):
    # |N - (q + 1)| <= 2 g sqrt(q), squared
    return (n - q - 1) ** 2 <= 4 * g * g * q


def count_sequence(curve, r=None, strategy="auto", workers=1, budget=None):
    """(N_1, ..., N_r), r defaulting to the genus."""
    g = curve.g
    r = g if r is None else r
    if not 1 <= r <= 2 * g:
        raise ValueError(f"r = {r} outside [1, 2g = {2 * g}]")
    check_budget(curve.p ** r, budget)
    counts = []
    for k in range(1, r + 1):
        n = count_points(curve, k, strategy=strategy, workers=workers, budget=budget)
        logger.debug(f"{curve}: N_{k} = {n}")
        if not weil_bound_holds(n, curve.p ** k, g):
            raise WeilViolation(f"N_{k} = {n} breaks the Weil bound for {curve}")
        counts.append(n)
    return PointCounts(curve, tuple(counts))


# --- M(8) BIJECTION ---

def m8_quartic_locus_count(f3, ctx):
    """#{(u, y) : y^4 = u f3(u)^2, f3(u) != 0}."""
    p = ctx.p
    f3 = FpPoly(p, f3.coeffs)
    u = FpPoly(p, (0, 1))
    return count_affine(4, u * f3 * f3, ctx, avoid=f3)


def m8_hyperelliptic_locus_count(f3, ctx):
    """#{(x, y) : y^2 = x f3(x^2), f3(x^2) != 0}."""
    p = ctx.p
    f3 = FpPoly(p, f3.coeffs).compose_square()
    x = FpPoly(p, (0, 1))
    return count_affine(2, x * f3, ctx, avoid=f3)
