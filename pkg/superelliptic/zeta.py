"""L-polynomials from point counts.

L(T) = prod (1 - alpha_i T) = sum a_i T^i has degree 2g. The characteristic
polynomial of Frobenius is the reversed polynomial T^{2g} L(1/T).
Everything here is exact integer arithmetic; Weil bounds are compared
after squaring.
"""
import logging
from dataclasses import dataclass
from math import comb, isqrt

from .errors import NonIntegralCoefficient, WeilViolation
from .ff import PrimeModulus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LPolynomial:
    p: PrimeModulus
    g: int
    coefficients: tuple

    def __getitem__(self, i):
        return self.coefficients[i]

    def at_one(self):
        return sum(self.coefficients)

    def frobenius_charpoly(self):
        """Coefficients, low-to-high, of T^{2g} L(1/T)."""
        return tuple(reversed(self.coefficients))

    def __str__(self):
        terms = [f"{a:+d}T^{i}" if i else f"{a}" for i, a in enumerate(self.coefficients) if a]
        return " ".join(terms)


@dataclass(frozen=True)
class WeilReport:
    checks: dict

    @property
    def passed(self):
        return all(self.checks.values())

    @property
    def failures(self):
        return [name for name, ok in self.checks.items() if not ok]


def power_sums(L, r):
    """s_1..s_r, the power sums of the reciprocal roots, by Newton's identities."""
    a = L.coefficients
    n = len(a) - 1
    s = [0]
    for k in range(1, r + 1):
        acc = sum(a[i] * s[k - i] for i in range(1, min(k, n + 1)))
        if k <= n:
            acc += k * a[k]
        s.append(-acc)
    return s[1:]


def l_polynomial(counts, curve):
    """Reconstruct L(T) from N_1..N_g of ``curve``."""
    g, p = curve.g, curve.p
    counts = tuple(counts)
    if len(counts) != g:
        raise ValueError(f"need exactly g = {g} point counts, got {len(counts)}")
    s = [p ** k + 1 - n for k, n in enumerate(counts, start=1)]
    a = [1]
    for k in range(1, g + 1):
        numerator = s[k - 1] + sum(a[i] * s[k - 1 - i] for i in range(1, k))
        if numerator % k:
            raise NonIntegralCoefficient(f"a_{k} = -{numerator}/{k} is not an integer for {curve}")
        a.append(-numerator // k)
    for i in range(g - 1, -1, -1):
        a.append(p ** (g - i) * a[i])
    L = LPolynomial(p, g, tuple(a))
    report = validate_weil(L)
    if not report.passed:
        raise WeilViolation(f"L(T) = {L} fails {', '.join(report.failures)}")
    logger.debug(f"L(T) = {L}")
    return L


def predicted_count(L, k):
    """N_k implied by L: p^k + 1 - s_k."""
    return L.p ** k + 1 - power_sums(L, k)[-1]


def coefficient_bound_holds(a, i, g, p):
    # |a_i| <= C(2g, i) p^{i/2}, squared
    return a * a <= comb(2 * g, i) ** 2 * p ** i


def validate_weil(L):
    a, g, p = L.coefficients, L.g, L.p
    checks = {
        "degree": len(a) == 2 * g + 1,
        "leading_one": bool(a) and a[0] == 1,
    }
    if checks["degree"]:
        checks["functional_equation"] = all(a[2 * g - i] == p ** (g - i) * a[i] for i in range(g + 1))
        checks["coefficient_bounds"] = all(coefficient_bound_holds(a[i], i, g, p) for i in range(2 * g + 1))
    checks["positive_at_one"] = L.at_one() > 0
    return WeilReport(checks)


def synthesize_l_polynomial(p, g, rng):
    """A random L satisfying the functional equation and coefficient bounds.

    Valuations of a_1..a_g are drawn so both supersingular and ordinary shapes
    occur; L(1) > 0 is not guaranteed.
    """
    a = [1]
    for i in range(1, g + 1):
        bound = isqrt(comb(2 * g, i) ** 2 * p ** i)
        v = rng.randint(0, (i + 1) // 2 + 1)
        step = p ** v
        if step > bound or rng.random() < 0.2:
            a.append(0)
            continue
        a.append(rng.randint(-(bound // step), bound // step) * step)
    for i in range(g - 1, -1, -1):
        a.append(p ** (g - i) * a[i])
    return LPolynomial(PrimeModulus(p), g, tuple(a))
