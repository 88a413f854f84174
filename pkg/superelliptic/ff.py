"""Exact arithmetic in F_p and F_{p^k}.

Extension fields are dense coefficient vectors modulo a monic irreducible
polynomial. Two representations live side by side:

* scalar values (:class:`FqElement`) for the occasional single computation,
* numpy coefficient matrices of shape ``(k, n)`` for enumerating whole
  ranges of the field at once.

An element is also identified with its index ``sum(c_i * p**i)``; enumeration
runs over indices ``0 .. q-1`` in that order.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd

import numpy as np
from sympy import factorint, isprime, primefactors

from . import config
from .errors import FieldError, InvalidModel, WildCover

logger = logging.getLogger(__name__)


class PrimeModulus(int):
    """A prime 2 <= p < 2^20. Behaves as a plain int."""

    def __new__(cls, p):
        p = int(p)
        if not 2 <= p < config.MAX_PRIME:
            raise FieldError(f"p = {p} is outside the supported range [2, {config.MAX_PRIME})")
        if not isprime(p):
            raise FieldError(f"{p} is not prime")
        return super().__new__(cls, p)


# --- POLYNOMIALS OVER F_p ---

@dataclass(frozen=True)
class FpPoly:
    """Polynomial over F_p, coefficients low-to-high.

    Coefficients are reduced to [0, p) and trailing zeros are stripped on
    construction, so negative integers reduce to their canonical residue.
    """
    p: int
    coeffs: tuple = ()

    def __post_init__(self):
        c = [int(a) % self.p for a in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def _same_field(self, other):
        if isinstance(other, int):
            return FpPoly(self.p, (other,))
        if other.p != self.p:
            raise FieldError(f"cannot mix polynomials over F_{self.p} and F_{other.p}")
        return other

    def __add__(self, other):
        other = self._same_field(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return FpPoly(self.p, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return FpPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._same_field(other))

    def __rsub__(self, other):
        return self._same_field(other) - self

    def __mul__(self, other):
        other = self._same_field(other)
        if self.is_zero() or other.is_zero():
            return FpPoly(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FpPoly(self.p, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._same_field(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        inv = pow(other.lc, -1, p)
        dq = len(rem) - len(other.coeffs)
        quot = [0] * max(dq + 1, 0)
        for shift in range(dq, -1, -1):
            c = rem[shift + other.degree] * inv % p
            quot[shift] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[shift + i] = (rem[shift + i] - c * b) % p
        return FpPoly(p, quot), FpPoly(p, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate at an integer (mod p) by Horner."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def monic(self):
        if self.is_zero():
            return self
        inv = pow(self.lc, -1, self.p)
        return FpPoly(self.p, [c * inv for c in self.coeffs])

    def derivative(self):
        return FpPoly(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other):
        a, b = self, self._same_field(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def is_separable(self):
        return self.degree >= 1 and self.gcd(self.derivative()).degree == 0

    def powmod(self, e, modulus):
        result, base = FpPoly(self.p, (1,)) % modulus, self % modulus
        while e:
            if e & 1:
                result = result * base % modulus
            base = base * base % modulus
            e >>= 1
        return result

    def compose_square(self):
        """f(x) -> f(x^2)."""
        out = [0] * (2 * len(self.coeffs))
        out[::2] = self.coeffs
        return FpPoly(self.p, out)

    def shift(self, c):
        """f(x) -> f(x + c)."""
        lin = FpPoly(self.p, (c, 1))
        acc = FpPoly(self.p)
        for a in reversed(self.coeffs):
            acc = acc * lin + a
        return acc

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(c) if c != 1 or i == 0 else ""
            terms.append(coef + mono)
        return " + ".join(terms)


def is_irreducible(f):
    """Rabin's test: x^(p^k) = x mod f and gcd(x^(p^(k/l)) - x, f) = 1 for primes l | k."""
    k = f.degree
    if k < 1:
        return False
    if k == 1:
        return True
    p = f.p
    x = FpPoly(p, (0, 1))

    def frobenius_iterate(j):
        r = x
        for _ in range(j):
            r = r.powmod(p, f)
        return r

    if (frobenius_iterate(k) - x) % f != FpPoly(p):
        return False
    for ell in primefactors(k):
        if (frobenius_iterate(k // ell) - x).gcd(f).degree != 0:
            return False
    return True


# --- EXTENSION FIELDS ---

@dataclass(frozen=True)
class FqContext:
    """The field F_p[x] / (modulus). Immutable, shareable across threads."""
    p: PrimeModulus
    k: int
    modulus: FpPoly

    @property
    def q(self):
        return self.p ** self.k

    @cached_property
    def generator(self):
        return find_generator(self)

    @cached_property
    def _place_values(self):
        return np.array([self.p ** i for i in range(self.k)], dtype=np.int64)

    # scalar helpers

    def element(self, coeffs):
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.k:
            # reduce an arbitrary-length representative
            coeffs = list((FpPoly(self.p, coeffs) % self.modulus).coeffs)
        return FqElement(self, tuple(coeffs + [0] * (self.k - len(coeffs))))

    def from_index(self, n):
        digits = []
        for _ in range(self.k):
            n, r = divmod(n, self.p)
            digits.append(r)
        return FqElement(self, tuple(digits))

    def embed(self, c):
        """Canonical embedding F_p -> F_q."""
        return self.element([c])

    @property
    def zero(self):
        return self.element([])

    @property
    def one(self):
        return self.element([1])

    @property
    def x(self):
        return self.element([0, 1])

    def elements(self):
        for digits in itertools.product(range(self.p), repeat=self.k):
            yield FqElement(self, tuple(reversed(digits)))

    def _reduce(self, prod):
        k, p, mod = self.k, self.p, self.modulus.coeffs
        for d in range(len(prod) - 1, k - 1, -1):
            top = prod[d] % p
            if top:
                for t in range(k):
                    prod[d - k + t] -= top * mod[t]
        return tuple(c % p for c in prod[:k]) + (0,) * max(0, k - len(prod))

    # vectorized kernels: matrices of shape (k, n), one column per element

    def unpack(self, indices):
        indices = np.asarray(indices, dtype=np.int64)
        return (indices[None, :] // self._place_values[:, None]) % self.p

    def pack(self, mat):
        return (mat * self._place_values[:, None]).sum(axis=0)

    def constant(self, element, n=1):
        col = np.array(element.coeffs, dtype=np.int64).reshape(self.k, 1)
        return np.repeat(col, n, axis=1) if n > 1 else col

    def vmul(self, a, b):
        k, p = self.k, self.p
        width = np.broadcast_shapes(a.shape[1:], b.shape[1:])
        prod = np.zeros((2 * k - 1,) + width, dtype=np.int64)
        for i in range(k):
            for j in range(k):
                prod[i + j] += a[i] * b[j]
        prod %= p
        mod = self.modulus.coeffs
        for d in range(2 * k - 2, k - 1, -1):
            top = prod[d]
            for t in range(k):
                if mod[t]:
                    prod[d - k + t] = (prod[d - k + t] - top * mod[t]) % p
        return prod[:k]

    def vpow(self, a, e):
        result = np.zeros_like(a)
        result[0] = 1
        base = a
        while e:
            if e & 1:
                result = self.vmul(result, base)
            e >>= 1
            if e:
                base = self.vmul(base, base)
        return result

    def veval(self, poly, xs):
        """Horner evaluation of an F_p polynomial at every column of ``xs``."""
        acc = np.zeros_like(xs)
        if poly.is_zero():
            return acc
        acc[0] = poly.lc
        for c in reversed(poly.coeffs[:-1]):
            acc = self.vmul(acc, xs)
            acc[0] = (acc[0] + c) % self.p
        return acc

    @cached_property
    def log_table(self):
        """Discrete logarithms to base ``generator``, indexed by element index; log(0) = -1."""
        q, chunk = self.q, config.CHUNK_SIZE
        logger.debug(f"Building log table for F_{self.p}^{self.k} (q={q})")
        antilog = np.empty(q - 1, dtype=np.int64)
        antilog[0] = 1
        filled = 1
        while filled < q - 1:
            n = min(filled, q - 1 - filled)
            step = self.constant(element_power(self.generator, filled))
            for start in range(0, n, chunk):
                stop = min(start + chunk, n)
                block = self.vmul(self.unpack(antilog[start:stop]), step)
                antilog[filled + start:filled + stop] = self.pack(block)
            filled += n
        log = np.full(q, -1, dtype=np.int64)
        log[antilog] = np.arange(q - 1, dtype=np.int64)
        return log


@dataclass(frozen=True)
class FqElement:
    ctx: FqContext
    coeffs: tuple

    def _coerce(self, other):
        if isinstance(other, int):
            return self.ctx.embed(other)
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise FieldError("elements belong to different fields")
        return other

    def is_zero(self):
        return not any(self.coeffs)

    @property
    def index(self):
        return sum(c * self.ctx.p ** i for i, c in enumerate(self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ctx.p
        return FqElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FqElement(self.ctx, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        prod = [0] * (2 * self.ctx.k - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return FqElement(self.ctx, self.ctx._reduce(prod))

    __rmul__ = __mul__

    def __pow__(self, e):
        return element_power(self, e)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return element_power(self, self.ctx.q - 2)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __repr__(self):
        return f"FqElement({str(FpPoly(self.ctx.p, self.coeffs))} in F_{self.ctx.p}^{self.ctx.k})"


# --- OPERATIONS ---

@lru_cache(maxsize=16)
def make_extension(p, k):
    """Return F_{p^k} built on the lexicographically least monic irreducible of degree k.

    Candidates are ordered by their coefficient tuple (c_0, ..., c_{k-1}), so
    the choice is reproducible; for k = 1 the modulus is x and F_q = F_p.
    """
    p = PrimeModulus(p)
    if not 1 <= k <= config.MAX_EXTENSION_DEGREE:
        raise FieldError(f"extension degree {k} outside [1, {config.MAX_EXTENSION_DEGREE}]")
    # c_0 = 0 means x divides the candidate
    first = range(1, p) if k > 1 else range(p)
    for low in itertools.product(first, *[range(p)] * (k - 1)):
        f = FpPoly(p, low + (1,))
        if is_irreducible(f):
            logger.debug(f"F_{p}^{k}: modulus {f}")
            return FqContext(p, k, f)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


def element_power(a, e):
    """a^e by square-and-multiply; 0^0 = 1."""
    if e < 0:
        raise ValueError("negative exponent")
    result, base = a.ctx.one, a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def check_tame(m, p):
    if m < 2:
        raise InvalidModel(f"exponent m = {m} must be at least 2")
    if m % p == 0:
        raise WildCover(f"m = {m} is divisible by the characteristic {p}")


def mth_root_count(c, m):
    """Number of y in F_q with y^m = c."""
    ctx = c.ctx
    check_tame(m, ctx.p)
    if c.is_zero():
        return 1
    mp = gcd(m, ctx.q - 1)
    return mp if element_power(c, (ctx.q - 1) // mp) == ctx.one else 0


def find_generator(ctx):
    """Least element (by index) of multiplicative order q - 1."""
    q = ctx.q
    if q == 2:
        return ctx.one
    cofactors = [(q - 1) // ell for ell in factorint(q - 1)]
    for n in range(1, q):
        g = ctx.from_index(n)
        if all(element_power(g, e) != ctx.one for e in cofactors):
            return g
    raise FieldError(f"no generator found in F_{q}")
