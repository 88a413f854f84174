"""Superelliptic models y^m = f(x) over F_p and the catalog of explicit curves."""
import json
import logging
from dataclasses import dataclass
from enum import Enum
from math import gcd

from .errors import InseparableModel, InvalidModel, UnsupportedInfinity, ZeroConstantTerm
from .ff import FpPoly, PrimeModulus, check_tame

logger = logging.getLogger(__name__)


class FamilyLabel(str, Enum):
    M6 = "M6"
    M8 = "M8"
    M16 = "M16"
    OTHER = "Other"


@dataclass(frozen=True)
class SuperellipticCurve:
    p: PrimeModulus
    m: int
    f: FpPoly

    @property
    def d(self):
        return self.f.degree

    @property
    def delta(self):
        return gcd(self.m, self.d)

    @property
    def g(self):
        return genus(self)

    def __str__(self):
        return f"y^{self.m} = {self.f} over F_{self.p}"


def make_curve(p, m, f):
    """Validate and build y^m = f(x) over F_p.

    ``f`` may be an FpPoly or a list of integer coefficients, low degree first.
    """
    p = PrimeModulus(p)
    if not isinstance(f, FpPoly):
        f = FpPoly(p, f)
    elif f.p != p:
        f = FpPoly(p, f.coeffs)
    if f.degree < 1:
        raise InseparableModel(f"f = {f} is constant")
    if not f.is_separable():
        raise InseparableModel(f"f = {f} is not separable over F_{p}")
    check_tame(m, p)
    delta = gcd(m, f.degree)
    if delta not in (1, m):
        raise UnsupportedInfinity(f"gcd(m, deg f) = {delta} is neither 1 nor m = {m}")
    return SuperellipticCurve(p, m, f)


def genus(curve):
    # Riemann-Hurwitz for a cyclic cover totally ramified over the roots of f
    twice = (curve.d - 1) * (curve.m - 1) + 1 - curve.delta
    return twice // 2


def translate(curve, c):
    """The isomorphic curve y^m = f(x + c)."""
    return make_curve(curve.p, curve.m, curve.f.shift(c))


def m8_to_hyperelliptic(f3, p):
    """y^4 = u f3(u)^2 in the hyperelliptic form y^2 = x f3(x^2) (via u = x^2)."""
    p = PrimeModulus(p)
    if not isinstance(f3, FpPoly):
        f3 = FpPoly(p, f3)
    if p == 2:
        raise InseparableModel("the hyperelliptic model needs p odd")
    if f3.degree != 3:
        raise InvalidModel(f"expected a cubic, got degree {f3.degree}")
    if f3(0) == 0:
        raise ZeroConstantTerm(f"f(0) = 0 for f = {f3}")
    if not f3.is_separable():
        raise InseparableModel(f"cubic {f3} is not separable over F_{p}")
    x = FpPoly(p, (0, 1))
    return make_curve(p, 2, x * f3.compose_square())


def family_of(curve):
    m, d, coeffs = curve.m, curve.d, curve.f.coeffs
    if m == 3 and d == 4:
        return FamilyLabel.M6
    if m == 5 and d in (4, 5):
        return FamilyLabel.M16
    if m == 2 and d == 7 and not any(coeffs[0::2]) and coeffs[1]:
        return FamilyLabel.M8
    return FamilyLabel.OTHER


# --- CATALOG ---

@dataclass(frozen=True)
class PrimeCondition:
    """p mod ``modulus`` lies in ``residues``."""
    modulus: int
    residues: tuple

    def __call__(self, p):
        return p % self.modulus in self.residues

    def __str__(self):
        res = ", ".join(str(r) for r in self.residues)
        return f"p = {res} mod {self.modulus}"


@dataclass(frozen=True)
class CatalogEntry:
    label: FamilyLabel
    name: str
    m: int
    f_integer: tuple
    prime_condition: PrimeCondition
    exceptional_primes: tuple = ()
    model: str = "direct"
    iff: bool = False

    def polynomial_for(self, p):
        for q, replacement in self.exceptional_primes:
            if q == p:
                return replacement
        return self.f_integer

    def model_coefficients(self, p):
        """Integer coefficients of the f actually counted at p, so (m, f) names the curve."""
        coeffs = self.polynomial_for(p)
        if self.model == "m8":
            # x f3(x^2)
            out = [0] * (2 * len(coeffs))
            out[1::2] = coeffs
            return tuple(out)
        return coeffs

    def curve_for(self, p):
        coeffs = self.polynomial_for(p)
        if self.model == "m8":
            return m8_to_hyperelliptic(coeffs, p)
        return make_curve(p, self.m, coeffs)

    def applies_to(self, p):
        """Primes the theorem speaks about: the congruence class or a listed exception."""
        return self.prime_condition(p) or any(q == p for q, _ in self.exceptional_primes)

    def expected_supersingular(self, p):
        """True/False where the theorem decides, None where it says nothing.

        The converse is only claimed for primes coprime to the congruence modulus.
        """
        if self.applies_to(p):
            return True
        if self.iff and p % self.prime_condition.modulus:
            return False
        return None


def theorem_catalog():
    return [
        CatalogEntry(
            label=FamilyLabel.M6,
            name="Picard curve y^3 = x^4 - x",
            m=3,
            f_integer=(0, -1, 0, 0, 1),
            prime_condition=PrimeCondition(3, (2,)),
            iff=True,
        ),
        CatalogEntry(
            label=FamilyLabel.M8,
            name="y^2 = x f(x^2), f(u) = u^3 + 6u^2 + 9u + 1",
            m=2,
            f_integer=(1, 9, 6, 1),
            prime_condition=PrimeCondition(4, (3,)),
            exceptional_primes=((3, (7, 14, 7, 1)),),
            model="m8",
        ),
        CatalogEntry(
            label=FamilyLabel.M16,
            name="CPQ curve y^5 = x^4 - 24x^3 + 3x^2 + x",
            m=5,
            f_integer=(0, 1, 3, -24, 1),
            prime_condition=PrimeCondition(5, (2, 3, 4)),
            exceptional_primes=((3, (0, 7, -7, 0, 1)),),
        ),
    ]


def catalog_entry(label, catalog=None):
    label = FamilyLabel(label)
    for entry in catalog or theorem_catalog():
        if entry.label == label:
            return entry
    raise KeyError(f"no catalog entry for {label.value}")


def remark_reductions_agree():
    """Over F_3, u^3 + 7u^2 + 14u + 7 and u^3 + u^2 - u + 1 reduce to the same cubic."""
    return FpPoly(3, (7, 14, 7, 1)) == FpPoly(3, (1, -1, 1, 1))


def catalog_to_json(catalog):
    entries = []
    for e in catalog:
        entries.append({
            "label": e.label.value,
            "name": e.name,
            "m": e.m,
            "f": list(e.f_integer),
            "prime_condition": {"modulus": e.prime_condition.modulus,
                                "residues": list(e.prime_condition.residues)},
            "exceptional_primes": [{"p": q, "f": list(c)} for q, c in e.exceptional_primes],
            "model": e.model,
            "iff": e.iff,
        })
    return json.dumps(entries, indent=2)


def load_catalog(path):
    """Read a catalog in the shape written by :func:`catalog_to_json`."""
    with open(path) as fh:
        raw = json.load(fh)
    catalog = []
    for e in raw:
        cond = e["prime_condition"]
        catalog.append(CatalogEntry(
            label=FamilyLabel(e.get("label", "Other")),
            name=e.get("name", ""),
            m=int(e["m"]),
            f_integer=tuple(int(c) for c in e["f"]),
            prime_condition=PrimeCondition(int(cond["modulus"]), tuple(int(r) for r in cond["residues"])),
            exceptional_primes=tuple((int(x["p"]), tuple(int(c) for c in x["f"]))
                                     for x in e.get("exceptional_primes", [])),
            model=e.get("model", "direct"),
            iff=bool(e.get("iff", False)),
        ))
    logger.info(f"Loaded {len(catalog)} catalog entries from {path}")
    return catalog
