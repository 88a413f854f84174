"""Cyclic CM fields as quotients of (Z/nZ)^x.

A field K inside Q(zeta_n) is stored as its conductor n and the subgroup H of
(Z/nZ)^x fixing it, so Gal(K/Q) = (Z/nZ)^x / H. The Frobenius of an
unramified prime p is the class of p mod n.
"""
import logging
from dataclasses import dataclass, field
from math import gcd

from sympy import totient
from sympy.ntheory.modular import crt

from .curves import FamilyLabel
from .errors import RamifiedPrime

logger = logging.getLogger(__name__)


def subgroup_closure(n, generators):
    group = {1}
    frontier = [1]
    while frontier:
        a = frontier.pop()
        for h in generators:
            b = a * h % n
            if b not in group:
                group.add(b)
                frontier.append(b)
    return frozenset(group)


@dataclass(frozen=True)
class CyclicFieldSpec:
    name: str
    n: int
    generators: tuple
    H: frozenset = field(init=False)

    def __post_init__(self):
        for h in self.generators:
            if gcd(h, self.n) != 1:
                raise ValueError(f"{h} is not a unit mod {self.n}")
        object.__setattr__(self, "H", subgroup_closure(self.n, self.generators))
        if not any(self._order(a) == self.degree for a in range(1, self.n) if gcd(a, self.n) == 1):
            raise ValueError(f"(Z/{self.n}Z)^x / H is not cyclic")

    @property
    def degree(self):
        return int(totient(self.n)) // len(self.H)

    def _order(self, a):
        t, x = 1, a % self.n
        while x not in self.H:
            x = x * a % self.n
            t += 1
        return t

    def as_record(self):
        return {"name": self.name, "n": self.n, "H": sorted(self.H), "degree": self.degree}


def conjugation_on_zeta9(modulus):
    """The unit h = -1 mod 9, h = 1 mod ``modulus``, fixing Q(zeta9)^+ (zeta_modulus)."""
    h, _ = crt([9, modulus], [8, 1])
    return int(h)


def field_specs():
    return [
        CyclicFieldSpec("Q(zeta9)", 9, (1,)),
        CyclicFieldSpec("Q(zeta9)^+(i)", 36, (conjugation_on_zeta9(4),)),
        CyclicFieldSpec("Q(zeta9)^+(zeta5)", 45, (conjugation_on_zeta9(5),)),
    ]


_FAMILY_FIELDS = {FamilyLabel.M6: 9, FamilyLabel.M8: 36, FamilyLabel.M16: 45}


def spec_for_family(label):
    n = _FAMILY_FIELDS.get(FamilyLabel(label))
    if n is None:
        return None
    return next(spec for spec in field_specs() if spec.n == n)


def frobenius_order(p, spec):
    """Order of p in (Z/nZ)^x / H."""
    if gcd(p, spec.n) != 1:
        raise RamifiedPrime(f"p = {p} ramifies in {spec.name}")
    return spec._order(p)


def has_even_frobenius(p, spec):
    return frobenius_order(p, spec) % 2 == 0


def splitting_count(p, spec):
    """Number of primes of K above p."""
    return spec.degree // frobenius_order(p, spec)


def classify_prime(p, specs=None):
    """One row of the Galois table: per-field Frobenius data plus the congruences the claims use."""
    row = {"p": p, "p_mod_3": p % 3, "p_mod_4": p % 4, "p_mod_5": p % 5, "fields": {}}
    for spec in specs or field_specs():
        try:
            order = frobenius_order(p, spec)
        except RamifiedPrime:
            row["fields"][spec.n] = None
            continue
        row["fields"][spec.n] = {
            "order": order,
            "even": order % 2 == 0,
            "splitting": spec.degree // order,
        }
    return row


def equivalence_violations(row):
    """Claims about the n=9, 36, 45 fields broken by one classified prime."""
    p, fields, out = row["p"], row["fields"], []
    k9, k36, k45 = fields.get(9), fields.get(36), fields.get(45)
    if k9 is not None:
        if k9["even"] != (p % 3 == 2):
            out.append("n=9: even order <=> p = 2 mod 3")
        if (k9["splitting"] in (1, 3)) != (p % 3 != 1):
            out.append("n=9: 1 or 3 primes above p <=> p != 1 mod 3")
    if k36 is not None and k36["even"] != (p % 4 == 3):
        out.append("n=36: even order <=> p = 3 mod 4")
    if k45 is not None and p % 5 in (2, 3, 4) and not k45["even"]:
        out.append("n=45: p = 2, 3, 4 mod 5 => even order")
    return out


def n45_converse_holds(row):
    """Whether even order at n=45 forces p = 2, 3, 4 mod 5 for this prime (recorded, not a claim)."""
    k45 = row["fields"].get(45)
    if k45 is None:
        return None
    return not k45["even"] or row["p"] % 5 in (2, 3, 4)
