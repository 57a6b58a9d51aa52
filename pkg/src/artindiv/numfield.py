"""Number fields ``Q[x]/(f)``: splitting types and Dedekind zeta local factors.

Primes where ``f`` is not squarefree modulo ``p`` (or that divide the
discriminant of ``f``) are excluded rather than analysed; every report lists
them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import FpPoly, LocalFactor, ddf, discriminant, localfactor_divides, parse_poly, poly_str
from .errors import NotCertified, NotSquarefree

CERTIFICATE_PRIME_BOUND = 100


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class NumberFieldSpec:
    """``K = Q[x]/(f)`` for a monic irreducible integer polynomial ``f``.

    ``certificate`` is either a prime ``p`` (``f`` irreducible mod ``p``,
    ``p`` not dividing the discriminant), ``"sympy"`` when the fallback
    irreducibility test over Q was used, or ``"override"``.
    """

    poly: tuple
    discriminant: int = field(init=False)
    certificate: object = field(init=False)

    def __init__(self, poly, assume_irreducible: bool = False):
        coeffs = parse_poly(poly) if isinstance(poly, str) else list(poly)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree >= 1")
        object.__setattr__(self, "poly", tuple(int(c) for c in coeffs))
        disc = discriminant(self.poly)
        if disc == 0:
            raise NotCertified("polynomial has a repeated root")
        object.__setattr__(self, "discriminant", disc)
        cert = _certify(self.poly, disc)
        if cert is None:
            if not assume_irreducible:
                raise NotCertified(f"cannot certify irreducibility of {poly_str(self.poly)}")
            cert = "override"
        object.__setattr__(self, "certificate", cert)

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    def __str__(self) -> str:
        return poly_str(self.poly)


def _certify(f: Sequence[int], disc: int):
    n = len(f) - 1
    if n == 1:
        return "linear"
    for p in primes_up_to(CERTIFICATE_PRIME_BOUND):
        if disc % p == 0:
            continue
        if ddf(FpPoly(p, tuple(f))) == Counter({n: 1}):
            return p
    try:
        import sympy

        x = sympy.Symbol("x")
        if sympy.Poly(list(reversed(f)), x, domain="ZZ").is_irreducible:
            return "sympy"
    except ImportError:  # pragma: no cover
        pass
    return None


@dataclass(frozen=True)
class SplittingType:
    """Residue degrees of the primes above ``p``; ``excluded`` names a reason otherwise."""

    p: int
    degrees: tuple = ()
    excluded: str | None = None

    def __str__(self) -> str:
        if self.excluded:
            return f"p={self.p}: excluded ({self.excluded})"
        return f"p={self.p}: " + "{" + ", ".join(map(str, self.degrees)) + "}"


def splitting_type(F: NumberFieldSpec, p: int) -> SplittingType:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if F.discriminant % p == 0:
        return SplittingType(p, (), "ramified-or-index")
    try:
        counts = ddf(FpPoly(p, F.poly))
    except NotSquarefree:
        return SplittingType(p, (), "ramified-or-index")
    degrees = tuple(sorted(d for d, c in counts.items() for _ in range(c)))
    return SplittingType(p, degrees)


def zeta_local_factor(F: NumberFieldSpec, p: int) -> LocalFactor | SplittingType:
    """``Π (1 - T^f)`` over residue degrees, or the excluded splitting type."""
    st = splitting_type(F, p)
    if st.excluded:
        return st
    return LocalFactor.trivial(st.degrees)


@dataclass
class ZetaDivisibilityReport:
    field1: str
    field2: str
    pmax: int
    holds: bool
    witness: int | None
    tested: list
    excluded: list

    def as_dict(self) -> dict:
        return {
            "field1": self.field1,
            "field2": self.field2,
            "pmax": self.pmax,
            "verdict": "holds on range" if self.holds else f"fails at p={self.witness}",
            "holds": self.holds,
            "witness": self.witness,
            "tested": len(self.tested),
            "excluded": self.excluded,
        }


def zeta_divides(F1: NumberFieldSpec, F2: NumberFieldSpec, pmax: int) -> ZetaDivisibilityReport:
    """Check the local zeta factor of ``F1`` divides that of ``F2`` at every usable ``p <= pmax``."""
    if pmax < 2:
        raise ValueError("pmax must be >= 2")
    tested, excluded = [], []
    witness = None
    for p in primes_up_to(pmax):
        a = zeta_local_factor(F1, p)
        b = zeta_local_factor(F2, p)
        if isinstance(a, SplittingType) or isinstance(b, SplittingType):
            excluded.append(p)
            continue
        tested.append(p)
        if witness is None and not localfactor_divides(a, b):
            witness = p
    return ZetaDivisibilityReport(str(F1), str(F2), pmax, witness is None, witness, tested, excluded)
