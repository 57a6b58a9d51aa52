"""Exact arithmetic: integer polynomials, cyclotomic numbers, local factors, F_p[x].

Nothing here uses floating point.  Polynomials are coefficient lists,
constant term first.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NotDivisible, NotSquarefree, ParseError

# -- integer / rational polynomials ------------------------------------------------


def poly_trim(a: Sequence) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_sub(a: Sequence, b: Sequence) -> list:
    return poly_add(a, [-x for x in b])


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim(out)


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Long division; exact over the rationals, integral when ``b`` is monic."""
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = poly_trim(a)
    lead = b[-1]
    if len(rem) < len(b):
        return [], rem
    quot = [0] * (len(rem) - len(b) + 1)
    for k in range(len(rem) - len(b), -1, -1):
        c = rem[k + len(b) - 1]
        if c == 0:
            continue
        q = c // lead if isinstance(c, int) and isinstance(lead, int) and c % lead == 0 else Fraction(c) / lead
        quot[k] = q
        for j, y in enumerate(b):
            rem[k + j] -= q * y
    return poly_trim(quot), poly_trim(rem)


def poly_exact_div(a: Sequence, b: Sequence) -> list:
    """``q`` with ``b*q == a``; raises :class:`NotDivisible` otherwise."""
    q, r = poly_divmod(a, b)
    if r:
        raise NotDivisible("nonzero remainder")
    return q


def poly_derivative(a: Sequence) -> list:
    return poly_trim([i * a[i] for i in range(1, len(a))])


def poly_str(a: Sequence, var: str = "x") -> str:
    a = poly_trim(a)
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += sign + body
    return out


_TERM = re.compile(r"([+-])?\s*(\d+)?\s*\*?\s*(?:([a-zA-Z])\s*(?:\^\s*(\d+))?)?\s*")


def parse_poly(text: str, var: str = "x") -> list[int]:
    """Parse an integer polynomial such as ``x^3-2`` or ``-x^2 + 3*x - 1``."""
    src = text.replace("**", "^").strip()
    if not src:
        raise ParseError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial {text!r}")
        sign, num, v, power = m.groups()
        if sign is None and not first:
            raise ParseError(f"missing operator in {text!r}")
        if num is None and v is None:
            raise ParseError(f"dangling sign in {text!r}")
        if v is not None and v != var:
            raise ParseError(f"unexpected variable {v!r} in {text!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        deg = 0 if v is None else int(power) if power is not None else 1
        coeffs[deg] = coeffs.get(deg, 0) + c
        pos = m.end()
        first = False
    if not coeffs:
        raise ParseError(f"cannot parse polynomial {text!r}")
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    return poly_trim(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple:
    """Integer coefficients of the ``m``-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("m must be >= 1")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = poly_exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def resultant(a: Sequence, b: Sequence) -> Fraction:
    """Resultant via the determinant of the Sylvester matrix (exact)."""
    a, b = poly_trim(a), poly_trim(b)
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        return Fraction(0)
    size = m + n
    if size == 0:
        return Fraction(1)
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(a)) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(b)) + [0] * (size - n - 1 - i))
    return _det([[Fraction(x) for x in r] for r in rows])


def _det(mat: list[list[Fraction]]) -> Fraction:
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        for r in range(col + 1, n):
            f = mat[r][col] / mat[col][col]
            if f:
                for k in range(col, n):
                    mat[r][k] -= f * mat[col][k]
    return det


def discriminant(f: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial."""
    f = poly_trim(f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n == 1:
        return 1
    res = resultant(f, poly_derivative(f)) / f[-1]
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    value = sign * res
    assert value.denominator == 1
    return int(value)


# -- roots of unity and cyclotomic numbers ------------------------------------------


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """``zeta_m^e``, stored with the minimal modulus."""

    modulus: int
    exponent: int

    def __post_init__(self):
        m, e = self.modulus, self.exponent % self.modulus
        g = math.gcd(m, e) if e else m
        object.__setattr__(self, "modulus", m // g)
        object.__setattr__(self, "exponent", e // g)

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(1, 0)

    @classmethod
    def from_fraction(cls, q: Fraction) -> "RootOfUnity":
        q = Fraction(q) % 1
        return cls(q.denominator, q.numerator)

    @property
    def fraction(self) -> Fraction:
        """The angle as a fraction of a full turn, in ``[0, 1)``."""
        return Fraction(self.exponent, self.modulus)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity.from_fraction(self.fraction + other.fraction)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity.from_fraction(self.fraction * k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity.from_fraction(-self.fraction)

    def is_one(self) -> bool:
        return self.exponent == 0

    def order(self) -> int:
        return self.modulus

    def __str__(self) -> str:
        if self.modulus == 1:
            return "1"
        if self.modulus == 2:
            return "-1"
        return f"z{self.modulus}" if self.exponent == 1 else f"z{self.modulus}^{self.exponent}"


class CycloElem:
    """An element of ``Q(zeta_m)`` in the power basis, reduced mod ``Phi_m``."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus: int, coeffs: Iterable = ()):
        phi = cyclotomic_polynomial(modulus)
        c = [Fraction(x) for x in coeffs]
        if len(c) >= len(phi):
            c = _reduce(c, phi)
        c += [Fraction(0)] * (len(phi) - 1 - len(c))
        self.modulus = modulus
        self.coeffs = tuple(c)

    @classmethod
    def rational(cls, q, modulus: int = 1) -> "CycloElem":
        return cls(modulus, [q])

    @classmethod
    def root(cls, w: RootOfUnity, modulus: int | None = None) -> "CycloElem":
        m = w.modulus if modulus is None else modulus
        if m % w.modulus:
            raise ValueError(f"{w} is not in Q(zeta_{m})")
        e = w.exponent * (m // w.modulus)
        c = [0] * (e + 1)
        c[e] = 1
        return cls(m, c)

    @classmethod
    def zeta(cls, m: int, e: int = 1) -> "CycloElem":
        return cls.root(RootOfUnity(m, e), m)

    def lift(self, modulus: int) -> "CycloElem":
        if modulus == self.modulus:
            return self
        if modulus % self.modulus:
            raise ValueError("target modulus must be a multiple")
        step = modulus // self.modulus
        c = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1 if self.coeffs else 1)
        for i, x in enumerate(self.coeffs):
            c[i * step] = x
        return CycloElem(modulus, c)

    @staticmethod
    def _common(a: "CycloElem", b) -> tuple["CycloElem", "CycloElem"]:
        if not isinstance(b, CycloElem):
            b = CycloElem.rational(b)
        m = math.lcm(a.modulus, b.modulus)
        return a.lift(m), b.lift(m)

    def __add__(self, other) -> "CycloElem":
        a, b = self._common(self, other)
        return CycloElem(a.modulus, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "CycloElem":
        return CycloElem(self.modulus, [-x for x in self.coeffs])

    def __sub__(self, other) -> "CycloElem":
        return self + (-other if isinstance(other, CycloElem) else -Fraction(other))

    def __rsub__(self, other) -> "CycloElem":
        return (-self) + other

    def __mul__(self, other) -> "CycloElem":
        if not isinstance(other, CycloElem):
            q = Fraction(other)
            return CycloElem(self.modulus, [x * q for x in self.coeffs])
        a, b = self._common(self, other)
        return CycloElem(a.modulus, poly_mul(list(a.coeffs), list(b.coeffs)) or [0])

    __rmul__ = __mul__

    def __truediv__(self, q) -> "CycloElem":
        if isinstance(q, CycloElem):
            if not q.is_rational():
                return self * q.inverse()
            q = q.to_rational()
        q = Fraction(q)
        return CycloElem(self.modulus, [x / q for x in self.coeffs])

    def galois(self, k: int) -> "CycloElem":
        """Image under ``zeta_m -> zeta_m^k`` (``k`` coprime to ``m``)."""
        m = self.modulus
        if math.gcd(k, m) != 1:
            raise ValueError("k must be coprime to the modulus")
        c = [Fraction(0)] * m
        for i, x in enumerate(self.coeffs):
            c[(i * k) % m] += x
        return CycloElem(m, c)

    def inverse(self) -> "CycloElem":
        """``1/x`` as (product of the other Galois conjugates) / norm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m = self.modulus
        others = CycloElem.rational(1, m)
        for k in range(2, m):
            if math.gcd(k, m) == 1:
                others = others * self.galois(k)
        norm = self * others
        return others / norm.to_rational()

    def __pow__(self, k: int) -> "CycloElem":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = CycloElem.rational(1, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CycloElem":
        """Complex conjugation ``zeta -> zeta^-1``."""
        m = self.modulus
        c = [Fraction(0)] * m
        for i, x in enumerate(self.coeffs):
            c[(-i) % m] += x
        return CycloElem(m, c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloElem):
            try:
                other = CycloElem.rational(Fraction(other))
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._common(self, other)
        return a.coeffs == b.coeffs

    __hash__ = None

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_integral(self) -> bool:
        """True when all power-basis coordinates are integers (an algebraic integer)."""
        return all(x.denominator == 1 for x in self.coeffs)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs)

    def __repr__(self) -> str:
        return f"CycloElem({self.modulus}, {str(self)})"

    def __str__(self) -> str:
        parts = []
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            if i == 0:
                parts.append(str(x))
            else:
                z = f"z{self.modulus}" + (f"^{i}" if i > 1 else "")
                parts.append(z if x == 1 else f"-{z}" if x == -1 else f"{x}*{z}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


def _reduce(c: list, phi: Sequence[int]) -> list:
    c = list(c)
    d = len(phi) - 1
    for k in range(len(c) - 1, d - 1, -1):
        x = c[k]
        if x:
            for j in range(d + 1):
                c[k - d + j] -= x * phi[j]
    return c[:d]


# -- local factors -------------------------------------------------------------------


def _factor_roots(k: int, w: RootOfUnity) -> list[Fraction]:
    """The ``k`` roots of ``1 - w T^k`` (solutions of ``T^k = w^-1``) as angles."""
    base = -w.fraction / k
    return [(base + Fraction(j, k)) % 1 for j in range(k)]


class LocalFactor:
    """A product of factors ``(1 - w T^k)`` with ``w`` a root of unity."""

    __slots__ = ("factors", "_roots")

    def __init__(self, factors: Iterable[tuple[int, RootOfUnity]] = ()):
        fs = []
        for k, w in factors:
            if not isinstance(w, RootOfUnity):
                w = RootOfUnity(*w)
            if k < 1:
                raise ValueError("factor degree must be positive")
            fs.append((int(k), w))
        self.factors = tuple(sorted(fs, key=lambda f: (f[0], f[1].fraction)))
        self._roots: Counter | None = None

    @classmethod
    def trivial(cls, degrees: Iterable[int] | dict) -> "LocalFactor":
        """``Π (1 - T^k)``; accepts a list of degrees or ``{k: multiplicity}``."""
        if isinstance(degrees, dict):
            degrees = [k for k, mult in degrees.items() for _ in range(mult)]
        return cls((k, RootOfUnity.one()) for k in degrees)

    @property
    def ambient_modulus(self) -> int:
        return math.lcm(1, *(w.modulus for _, w in self.factors))

    @property
    def degree(self) -> int:
        return sum(k for k, _ in self.factors)

    def roots(self) -> Counter:
        """Multiset of roots, keyed by their angle in ``[0, 1)``."""
        if self._roots is None:
            roots: Counter = Counter()
            for k, w in self.factors:
                roots.update(_factor_roots(k, w))
            self._roots = roots
        return self._roots

    def root_list(self) -> list[RootOfUnity]:
        return [RootOfUnity.from_fraction(q) for q in sorted(self.roots().elements())]

    def __mul__(self, other: "LocalFactor") -> "LocalFactor":
        return LocalFactor(self.factors + other.factors)

    def __eq__(self, other) -> bool:
        """Equality as polynomials (same root multiset)."""
        if not isinstance(other, LocalFactor):
            return NotImplemented
        return self.roots() == other.roots()

    def __hash__(self):
        return hash(frozenset(self.roots().items()))

    def same_factorization(self, other: "LocalFactor") -> bool:
        return self.factors == other.factors

    def expand(self) -> list[CycloElem]:
        return localfactor_expand(self)

    def __repr__(self) -> str:
        return f"LocalFactor({self})"

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        counts = Counter(self.factors)
        out = []
        for (k, w), mult in sorted(counts.items(), key=lambda kv: (kv[0][0], kv[0][1].fraction)):
            t = "T" if k == 1 else f"T^{k}"
            body = f"(1-{t})" if w.is_one() else f"(1+{t})" if w.modulus == 2 else f"(1-{w}*{t})"
            out.append(body if mult == 1 else f"{body}^{mult}")
        return "".join(out)


def localfactor_divides(a: LocalFactor, b: LocalFactor) -> bool:
    """Whether ``a`` divides ``b`` as polynomials: root-multiset inclusion."""
    ra, rb = a.roots(), b.roots()
    return all(rb[q] >= n for q, n in ra.items())


def localfactor_expand(a: LocalFactor, modulus: int | None = None) -> list[CycloElem]:
    """Coefficients of the expanded product, constant term first."""
    m = modulus or a.ambient_modulus
    poly = [CycloElem.rational(1, m)]
    for k, w in a.factors:
        term = [CycloElem.rational(0, m)] * (k + 1)
        term[0] = CycloElem.rational(1, m)
        term[k] = -CycloElem.root(w, m)
        poly = _cpoly_mul(poly, term)
    return poly


def expand_from_roots(roots: Counter | Iterable[Fraction], modulus: int | None = None) -> list[CycloElem]:
    """``Π (1 - T/r)`` over a root multiset (angles)."""
    rs = list(roots.elements()) if isinstance(roots, Counter) else list(roots)
    m = modulus or math.lcm(1, *(q.denominator for q in rs))
    poly = [CycloElem.rational(1, m)]
    for q in rs:
        inv = RootOfUnity.from_fraction(-q)
        poly = _cpoly_mul(poly, [CycloElem.rational(1, m), -CycloElem.root(inv, m)])
    return poly


def _cpoly_mul(a: list[CycloElem], b: list[CycloElem]) -> list[CycloElem]:
    m = a[0].modulus
    out = [CycloElem.rational(0, m) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def cpoly_exact_div(a: list[CycloElem], b: list[CycloElem]) -> list[CycloElem] | None:
    """Exact division for polynomials with constant term 1 in the divisor.

    Works as a power-series division so no field inverses are needed; returns
    ``None`` when ``b`` does not divide ``a``.
    """
    m = math.lcm(*(x.modulus for x in a + b))
    a = [x.lift(m) for x in a]
    b = [x.lift(m) for x in b]
    while len(b) > 1 and b[-1].is_zero():
        b.pop()
    while len(a) > 1 and a[-1].is_zero():
        a.pop()
    if b[0] != 1:
        raise ValueError("divisor must have constant term 1")
    n = len(a) - len(b) + 1
    if n < 1:
        return None
    q: list[CycloElem] = []
    for i in range(n):
        acc = a[i]
        for j in range(1, min(i, len(b) - 1) + 1):
            acc = acc - b[j] * q[i - j]
        q.append(acc)
    prod = _cpoly_mul(b, q)
    if len(prod) != len(a) or any(x != y for x, y in zip(prod, a)):
        return None
    return q


# -- polynomials over F_p --------------------------------------------------------------


@dataclass(frozen=True)
class FpPoly:
    p: int
    coeffs: tuple

    def __post_init__(self):
        c = [x % self.p for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def _fp_trim(a: list, p: int) -> list:
    a = [x % p for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_mul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fp_trim(out, p)


def fp_divmod(a: list, b: list, p: int) -> tuple[list, list]:
    a = _fp_trim(a, p)
    b = _fp_trim(b, p)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv = pow(b[-1], -1, p)
    if len(a) < len(b):
        return [], a
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv % p
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] = (a[k + j] - c * y) % p
    return _fp_trim(q, p), _fp_trim(a, p)


def fp_gcd(a: list, b: list, p: int) -> list:
    a, b = _fp_trim(a, p), _fp_trim(b, p)
    while b:
        a, b = b, fp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def fp_powmod(base: list, e: int, mod: list, p: int) -> list:
    result = [1]
    base = fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = fp_divmod(fp_mul(result, base, p), mod, p)[1]
        base = fp_divmod(fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def ddf_stages(f: FpPoly) -> list[tuple[int, list]]:
    """Distinct-degree factorization: ``(d, product of the degree-d irreducible factors)``.

    The last stage may be the remaining irreducible cofactor.  ``f`` must be
    monic and squarefree.
    """
    p = f.p
    a = list(f.coeffs)
    if len(a) < 2:
        raise ValueError("degree must be >= 1")
    if a[-1] != 1:
        raise ValueError("polynomial must be monic")
    if len(fp_gcd(a, _fp_trim([i * a[i] for i in range(1, len(a))], p), p)) > 1:
        raise NotSquarefree(f"not squarefree mod {p}")
    stages = []
    rest = a
    h = [0, 1]
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = fp_powmod(h, p, rest, p)
        h_minus_x = list(h) + [0] * (2 - len(h)) if len(h) < 2 else list(h)
        h_minus_x[1] -= 1
        g = fp_gcd(rest, h_minus_x, p)
        if len(g) > 1:
            stages.append((d, g))
            rest = fp_divmod(rest, g, p)[0]
            h = fp_divmod(h, rest, p)[1]
    if len(rest) > 1:
        stages.append((len(rest) - 1, rest))
    return stages


def ddf(f: FpPoly) -> Counter:
    """Multiset ``{degree: count}`` of irreducible factor degrees of squarefree ``f``."""
    out: Counter = Counter()
    for d, g in ddf_stages(f):
        out[d] += (len(g) - 1) // d
    return out


_FACTOR = re.compile(r"\(1([+-])(?:z(\d+)(?:\^(\d+))?\*)?T(?:\^(\d+))?\)(?:\^(\d+))?")


def parse_local_factor(text: str) -> LocalFactor:
    """Inverse of ``str(LocalFactor)``: ``(1-T)^4(1-T^2)^6``, ``(1-z3^2*T)``, ``1``."""
    text = text.replace(" ", "").replace("{", "").replace("}", "")
    if text == "1":
        return LocalFactor()
    factors = []
    pos = 0
    while pos < len(text):
        m = _FACTOR.match(text, pos)
        if not m:
            raise ParseError(f"bad local factor {text!r}")
        sign, mod, exp, k, mult = m.groups()
        w = RootOfUnity(int(mod), int(exp) if exp else 1) if mod else RootOfUnity.one()
        if sign == "+":
            w = w * RootOfUnity(2, 1)
        factors += [(int(k) if k else 1, w)] * (int(mult) if mult else 1)
        pos = m.end()
    return LocalFactor(factors)
