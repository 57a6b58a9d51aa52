"""Linear characters of subgroups, induced monomial representations, local factors.

The local factor of ``Ind_H^G(chi)`` at an element ``g`` is read off from the
orbits of ``<g>`` on the left cosets ``G/H``: an orbit of size ``k`` through
``rH`` contributes ``1 - chi(r^-1 g^k r) T^k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Sequence

from . import caps
from .algebra import CycloElem, LocalFactor, RootOfUnity, localfactor_divides
from .errors import CapExceeded, GroupMismatch, InconsistentCharacter, NotASubgroup
from .permgroup import (
    FinGroup,
    Permutation,
    abelian_basis,
    class_intersection_count,
    commutator_subgroup,
    conjugacy_classes,
    coset_table,
    quotient_map,
    subgroup,
)


class SubgroupCharacter:
    """A 1-dimensional character of ``H <= G`` with root-of-unity values."""

    def __init__(self, group: FinGroup, sub: FinGroup, values: dict):
        if not sub.is_subgroup_of(group):
            raise NotASubgroup("character domain is not a subgroup")
        self.group = group
        self.subgroup = sub
        self.values = values

    @classmethod
    def trivial(cls, group: FinGroup, sub: FinGroup | None = None) -> "SubgroupCharacter":
        sub = group if sub is None else sub
        one = RootOfUnity.one()
        return cls(group, sub, {h: one for h in sub.elements})

    @classmethod
    def from_function(cls, group: FinGroup, sub: FinGroup, f: Callable[[Permutation], RootOfUnity]):
        return cls(group, sub, {h: f(h) for h in sub.elements})

    @classmethod
    def from_generator_images(cls, group: FinGroup, images: Sequence[tuple[Permutation, RootOfUnity]]):
        """Extend generator images multiplicatively; the subgroup is the one they generate.

        Raises :class:`InconsistentCharacter` when no homomorphism has these images.
        """
        gens = [g for g, _ in images]
        sub = subgroup(group, gens) if gens else subgroup(group, [])
        values = {sub.identity: RootOfUnity.one()}
        queue = [sub.identity]
        k = 0
        while k < len(queue):
            x = queue[k]
            vx = values[x]
            for g, w in images:
                y = x * g
                vy = vx * w
                old = values.get(y)
                if old is None:
                    values[y] = vy
                    queue.append(y)
                elif old != vy:
                    raise InconsistentCharacter(f"conflicting values at {y.cycle_string()}")
            k += 1
        return cls(group, sub, values)

    def __call__(self, h: Permutation) -> RootOfUnity:
        return self.values[h]

    @property
    def modulus(self) -> int:
        return math.lcm(1, *(w.modulus for w in self.values.values()))

    def order(self) -> int:
        return self.modulus

    def is_trivial(self) -> bool:
        return all(w.is_one() for w in self.values.values())

    def restrict(self, sub: FinGroup) -> "SubgroupCharacter":
        if not all(h in self.subgroup for h in sub.generators):
            raise NotASubgroup("restriction target is not inside the domain")
        return SubgroupCharacter(self.group, sub, {h: self.values[h] for h in sub.elements})

    def __mul__(self, other: "SubgroupCharacter") -> "SubgroupCharacter":
        if not self.subgroup.same_elements(other.subgroup):
            raise GroupMismatch("characters on different subgroups")
        return SubgroupCharacter(self.group, self.subgroup, {h: w * other.values[h] for h, w in self.values.items()})

    def __pow__(self, k: int) -> "SubgroupCharacter":
        return SubgroupCharacter(self.group, self.subgroup, {h: w ** k for h, w in self.values.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupCharacter):
            return NotImplemented
        return self.subgroup.same_elements(other.subgroup) and self.values == other.values

    __hash__ = None

    def conjugate(self, g: Permutation) -> "SubgroupCharacter":
        """The character ``x -> chi(g^-1 x g)`` of ``g H g^-1``."""
        gi = g.inverse()
        sub = subgroup(self.group, [g * h * gi for h in self.subgroup.generators])
        return SubgroupCharacter(self.group, sub, {x: self.values[gi * x * g] for x in sub.elements})

    def check(self) -> None:
        """Verify the homomorphism property exhaustively."""
        H = self.subgroup
        if not self.values[H.identity].is_one():
            raise InconsistentCharacter("value at identity is not 1")
        for x in H.elements:
            for s in H.generators:
                if self.values[x * s] != self.values[x] * self.values[s]:
                    raise InconsistentCharacter("not multiplicative")


def linear_characters(G: FinGroup, H: FinGroup) -> list[SubgroupCharacter]:
    """All 1-dimensional characters of ``H``, trivial first, via ``H/[H,H]``."""
    if H.order == 1:
        return [SubgroupCharacter.trivial(G, H)]
    K = commutator_subgroup(H)
    Q, proj = quotient_map(H, K)
    basis = abelian_basis(Q)
    coords = {h: basis.coordinates[proj[h]] for h in H.elements}
    chars = []
    for exps in product(*(range(d) for d in basis.orders)):
        steps = [Fraction(e, d) for e, d in zip(exps, basis.orders)]
        values = {h: RootOfUnity.from_fraction(sum((s * x for s, x in zip(steps, c)), Fraction(0))) for h, c in coords.items()}
        chars.append(SubgroupCharacter(G, H, values))
    return chars


# -- induced local factors ------------------------------------------------------------


def induced_local_factor(G: FinGroup, H: FinGroup, chi: SubgroupCharacter, g: Permutation) -> LocalFactor:
    """Local factor of ``Ind_H^G(chi)`` at ``g`` from the ``<g>``-orbits on ``G/H``."""
    table = coset_table(G, H)
    n = table.index
    seen = [False] * n
    factors = []
    for start in range(n):
        if seen[start]:
            continue
        k = 0
        i = start
        while not seen[i]:
            seen[i] = True
            k += 1
            i = table.act(g, i)
        r = table.representatives[start]
        h = r.inverse() * g ** k * r
        factors.append((k, chi(h)))
    return LocalFactor(factors)


@dataclass(frozen=True)
class MonomialMatrix:
    """Row ``i`` has its single nonzero entry ``weights[i]`` in column ``columns[i]``."""

    columns: tuple
    weights: tuple

    @property
    def dimension(self) -> int:
        return len(self.columns)

    def __post_init__(self):
        if sorted(self.columns) != list(range(len(self.columns))):
            raise ValueError("not a monomial matrix")

    def entry(self, i: int, j: int) -> RootOfUnity | None:
        return self.weights[i] if self.columns[i] == j else None

    def __mul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        cols = tuple(other.columns[c] for c in self.columns)
        ws = tuple(w * other.weights[c] for w, c in zip(self.weights, self.columns))
        return MonomialMatrix(cols, ws)

    def is_diagonal(self) -> bool:
        return all(c == i for i, c in enumerate(self.columns))

    def diagonal(self) -> list:
        return [self.weights[i] if c == i else None for i, c in enumerate(self.columns)]

    def trace(self) -> CycloElem:
        total = CycloElem.rational(0)
        for i, c in enumerate(self.columns):
            if c == i:
                total = total + CycloElem.root(self.weights[i])
        return total

    def is_scalar(self, w: RootOfUnity) -> bool:
        return self.is_diagonal() and all(x == w for x in self.weights)


def induced_matrix(G: FinGroup, H: FinGroup, chi: SubgroupCharacter, g: Permutation) -> MonomialMatrix:
    """Matrix of ``Ind_H^G(chi)(g)`` in the basis of coset representatives.

    Entry ``(i, j)`` is ``chi(r_i^-1 g r_j)`` when that element lies in ``H``.
    Found by direct membership search, independently of the coset action.
    """
    reps = coset_table(G, H).representatives
    inv = [r.inverse() for r in reps]
    cols, ws = [], []
    for i in range(len(reps)):
        left = inv[i] * g
        for j, r in enumerate(reps):
            y = left * r
            if y in H:
                cols.append(j)
                ws.append(chi(y))
                break
        else:
            raise AssertionError("coset representatives do not cover G")
    return MonomialMatrix(tuple(cols), tuple(ws))


def monomial_charpoly(M: MonomialMatrix) -> LocalFactor:
    """``det(I - M T)``: each weighted cycle of length ``k`` gives ``(k, product)``."""
    n = M.dimension
    seen = [False] * n
    factors = []
    for start in range(n):
        if seen[start]:
            continue
        k = 0
        w = RootOfUnity.one()
        i = start
        while not seen[i]:
            seen[i] = True
            w = w * M.weights[i]
            k += 1
            i = M.columns[i]
        factors.append((k, w))
    return LocalFactor(factors)


# -- class functions --------------------------------------------------------------------


class ClassFunction:
    """One cyclotomic value per conjugacy class of ``group``."""

    def __init__(self, group: FinGroup, values: Sequence):
        self.group = group
        self.values = tuple(v if isinstance(v, CycloElem) else CycloElem.rational(v) for v in values)
        if len(self.values) != len(conjugacy_classes(group)):
            raise ValueError("one value per conjugacy class required")

    def __call__(self, g: Permutation) -> CycloElem:
        return self.values[self.group.class_index(g)]

    @property
    def degree(self) -> CycloElem:
        return self.values[0]

    def _check(self, other: "ClassFunction") -> None:
        if other.group is not self.group:
            raise GroupMismatch("class functions on different groups")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [v.conjugate() for v in self.values])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return other.group is self.group and all(a == b for a, b in zip(self.values, other.values))

    __hash__ = None

    def is_character_like(self) -> bool:
        d = self.degree
        if not d.is_rational() or d.to_rational() <= 0 or d.to_rational().denominator != 1:
            return False
        n = inner_product(self, self)
        return n.is_rational() and n.to_rational() > 0 and n.to_rational().denominator == 1

    def __repr__(self) -> str:
        return "ClassFunction(" + ", ".join(str(v) for v in self.values) + ")"


def inner_product(f1: ClassFunction, f2: ClassFunction) -> CycloElem:
    """``(1/|G|) Σ_g f1(g) conj(f2(g))``, exactly."""
    if f1.group is not f2.group:
        raise GroupMismatch("class functions on different groups")
    G = f1.group
    total = CycloElem.rational(0)
    for c, a, b in zip(conjugacy_classes(G), f1.values, f2.values):
        total = total + a * b.conjugate() * c.size
    return total / G.order


def induced_character(G: FinGroup, H: FinGroup, chi: SubgroupCharacter | None = None) -> ClassFunction:
    """Character of ``Ind_H^G(chi)``: sum of ``chi(r^-1 g r)`` over cosets fixed by ``g``."""
    if chi is None:
        chi = SubgroupCharacter.trivial(G, H)
    table = coset_table(G, H)
    values = []
    for c in conjugacy_classes(G):
        g = c.representative
        total = CycloElem.rational(0)
        for i, r in enumerate(table.representatives):
            if table.act(g, i) == i:
                total = total + CycloElem.root(chi(r.inverse() * g * r))
        values.append(total)
    return ClassFunction(G, values)


def restrict_class_function(f: ClassFunction, H: FinGroup) -> ClassFunction:
    return ClassFunction(H, [f(c.representative) for c in conjugacy_classes(H)])


def subgroup_character_as_class_function(chi: SubgroupCharacter) -> ClassFunction:
    H = chi.subgroup
    return ClassFunction(H, [CycloElem.root(chi(c.representative)) for c in conjugacy_classes(H)])


# -- character tables ---------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _nullspace_mod(mat: list[list[int]], q: int) -> list[list[int]]:
    rows = [list(r) for r in mat]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % q), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [x * inv % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % q:
                f = rows[i][c]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fcol]) % q
        basis.append(v)
    return basis


def _rref_mod(vectors: list[list[int]], q: int) -> tuple[list[list[int]], list[int]]:
    rows = [list(v) for v in vectors]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % q), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [x * inv % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % q:
                f = rows[i][c]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _split(space: list[list[int]], M: list[list[int]], q: int) -> list[list[list[int]]]:
    """Split an ``M``-invariant subspace into eigenspaces of ``M`` over ``F_q``."""
    basis, pivots = _rref_mod(space, q)
    k = len(basis)
    r = len(M)
    images = [[sum(M[j][t] * b[t] for t in range(r)) % q for j in range(r)] for b in basis]
    # A[s][t] is the coordinate of M b_t along b_s
    A = [[images[t][pivots[s]] for t in range(k)] for s in range(k)]
    parts = []
    found = 0
    for lam in range(q):
        shifted = [[(A[s][t] - (lam if s == t else 0)) % q for t in range(k)] for s in range(k)]
        null = _nullspace_mod(shifted, q)
        if null:
            parts.append([[sum(c[s] * basis[s][x] for s in range(k)) % q for x in range(r)] for c in null])
            found += len(null)
            if found == k:
                break
    if found != k:
        raise ArithmeticError("class matrix not diagonalizable over the chosen field")
    return parts


def character_table(G: FinGroup, cap: int | None = None) -> list[ClassFunction]:
    """All irreducible characters of ``G`` (class-matrix eigenvector method).

    Common eigenvectors of the class-sum structure matrices are found over
    ``F_q`` with ``q = 1 mod exp(G)`` and ``q > 2 sqrt|G|``; values are lifted
    to ``Q(zeta_exp)`` by counting eigenvalue multiplicities.
    """
    limit = caps.cap("lattice") if cap is None else cap
    if G.order > limit:
        raise CapExceeded(f"group order {G.order} above cap {limit}")
    classes = conjugacy_classes(G)
    r = len(classes)
    class_of = G._class_of
    order = G.order
    e = G.exponent()
    q = e + 1
    while not (_is_prime(q) and q * q > 4 * order):
        q += e
    inverses = [x.inverse() for x in G.elements]
    # const[i][j][k] = #{x in C_i : x^-1 z_k in C_j}
    const = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k, c in enumerate(classes):
        z = c.representative
        for xi, x in enumerate(G.elements):
            y = inverses[xi] * z
            const[class_of[xi]][class_of[G.index(y)]][k] += 1
    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    for i in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        M = [[const[i][j][k] % q for k in range(r)] for j in range(r)]
        new = []
        for s in spaces:
            new.extend([s] if len(s) == 1 else _split(s, M, q))
        spaces = new
    if len(spaces) != r or any(len(s) != 1 for s in spaces):
        raise ArithmeticError("failed to separate irreducible characters")
    inv_class = [class_of[G.index(c.representative.inverse())] for c in classes]
    sizes = [c.size for c in classes]
    gen = next(a for a in range(2, q) if all(pow(a, (q - 1) // p, q) != 1 for p in _prime_factors(q - 1))) if q > 2 else 1
    z = pow(gen, (q - 1) // e, q)
    powers = [[class_of[G.index(c.representative ** t)] for t in range(e)] for c in classes]
    inv_e = pow(e, -1, q)
    rows = []
    for (v,) in spaces:
        scale = pow(v[0], -1, q)
        omega = [x * scale % q for x in v]
        s = sum(omega[k] * omega[inv_class[k]] * pow(sizes[k], -1, q) for k in range(r)) % q
        d2 = order * pow(s, -1, q) % q
        d = next((d for d in range(1, math.isqrt(order) + 1) if d * d % q == d2), None)
        if d is None:
            raise ArithmeticError("no character degree matches")
        chi_mod = [omega[k] * d * pow(sizes[k], -1, q) % q for k in range(r)]
        values = []
        for k in range(r):
            mults = []
            for j in range(e):
                acc = sum(chi_mod[powers[k][t]] * pow(z, (-j * t) % e, q) for t in range(e))
                m = acc * inv_e % q
                if m > d:
                    raise ArithmeticError("eigenvalue multiplicity out of range")
                mults.append(m)
            values.append(CycloElem(e, mults))
        rows.append(ClassFunction(G, values))
    rows.sort(key=lambda f: f.degree.to_rational())
    return rows


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def decompose(f: ClassFunction, table: Sequence[ClassFunction]) -> list[Fraction]:
    return [inner_product(f, psi).to_rational() for psi in table]


# -- comparison properties --------------------------------------------------------------


def is_subrep(G: FinGroup, H: FinGroup, H2: FinGroup, table: Sequence[ClassFunction] | None = None) -> bool:
    """Whether ``Ind_H 1`` is a subrepresentation of ``Ind_H2 1``."""
    table = character_table(G) if table is None else table
    a = decompose(induced_character(G, H), table)
    b = decompose(induced_character(G, H2), table)
    return all(x <= y for x, y in zip(a, b))


@dataclass
class ClassEvidence:
    index: int
    representative: Permutation
    size: int
    count_h: int
    count_h2: int
    factor_h: LocalFactor
    factor_h2: LocalFactor

    @property
    def divides(self) -> bool:
        return localfactor_divides(self.factor_h, self.factor_h2)


def class_evidence(
    G: FinGroup,
    H: FinGroup,
    H2: FinGroup,
    chi: SubgroupCharacter | None = None,
    chi2: SubgroupCharacter | None = None,
) -> list[ClassEvidence]:
    """Per-class intersection counts and local factors for ``(H, H2)``."""
    chi = SubgroupCharacter.trivial(G, H) if chi is None else chi
    chi2 = SubgroupCharacter.trivial(G, H2) if chi2 is None else chi2
    rows = []
    for c in conjugacy_classes(G):
        g = c.representative
        rows.append(
            ClassEvidence(
                c.index,
                g,
                c.size,
                class_intersection_count(c, H),
                class_intersection_count(c, H2),
                induced_local_factor(G, H, chi, g),
                induced_local_factor(G, H2, chi2, g),
            )
        )
    return rows


@dataclass
class PropertyResult:
    holds: bool
    evidence: list
    witness: int | None = None  # first failing class index

    def __bool__(self) -> bool:
        return self.holds


def property_2(G: FinGroup, H: FinGroup, H2: FinGroup, evidence=None) -> PropertyResult:
    """``|c ∩ H| >= |c ∩ H2|`` for every class ``c``."""
    ev = class_evidence(G, H, H2) if evidence is None else evidence
    bad = next((r.index for r in ev if r.count_h < r.count_h2), None)
    return PropertyResult(bad is None, ev, bad)


def property_3(G: FinGroup, H: FinGroup, H2: FinGroup, evidence=None) -> PropertyResult:
    """The local factor of ``Ind_H 1`` divides that of ``Ind_H2 1`` at every class."""
    ev = class_evidence(G, H, H2) if evidence is None else evidence
    bad = next((r.index for r in ev if not r.divides), None)
    return PropertyResult(bad is None, ev, bad)


def property_1(G: FinGroup, H: FinGroup, H2: FinGroup, evidence=None) -> PropertyResult:
    """Zeta divisibility; identical to :func:`property_3` with trivial characters."""
    return property_3(G, H, H2, evidence)


def property_4(G: FinGroup, H: FinGroup, H2: FinGroup, table=None) -> PropertyResult:
    return PropertyResult(is_subrep(G, H, H2, table), [])


def gassmann_equivalent(G: FinGroup, H: FinGroup, H2: FinGroup) -> bool:
    """Equal class intersection counts; cross-checked against permutation characters."""
    counts = all(
        class_intersection_count(c, H) == class_intersection_count(c, H2) for c in conjugacy_classes(G)
    )
    chars = H.order == H2.order and induced_character(G, H) == induced_character(G, H2)
    if counts != chars:
        raise AssertionError("intersection counts and permutation characters disagree")
    return counts


def local_factor_table(G: FinGroup, H: FinGroup, chi: SubgroupCharacter | None = None) -> list[LocalFactor]:
    chi = SubgroupCharacter.trivial(G, H) if chi is None else chi
    return [induced_local_factor(G, H, chi, c.representative) for c in conjugacy_classes(G)]


def table_divides(a: Iterable[LocalFactor], b: Iterable[LocalFactor]) -> bool:
    return all(localfactor_divides(x, y) for x, y in zip(a, b))
