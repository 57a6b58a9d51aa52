"""Explicitly enumerated finite permutation groups.

Elements are stored as :class:`Permutation` tuples and every group keeps a
full, deterministic list of its elements (breadth-first closure over the
generators, in input order).  There is no stabilizer chain; everything is
meant for desk-scale groups.

Multiplication convention: ``(p * q)(i) == p(q(i))``, i.e. ``q`` acts first.
With this convention the action of ``G`` on left cosets ``gH`` is a
homomorphism.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import caps
from .errors import CapExceeded, DegreeMismatch, NotAbelian, NotASubgroup, NotNormal, ParseError


class Permutation(tuple):
    """A bijection of ``{0, ..., n-1}``, stored as the tuple of images."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        t = tuple.__new__(cls, images)
        if sorted(t) != list(range(len(t))):
            raise ValueError(f"not a permutation: {tuple(t)}")
        return t

    @classmethod
    def _raw(cls, images) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]], one_based: bool = False) -> "Permutation":
        images = list(range(degree))
        seen: set[int] = set()
        off = 1 if one_based else 0
        for cyc in cycles:
            pts = [c - off for c in cyc]
            for p in pts:
                if not 0 <= p < degree or p in seen:
                    raise ValueError(f"bad cycle {tuple(cyc)} for degree {degree}")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls._raw(images)

    @property
    def degree(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation._raw(map(self.__getitem__, other))

    def __rmul__(self, other):
        return NotImplemented

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Permutation._raw(inv)

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(len(self))
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True))) if len(self) else 1

    def cycle_string(self) -> str:
        """1-based cycle notation, ``()`` for the identity."""
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={len(self)})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``(1 2)(3 4 5)`` or ``()``."""
    text = text.strip()
    if not re.fullmatch(r"(\([^()]*\)\s*)+", text):
        raise ParseError(f"bad cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = [int(tok) for tok in body.replace(",", " ").split()]
        if pts:
            cycles.append(pts)
    try:
        return Permutation.from_cycles(degree, cycles, one_based=True)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


class FinGroup:
    """A finite permutation group with all of its elements enumerated."""

    def __init__(self, degree: int, generators: Sequence[Permutation], elements: Sequence[Permutation]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        self._classes: list[ConjClass] | None = None
        self._class_of: list[int] | None = None
        self._table: list[list[int]] | None = None
        self._coset_tables: dict[frozenset, CosetTable] = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __repr__(self) -> str:
        return f"FinGroup(degree={self.degree}, order={self.order})"

    def index(self, x: Permutation) -> int:
        return self._index[x]

    @property
    def element_set(self) -> frozenset:
        return frozenset(self._index)

    def same_elements(self, other: "FinGroup") -> bool:
        return self.order == other.order and all(x in other for x in self.elements)

    def is_subgroup_of(self, other: "FinGroup") -> bool:
        return other.order % self.order == 0 and all(x in other for x in self.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def exponent(self) -> int:
        return math.lcm(*(c.representative.order() for c in conjugacy_classes(self)))

    # -- cached derived data -------------------------------------------------

    def mul_table(self) -> list[list[int]]:
        """``table[i][j]`` is the index of ``elements[i] * elements[j]``."""
        if self._table is None:
            idx = self._index
            els = self.elements
            self._table = [[idx[x * y] for y in els] for x in els]
        return self._table

    def classes(self) -> list["ConjClass"]:
        return conjugacy_classes(self)

    def class_index(self, x: Permutation) -> int:
        conjugacy_classes(self)
        return self._class_of[self._index[x]]


def _closure(degree: int, gens: Sequence[Permutation], limit: int) -> list[Permutation]:
    ident = Permutation.identity(degree)
    elements = [ident]
    seen = {ident}
    k = 0
    while k < len(elements):
        x = elements[k]
        for s in gens:
            y = x * s
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > limit:
                    raise CapExceeded(f"group closure passed cap {limit}")
        k += 1
    return elements


def group_from_generators(gens: Sequence[Permutation], cap: int | None = None, degree: int | None = None) -> FinGroup:
    """Enumerate the group generated by ``gens`` (breadth-first, input order)."""
    gens = [g if isinstance(g, Permutation) else Permutation(g) for g in gens]
    if degree is None:
        if not gens:
            raise DegreeMismatch("degree required for an empty generating set")
        degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise DegreeMismatch("generators of different degrees")
    limit = caps.cap("closure") if cap is None else cap
    if limit < 1:
        raise ValueError("cap must be >= 1")
    return FinGroup(degree, gens, _closure(degree, gens, limit))


def subgroup(G: FinGroup, gens: Sequence[Permutation]) -> FinGroup:
    H = group_from_generators(gens, cap=G.order, degree=G.degree)
    if not all(g in G for g in H.generators):
        raise NotASubgroup("generator outside the parent group")
    return H


def subgroup_from_elements(G: FinGroup, members: Iterable[Permutation]) -> FinGroup:
    """The subgroup generated by ``members``, with a short generating set."""
    gens: list[Permutation] = []
    current = {G.identity}
    H = None
    for x in members:
        if x not in current:
            gens.append(x)
            H = group_from_generators(gens, cap=G.order, degree=G.degree)
            current = H._index
    if H is None:
        H = group_from_generators([], degree=G.degree)
    if not all(g in G for g in gens):
        raise NotASubgroup("element outside the parent group")
    return H


def _require_subgroup(H: FinGroup, G: FinGroup) -> None:
    if H.degree != G.degree or not H.is_subgroup_of(G):
        raise NotASubgroup(f"order-{H.order} group is not a subgroup of the order-{G.order} group")


# -- conjugacy classes -------------------------------------------------------


@dataclass(frozen=True)
class ConjClass:
    representative: Permutation
    members: frozenset
    index: int = 0

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.members


def conjugacy_classes(G: FinGroup) -> list[ConjClass]:
    """Classes ordered by the enumeration index of their first element."""
    if G._classes is not None:
        return G._classes
    gens = [(s, s.inverse()) for s in G.generators]
    class_of = [-1] * G.order
    classes = []
    for i, x in enumerate(G.elements):
        if class_of[i] >= 0:
            continue
        k = len(classes)
        orbit = [x]
        class_of[i] = k
        j = 0
        while j < len(orbit):
            y = orbit[j]
            for s, si in gens:
                z = s * y * si
                zi = G._index[z]
                if class_of[zi] < 0:
                    class_of[zi] = k
                    orbit.append(z)
            j += 1
        classes.append(ConjClass(x, frozenset(orbit), k))
    G._classes = classes
    G._class_of = class_of
    return classes


def class_intersection_count(c: ConjClass, H: FinGroup, G: FinGroup | None = None) -> int:
    """``|c ∩ H|``."""
    if G is not None:
        _require_subgroup(H, G)
    elif H.degree != c.representative.degree:
        raise NotASubgroup("degree mismatch")
    if H.order < c.size:
        return sum(1 for h in H.elements if h in c.members)
    return sum(1 for x in c.members if x in H)


# -- cosets --------------------------------------------------------------------


@dataclass
class CosetTable:
    """Left cosets ``r_i H`` and the left-multiplication action of ``G``."""

    group: FinGroup
    subgroup: FinGroup
    representatives: tuple
    action: tuple  # one Permutation of coset indices per generator of ``group``
    coset_of: dict = field(repr=False)

    @property
    def index(self) -> int:
        return len(self.representatives)

    def act(self, g: Permutation, i: int) -> int:
        """Index of the coset ``g r_i H``."""
        return self.coset_of[g * self.representatives[i]]

    def permutation(self, g: Permutation) -> Permutation:
        return Permutation._raw(self.act(g, i) for i in range(self.index))


def coset_table(G: FinGroup, H: FinGroup) -> CosetTable:
    """Left cosets of ``H``; each representative is the least element of its coset."""
    key = H.element_set
    cached = G._coset_tables.get(key)
    if cached is not None:
        return cached
    _require_subgroup(H, G)
    coset_of: dict[Permutation, int] = {}
    reps = []
    for x in G.elements:
        if x in coset_of:
            continue
        k = len(reps)
        reps.append(x)
        for h in H.elements:
            coset_of[x * h] = k
    table = CosetTable(G, H, tuple(reps), (), coset_of)
    table.action = tuple(table.permutation(s) for s in G.generators)
    G._coset_tables[key] = table
    return table


def normal_core(G: FinGroup, H: FinGroup) -> FinGroup:
    """The intersection of all conjugates ``g H g^-1``."""
    _require_subgroup(H, G)
    pairs = [(g, g.inverse()) for g in G.elements]
    members = [x for x in H.elements if all(gi * x * g in H for g, gi in pairs)]
    return subgroup_from_elements(G, members)


def is_normal(G: FinGroup, N: FinGroup) -> bool:
    return all(s * n * s.inverse() in N for s in G.generators for n in N.generators)


def normal_closure(G: FinGroup, gens: Sequence[Permutation]) -> FinGroup:
    N = group_from_generators(list(gens), cap=G.order, degree=G.degree)
    gens = list(N.generators)
    changed = True
    while changed:
        changed = False
        for s in G.generators:
            si = s.inverse()
            for n in list(gens):
                y = s * n * si
                if y not in N:
                    gens.append(y)
                    N = group_from_generators(gens, cap=G.order, degree=G.degree)
                    changed = True
    return N


def commutator_subgroup(H: FinGroup) -> FinGroup:
    comms = []
    seen = set()
    gens = H.generators
    for a in gens:
        for b in gens:
            c = a.inverse() * b.inverse() * a * b
            if not c.is_identity() and c not in seen:
                seen.add(c)
                comms.append(c)
    return normal_closure(H, comms)


def quotient_map(G: FinGroup, N: FinGroup) -> tuple[FinGroup, dict]:
    """``G/N`` as a permutation group on the cosets of ``N``, with the projection."""
    _require_subgroup(N, G)
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    table = coset_table(G, N)
    images = {}
    for x in G.elements:
        images[x] = table.permutation(x)
    Q = group_from_generators(list(table.action), degree=table.index)
    return Q, images


def quotient(G: FinGroup, N: FinGroup) -> FinGroup:
    return quotient_map(G, N)[0]


# -- abelian groups ------------------------------------------------------------


@dataclass
class AbelianBasis:
    """Independent generators with orders ``d_1 | d_2 | ...``."""

    group: FinGroup
    generators: tuple
    orders: tuple
    coordinates: dict = field(repr=False)

    def element(self, exponents: Sequence[int]) -> Permutation:
        x = self.group.identity
        for g, e in zip(self.generators, exponents):
            x = x * g ** e
        return x


def abelian_basis(A: FinGroup) -> AbelianBasis:
    if not A.is_abelian():
        raise NotAbelian("group is not abelian")
    gens: list[Permutation] = []
    orders: list[int] = []
    current = A
    while current.order > 1:
        g = max(current.elements, key=lambda x: x.order())
        cyc = subgroup(current, [g])
        target = current.order // cyc.order
        complement = None
        for K in all_subgroups(current, cap=max(current.order, 1)).subgroups:
            if K.order == target and all(x == current.identity or x not in cyc for x in K.elements):
                complement = K
                break
        assert complement is not None, "max-order element without a complement"
        gens.append(g)
        orders.append(cyc.order)
        current = complement
    gens.reverse()
    orders.reverse()
    coords: dict[Permutation, tuple] = {}
    tuples = [()]
    for d in orders:
        tuples = [t + (e,) for t in tuples for e in range(d)]
    for t in tuples:
        x = A.identity
        for g, e in zip(gens, t):
            x = x * g ** e
        coords[x] = t
    assert len(coords) == A.order
    return AbelianBasis(A, tuple(gens), tuple(orders), coords)


# -- subgroup lattice ----------------------------------------------------------


@dataclass
class SubgroupLattice:
    group: FinGroup
    subgroups: list  # FinGroup, ordered by (order, sorted element indices)
    classes: list  # lists of indices into ``subgroups``
    class_of: list

    def class_representatives(self) -> list[FinGroup]:
        return [self.subgroups[c[0]] for c in self.classes]


def all_subgroups(G: FinGroup, cap: int | None = None) -> SubgroupLattice:
    """Every subgroup of ``G`` once, grouped into conjugacy classes.

    Cyclic subgroups seed the search; existing subgroups are joined with
    cyclic ones until nothing new appears.
    """
    limit = caps.cap("lattice") if cap is None else cap
    if G.order > limit:
        raise CapExceeded(f"group order {G.order} above lattice cap {limit}")
    n = G.order
    table = G.mul_table()

    def close(gens: list[int], start: list[int] | None = None) -> tuple[int, list[int]]:
        elems = list(start) if start else [0]
        mask = 0
        for e in elems:
            mask |= 1 << e
        k = 0
        while k < len(elems):
            row = table[elems[k]]
            for s in gens:
                y = row[s]
                if not mask >> y & 1:
                    mask |= 1 << y
                    elems.append(y)
            k += 1
        return mask, elems

    found: dict[int, tuple[list[int], list[int]]] = {}
    order: list[int] = []
    cyclic: list[tuple[int, int]] = []
    for i in range(n):
        mask, elems = close([i])
        if mask not in found:
            found[mask] = ([i] if i else [], elems)
            order.append(mask)
            cyclic.append((i, mask))
    k = 0
    while k < len(order):
        smask = order[k]
        sgens, selems = found[smask]
        for x, cmask in cyclic:
            if cmask & ~smask == 0:
                continue
            mask, elems = close(sgens + [x], selems)
            if mask not in found:
                found[mask] = (sgens + [x], elems)
                order.append(mask)
        k += 1

    def sort_key(mask: int):
        return (len(found[mask][1]), sorted(found[mask][1]))

    masks = sorted(order, key=sort_key)
    pos = {m: i for i, m in enumerate(masks)}

    # conjugacy classes of subgroups: orbits under conjugation by generators
    inv = [row.index(0) for row in table]
    conj_maps = []
    for s in G.generators:
        si = G.index(s)
        conj_maps.append([table[table[si][x]][inv[si]] for x in range(n)])
    parent = list(range(len(masks)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, m in enumerate(masks):
        elems = found[m][1]
        for cm in conj_maps:
            img = 0
            for e in elems:
                img |= 1 << cm[e]
            a, b = find(i), find(pos[img])
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes: dict[int, list[int]] = {}
    for i in range(len(masks)):
        classes.setdefault(find(i), []).append(i)
    class_list = [classes[r] for r in sorted(classes)]
    class_of = [0] * len(masks)
    for ci, members in enumerate(class_list):
        for i in members:
            class_of[i] = ci

    els = G.elements
    subgroups = [
        group_from_generators([els[g] for g in found[m][0]], cap=n, degree=G.degree) for m in masks
    ]
    return SubgroupLattice(G, subgroups, class_list, class_of)


def are_conjugate_subgroups(G: FinGroup, H1: FinGroup, H2: FinGroup) -> tuple[bool, Permutation | None]:
    """Return ``(True, g)`` with ``g H1 g^-1 == H2``, else ``(False, None)``."""
    _require_subgroup(H1, G)
    _require_subgroup(H2, G)
    if H1.order != H2.order:
        return False, None
    for g in G.elements:
        gi = g.inverse()
        if all(g * h * gi in H2 for h in H1.generators):
            return True, g
    return False, None


# -- standard groups -----------------------------------------------------------


def symmetric_group(n: int) -> FinGroup:
    if n <= 1:
        return group_from_generators([], degree=max(n, 1))
    gens = [Permutation.from_cycles(n, [[0, 1]])]
    if n > 2:
        gens.append(Permutation.from_cycles(n, [list(range(n))]))
    return group_from_generators(gens, degree=n)


def alternating_group(n: int) -> FinGroup:
    if n <= 2:
        return group_from_generators([], degree=max(n, 1))
    gens = [Permutation.from_cycles(n, [[0, 1, k]]) for k in range(2, n)]
    return group_from_generators(gens, degree=n)


def cyclic_group(n: int) -> FinGroup:
    if n == 1:
        return group_from_generators([], degree=1)
    return group_from_generators([Permutation.from_cycles(n, [list(range(n))])], degree=n)


def dihedral_group(n: int) -> FinGroup:
    """Symmetries of the regular ``n``-gon (order ``2n``) on ``n`` points."""
    rot = Permutation.from_cycles(n, [list(range(n))])
    refl = Permutation._raw((-i) % n for i in range(n))
    return group_from_generators([rot, refl], degree=n)


def direct_product(G1: FinGroup, G2: FinGroup) -> FinGroup:
    """``G1 x G2`` acting on ``G1.degree + G2.degree`` points."""
    d1, d2 = G1.degree, G2.degree

    def left(p):
        return Permutation._raw(tuple(p) + tuple(range(d1, d1 + d2)))

    def right(p):
        return Permutation._raw(tuple(range(d1)) + tuple(i + d1 for i in p))

    gens = [left(g) for g in G1.generators] + [right(g) for g in G2.generators]
    return group_from_generators(gens, degree=d1 + d2)


# -- group files ---------------------------------------------------------------


def parse_group_file(text: str) -> tuple[int, list[Permutation]]:
    """Parse ``degree: n`` plus ``perm: (a b c)(d e)`` lines (1-based)."""
    degree = None
    gens: list[Permutation] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        if key == "degree":
            degree = int(value)
            if degree < 1:
                raise ParseError(f"line {lineno}: degree must be positive")
        elif key == "perm":
            if degree is None:
                raise ParseError(f"line {lineno}: 'perm' before 'degree'")
            gens.append(parse_cycles(value, degree))
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    if degree is None:
        raise ParseError("missing 'degree' line")
    return degree, gens


def format_group_file(degree: int, gens: Sequence[Permutation]) -> str:
    lines = [f"degree: {degree}"]
    lines += [f"perm: {g.cycle_string()}" for g in gens]
    return "\n".join(lines) + "\n"
