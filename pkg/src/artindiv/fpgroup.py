"""Finitely presented groups and HLT coset enumeration."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from . import caps
from .errors import CapExceeded, ParseError
from .permgroup import FinGroup, Permutation, group_from_generators

Letter = tuple  # (symbol, +1 or -1)


def free_reduce(word: Sequence[Letter]) -> tuple:
    out: list[Letter] = []
    for sym, e in word:
        if out and out[-1][0] == sym and out[-1][1] == -e:
            out.pop()
        else:
            out.append((sym, e))
    return tuple(out)


def invert_word(word: Sequence[Letter]) -> tuple:
    return tuple((s, -e) for s, e in reversed(word))


def format_word(word: Sequence[Letter]) -> str:
    """Inverse of :func:`parse_word`, run-length encoded: ``a d^-1 c^-1``."""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        sym, e = word[i]
        j = i
        while j < len(word) and word[j] == (sym, e):
            j += 1
        power = (j - i) * e
        parts.append(sym if power == 1 else f"{sym}^{power}")
        i = j
    return " ".join(parts)


_TOKEN = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)(?:\s*\^\s*(-?\d+))?")


def parse_word(text: str, generators: Sequence[str]) -> tuple:
    """Parse ``a d^-1 c^-1``; ``1`` or ``e`` (if not a generator) is the empty word.

    Juxtaposed single-letter generators (``ac^2``) are split when the generator
    names are all single letters.
    """
    gens = set(generators)
    text = text.strip()
    if text in ("1", "") or (text == "e" and "e" not in gens):
        return ()
    word: list[Letter] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad word {text!r} at position {pos}")
        name, power = m.group(1), int(m.group(2)) if m.group(2) else 1
        if name in gens:
            syms = [name]
        elif all(ch in gens for ch in name):
            syms = list(name)
        else:
            raise ParseError(f"unknown generator in {name!r}")
        for s in syms[:-1]:
            word.append((s, 1))
        last = syms[-1]
        word.extend([(last, 1 if power > 0 else -1)] * abs(power))
        pos = m.end()
    return free_reduce(word)


def parse_relation(text: str, generators: Sequence[str]) -> tuple:
    """A relator, or ``lhs = rhs`` turned into the relator ``lhs rhs^-1``."""
    if "=" in text:
        lhs, rhs = text.split("=", 1)
        return free_reduce(parse_word(lhs, generators) + invert_word(parse_word(rhs, generators)))
    return parse_word(text, generators)


@dataclass
class Presentation:
    generators: tuple
    relators: tuple
    subgroup: tuple = ()  # words from optional ``sub:`` lines

    def __post_init__(self):
        names = set(self.generators)
        for w in self.relators + self.subgroup:
            for sym, e in w:
                if sym not in names or e not in (1, -1):
                    raise ParseError(f"undeclared letter {sym!r}")

    def word(self, text: str) -> tuple:
        return parse_word(text, self.generators)


def parse_presentation(text: str) -> Presentation:
    """``gens: a b c d``, then ``rel: <word>`` and optional ``sub: <word>`` lines."""
    gens: list[str] | None = None
    rels, subs = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        if key == "gens":
            gens = value.split()
        elif gens is None:
            raise ParseError(f"line {lineno}: {key!r} before 'gens'")
        elif key == "rel":
            rels.append(parse_relation(value, gens))
        elif key == "sub":
            subs.append(parse_word(value, gens))
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    if gens is None:
        raise ParseError("missing 'gens' line")
    return Presentation(tuple(gens), tuple(rels), tuple(subs))


def format_presentation(pres: Presentation) -> str:
    lines = ["gens: " + " ".join(pres.generators)]
    lines += ["rel: " + format_word(r) for r in pres.relators]
    lines += ["sub: " + format_word(w) for w in pres.subgroup]
    return "\n".join(lines) + "\n"


@dataclass
class FpCosetTable:
    """Complete coset table; ``table[c][2*j]`` is ``c·g_j``, ``table[c][2*j+1]`` is ``c·g_j^-1``."""

    presentation: Presentation
    subgroup: tuple
    table: list = field(repr=False)

    @property
    def index(self) -> int:
        return len(self.table)

    def column(self, sym: str, e: int = 1) -> int:
        return 2 * self.presentation.generators.index(sym) + (0 if e == 1 else 1)

    def act(self, coset: int, word: Sequence[Letter]) -> int:
        for sym, e in word:
            coset = self.table[coset][self.column(sym, e)]
        return coset


class _Enumerator:
    """HLT enumeration with union-find coincidence processing."""

    def __init__(self, ncols: int, limit: int):
        self.ncols = ncols
        self.limit = limit
        self.table: list[list[int | None]] = [[None] * ncols]
        self.parent = [0]

    @staticmethod
    def inv(x: int) -> int:
        return x ^ 1

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        n = len(self.table)
        if n >= self.limit:
            raise CapExceeded(f"coset enumeration passed cap {self.limit}")
        self.table.append([None] * self.ncols)
        self.parent.append(n)
        self.table[c][x] = n
        self.table[n][self.inv(x)] = c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = self.table[g]
            for x in range(self.ncols):
                d = row[x]
                if d is None:
                    continue
                xi = self.inv(x)
                self.table[d][xi] = None
                mu, nu = self.rep(g), self.rep(d)
                if self.table[mu][x] is not None:
                    self.merge(nu, self.table[mu][x], queue)
                elif self.table[nu][xi] is not None:
                    self.merge(mu, self.table[nu][xi], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][xi] = mu

    def scan_and_fill(self, c: int, word: Sequence[int]) -> None:
        table = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][self.inv(word[j])] is not None:
                b = table[b][self.inv(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][self.inv(word[i])] = f
                return
            self.define(f, word[i])

    def run(self, relators: list[list[int]], subgens: list[list[int]]) -> list[list[int]]:
        for w in subgens:
            self.scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            for w in relators:
                if not self.live(c):
                    break
                self.scan_and_fill(c, w)
            if self.live(c):
                for x in range(self.ncols):
                    if self.table[c][x] is None:
                        self.define(c, x)
            c += 1
        live = [c for c in range(len(self.table)) if self.live(c)]
        renum = {c: k for k, c in enumerate(live)}
        return [[renum[self.rep(self.table[c][x])] for x in range(self.ncols)] for c in live]


def todd_coxeter(pres: Presentation, subgroup: Sequence[Sequence[Letter]] = (), cap: int | None = None) -> FpCosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup`` words."""
    limit = caps.cap("cosets") if cap is None else cap
    if limit < 1:
        raise ValueError("cap must be >= 1")
    cols = {}
    for j, s in enumerate(pres.generators):
        cols[(s, 1)] = 2 * j
        cols[(s, -1)] = 2 * j + 1

    def encode(w):
        return [cols[letter] for letter in free_reduce(w)]

    enum = _Enumerator(2 * len(pres.generators), limit)
    table = enum.run([encode(r) for r in pres.relators if r], [encode(w) for w in subgroup if w])
    return FpCosetTable(pres, tuple(tuple(w) for w in subgroup), table)


@dataclass
class RegularRep:
    """The right-regular permutation image of a finitely presented group."""

    presentation: Presentation
    group: FinGroup
    images: dict  # generator symbol -> Permutation

    def __call__(self, word) -> Permutation:
        if isinstance(word, str):
            word = self.presentation.word(word)
        x = self.group.identity
        for sym, e in word:
            g = self.images[sym]
            x = x * (g if e == 1 else g.inverse())
        return x

    def shortest_words(self) -> dict:
        """A shortest word for every element (breadth-first over ``g, g^-1`` in generator order)."""
        letters = [(s, e) for s in self.presentation.generators for e in (1, -1)]
        ident = self.group.identity
        words = {ident: ()}
        queue = [ident]
        k = 0
        while k < len(queue):
            x = queue[k]
            for sym, e in letters:
                g = self.images[sym]
                y = x * (g if e == 1 else g.inverse())
                if y not in words:
                    words[y] = words[x] + ((sym, e),)
                    queue.append(y)
            k += 1
        return words

    def subgroup(self, words) -> FinGroup:
        from .permgroup import subgroup

        return subgroup(self.group, [self(w) for w in words])


def regular_rep(pres: Presentation, cap: int | None = None) -> RegularRep:
    """Permutation group of the action on cosets of the trivial subgroup.

    Generator ``g`` is sent to ``u -> u g^-1`` so that words multiply the same
    way as permutations (``(p*q)(i) = p(q(i))``).
    """
    tc = todd_coxeter(pres, (), cap=cap)
    images = {}
    for j, s in enumerate(pres.generators):
        images[s] = Permutation._raw(row[2 * j + 1] for row in tc.table)
    gens = [images[s] for s in pres.generators]
    G = group_from_generators(gens, degree=tc.index)
    return RegularRep(pres, G, images)


# the order-128 group used for the third comparison table
COUNTEREXAMPLE_128 = """\
# order 128; a^4 = b^4 = c^4 = 1 is given as three relators
gens: a b c d
rel: a^4
rel: b^4
rel: c^4
rel: d^2 = a^-1
rel: a b = b a
rel: c a c^-1 = a^-1 b
rel: a d = d a
rel: c b c^-1 = a^2 b
rel: d b d^-1 = a^2 b^-1
rel: d c d^-1 = a^-1 c^-1
"""
