"""End-to-end reproductions on finite Galois models.

Every scenario produces an :class:`EvidenceTable`: per-row data, computed
verdicts, the verdicts the scenario expects, and free-form notes.  Rows that
carry ``factorH``/``factorH2`` strings can be re-audited from the strings
alone.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import LocalFactor, RootOfUnity, localfactor_divides, parse_local_factor
from .artin import (
    SubgroupCharacter,
    character_table,
    class_evidence,
    induced_character,
    induced_local_factor,
    induced_matrix,
    inner_product,
    is_subrep,
    linear_characters,
    local_factor_table,
    monomial_charpoly,
)
from .errors import NotASubgroup, WitnessNotFound
from .fpgroup import COUNTEREXAMPLE_128, format_word, parse_presentation, regular_rep
from .permgroup import (
    FinGroup,
    Permutation,
    all_subgroups,
    conjugacy_classes,
    coset_table,
    cyclic_group,
    direct_product,
    group_from_generators,
    subgroup,
    subgroup_from_elements,
    symmetric_group,
)

SCHEMA = 1


@dataclass
class EvidenceTable:
    scenario: str
    rows: list = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    columns: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """All expected verdicts hold (and the table audits cleanly)."""
        return all(self.verdicts.get(k) == v for k, v in self.expected.items()) and not self.audit()

    def audit(self) -> list[str]:
        """Recompute row-level divisibility and the aggregate from the stored strings."""
        problems = []
        recomputed = []
        for i, row in enumerate(self.rows):
            if "factorH" in row and "factorH2" in row and "divides" in row:
                d = localfactor_divides(parse_local_factor(row["factorH"]), parse_local_factor(row["factorH2"]))
                recomputed.append(d)
                if d != row["divides"]:
                    problems.append(f"row {i}: stored divides={row['divides']} but recomputed {d}")
        if "divides_all" in self.verdicts and recomputed:
            if self.verdicts["divides_all"] != all(recomputed):
                problems.append("divides_all does not match the rows")
        if "property2" in self.verdicts and self.rows and "countH" in self.rows[0]:
            if self.verdicts["property2"] != all(r["countH"] >= r["countH2"] for r in self.rows):
                problems.append("property2 does not match the rows")
        return problems

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "scenario": self.scenario,
            "columns": self.columns,
            "rows": self.rows,
            "verdicts": self.verdicts,
            "expected": self.expected,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "EvidenceTable":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported schema {d.get('schema')!r}")
        return cls(d["scenario"], d["rows"], d["verdicts"], d.get("expected", {}), d["notes"], d.get("columns", {}))

    @classmethod
    def from_json(cls, text: str) -> "EvidenceTable":
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        """Aligned plain-text table for humans (no stability promise)."""
        out = [f"== {self.scenario}"]
        for k, v in self.columns.items():
            out.append(f"   {k}: {v}")
        if self.rows:
            keys = list(self.rows[0].keys())
            cells = [[str(k) for k in keys]] + [[_cell(r.get(k)) for k in keys] for r in self.rows]
            widths = [max(len(row[i]) for row in cells) for i in range(len(keys))]
            for j, row in enumerate(cells):
                out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
                if j == 0:
                    out.append("  ".join("-" * w for w in widths))
        for k, v in self.verdicts.items():
            exp = self.expected.get(k)
            mark = "" if exp is None else ("  [ok]" if exp == v else f"  [EXPECTED {exp}]")
            out.append(f"verdict {k}: {v}{mark}")
        for n in self.notes:
            out.append(f"note: {n}")
        return "\n".join(out)


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    return "" if v is None else str(v)


def cycle_label(g: Permutation) -> str:
    """Cycle-shape label such as ``(..)(..)``; ``()`` for the identity."""
    parts = [k for k in g.cycle_type() if k > 1]
    return "".join("(" + "." * k + ")" for k in parts) or "()"


def _perm(n: int, *cycles) -> Permutation:
    return Permutation.from_cycles(n, [list(c) for c in cycles])


def _evidence_rows(G, H, H2, labels=None, chi=None, chi2=None) -> list[dict]:
    rows = []
    for ev in class_evidence(G, H, H2, chi, chi2):
        rows.append(
            {
                "class": labels[ev.index] if labels else ev.index,
                "rep": ev.representative.cycle_string(),
                "size": ev.size,
                "countH": ev.count_h,
                "countH2": ev.count_h2,
                "factorH": str(ev.factor_h),
                "factorH2": str(ev.factor_h2),
                "divides": ev.divides,
            }
        )
    return rows


# -- comparison tables ---------------------------------------------------------------

# Reference values, keyed by cycle shape; columns named by subgroup.
REFERENCE_TABLE_1 = {
    "A4": {
        "()": "(1-T)^2",
        "(..)": "(1-T^2)",
        "(...)": "(1-T)^2",
        "(..)(..)": "(1-T)^2",
        "(....)": "(1-T^2)",
    },
    "S3": {
        "()": "(1-T)^4",
        "(..)": "(1-T)^2(1-T^2)",
        "(...)": "(1-T^2)^2",
        "(..)(..)": "(1-T)(1-T^3)",
        "(....)": "(1-T^4)",
    },
}

REFERENCE_TABLE_3 = [
    # class word, |c ∩ H|, |c ∩ H'|, factor for H, factor for H'
    ("e", 1, 1, "(1-T)^16", "(1-T)^32"),
    ("a c^2", 2, 1, "(1-T)^4(1-T^2)^6", "(1-T)^4(1-T^2)^14"),
    ("b^2", 1, 0, "(1-T)^16", "(1-T^2)^16"),
    ("b^3 c^3 d", 2, 2, "(1-T)^4(1-T^2)^6", "(1-T)^8(1-T^2)^12"),
    ("a^2 b^3 c^3 d", 2, 0, "(1-T)^4(1-T^2)^6", "(1-T^4)^8"),
]
TABLE_3_H = ("b^-2", "a c^2", "a d^-1 c^-1")
TABLE_3_H2 = ("a c^2", "a^-1 d c^-1 a")

SHAPE_ORDER = ["()", "(..)", "(...)", "(..)(..)", "(....)"]


def s4_setup() -> dict:
    S4 = symmetric_group(4)
    t = _perm(4, (0, 1))
    return {
        "G": S4,
        "A4": subgroup(S4, [_perm(4, (0, 1, 2)), _perm(4, (0, 1, 3))]),
        "S3": subgroup(S4, [t, _perm(4, (0, 1, 2))]),
        "C2": subgroup(S4, [_perm(4, (0, 1), (2, 3))]),
        "V4": subgroup(S4, [_perm(4, (0, 1), (2, 3)), _perm(4, (0, 2), (1, 3))]),
    }


def standard_character(G: FinGroup, table=None):
    """The degree-3 irreducible of ``S4`` equal to (fixed points - 1)."""
    table = character_table(G) if table is None else table
    t = _perm(4, (0, 1))
    return next(f for f in table if f.degree == 3 and f(t) == 1)


def subgroup_average(H: FinGroup, f) -> Fraction:
    """``<1_H, Res f>_H`` computed element by element on ``H``."""
    total = sum((f(h) for h in H.elements), start=f(H.identity) * 0)
    return (total / H.order).to_rational()


def _rows_sorted_by_shape(rows: list[dict]) -> list[dict]:
    return sorted(rows, key=lambda r: SHAPE_ORDER.index(r["class"]))


def reproduce_table_1() -> EvidenceTable:
    s = s4_setup()
    G, A4, S3 = s["G"], s["A4"], s["S3"]
    labels = [cycle_label(c.representative) for c in conjugacy_classes(G)]
    rows = _rows_sorted_by_shape(_evidence_rows(G, A4, S3, labels))
    notes = ["columns are labelled by subgroup (H = A4, H2 = S3 = <(1 2), (1 2 3)>), not by rho/rho'"]
    mismatched = []
    for row in rows:
        ref_h = REFERENCE_TABLE_1["A4"][row["class"]]
        ref_h2 = REFERENCE_TABLE_1["S3"][row["class"]]
        row["refH"] = ref_h
        row["refH2"] = ref_h2
        row["matchH"] = parse_local_factor(ref_h).same_factorization(parse_local_factor(row["factorH"]))
        row["matchH2"] = parse_local_factor(ref_h2).same_factorization(parse_local_factor(row["factorH2"]))
        if not row["matchH2"]:
            mismatched.append(row)
    swapped = False
    if len(mismatched) == 2:
        a, b = mismatched
        swapped = a["refH2"] == b["factorH2"] and b["refH2"] == a["factorH2"]
        if swapped:
            notes.append(
                f"reference S3 column: rows {a['class']} and {b['class']} are transposed relative to "
                f"direct computation ({a['class']} -> {a['factorH2']}, {b['class']} -> {b['factorH2']})"
            )
    for row in mismatched if not swapped else []:
        notes.append(f"reference S3 column differs at row {row['class']}")
    verdicts = {
        "divides_all": all(r["divides"] for r in rows),
        "property1": all(r["divides"] for r in rows),
        "property2": all(r["countH"] >= r["countH2"] for r in rows),
        "property3": all(r["divides"] for r in rows),
        "property4": is_subrep(G, A4, S3),
        "reference_A4_column_matches": all(r["matchH"] for r in rows),
        "reference_S3_rows_match": sum(r["matchH2"] for r in rows),
        "reference_S3_transposed_pair": swapped,
    }
    expected = {
        "property3": True,
        "property4": False,
        "reference_A4_column_matches": True,
        "reference_S3_rows_match": 3,
        "reference_S3_transposed_pair": True,
    }
    return EvidenceTable("S4: H=A4, H2=S3 (property 3 holds, property 4 fails)", rows, verdicts, expected, notes,
                         {"H": "A4", "H2": "S3 = <(1 2), (1 2 3)>"})


def reproduce_table_2() -> EvidenceTable:
    s = s4_setup()
    G, S3, C2 = s["G"], s["S3"], s["C2"]
    labels = [cycle_label(c.representative) for c in conjugacy_classes(G)]
    rows = _rows_sorted_by_shape(_evidence_rows(G, S3, C2, labels))
    table = character_table(G)
    std = standard_character(G, table)
    ip_c2 = inner_product(induced_character(G, C2), std).to_rational()
    ip_s3 = inner_product(induced_character(G, S3), std).to_rational()
    avg_c2 = subgroup_average(C2, std)
    avg_s3 = subgroup_average(S3, std)
    verdicts = {
        "divides_all": all(r["divides"] for r in rows),
        "property2": all(r["countH"] >= r["countH2"] for r in rows),
        "property3": all(r["divides"] for r in rows),
        "property4": is_subrep(G, S3, C2, table),
        "inner_Ind_C2_standard": str(ip_c2),
        "inner_Ind_S3_standard": str(ip_s3),
        "frobenius_C2": str(avg_c2),
        "frobenius_S3": str(avg_s3),
    }
    expected = {
        "property2": False,
        "property4": True,
        "inner_Ind_C2_standard": "1",
        "inner_Ind_S3_standard": "1",
        "frobenius_C2": "1",
        "frobenius_S3": "1",
    }
    notes = [
        "C2 side: (1/2)(1*3 + 1*(-1)) = 1",
        "S3 side: (1/6)(1*3 + 3*1 + 2*0) = 1",
    ]
    bad = [r["class"] for r in rows if r["countH"] < r["countH2"]]
    if bad:
        notes.append("property 2 fails at " + ", ".join(bad))
    return EvidenceTable("S4: H=S3, H2=<(1 2)(3 4)> (property 4 holds, property 2 fails)", rows, verdicts, expected,
                         notes, {"H": "S3 = <(1 2), (1 2 3)>", "H2": "C2 = <(1 2)(3 4)>"})


def group_128():
    """The order-128 group from its presentation, with ``H``, ``H'`` and the evaluator."""
    pres = parse_presentation(COUNTEREXAMPLE_128)
    rep = regular_rep(pres)
    H = rep.subgroup(TABLE_3_H)
    H2 = rep.subgroup(TABLE_3_H2)
    return rep, H, H2


def reproduce_table_3() -> EvidenceTable:
    rep, H, H2 = group_128()
    G = rep.group
    words = rep.shortest_words()
    named = {G.class_index(rep(w)): w for w, *_ in REFERENCE_TABLE_3}
    labels = []
    for c in conjugacy_classes(G):
        labels.append(named.get(c.index) or format_word(min((words[x] for x in c.members), key=lambda w: (len(w), w))))
    rows = _evidence_rows(G, H, H2, labels)
    for row in rows:
        row["rep"] = row["class"]
    reference_ok = True
    ref_by_label = {w: (ch, ch2, fh, fh2) for w, ch, ch2, fh, fh2 in REFERENCE_TABLE_3}
    for row in rows:
        ref = ref_by_label.get(row["class"])
        row["reference"] = ref is not None
        if ref is None:
            continue
        ch, ch2, fh, fh2 = ref
        match = (
            row["countH"] == ch
            and row["countH2"] == ch2
            and parse_local_factor(fh).same_factorization(parse_local_factor(row["factorH"]))
            and parse_local_factor(fh2).same_factorization(parse_local_factor(row["factorH2"]))
        )
        row["matchesReference"] = match
        reference_ok &= match
    failing = [r["class"] for r in rows if not r["divides"]]
    verdicts = {
        "order": G.order,
        "order_H": H.order,
        "order_H2": H2.order,
        "divides_all": not failing,
        "property2": all(r["countH"] >= r["countH2"] for r in rows),
        "property3": not failing,
        "property3_failures": failing,
        "reference_rows_match": reference_ok,
    }
    expected = {
        "order": 128,
        "order_H": 8,
        "order_H2": 4,
        "property2": True,
        "property3": False,
        "property3_failures": ["a^2 b^3 c^3 d"],
        "reference_rows_match": True,
    }
    notes = [
        "group enumerated from its presentation by coset enumeration over the trivial subgroup",
        "H = <" + ", ".join(TABLE_3_H) + ">, H2 = <" + ", ".join(TABLE_3_H2) + ">",
        "rows for classes meeting neither subgroup are labelled by a shortest word",
    ]
    return EvidenceTable("order-128 group: property 2 holds, property 3 fails", rows, verdicts, expected, notes,
                         {"H": "<" + ", ".join(TABLE_3_H) + ">", "H2": "<" + ", ".join(TABLE_3_H2) + ">"})


def reproduce_comparison_tables() -> list[EvidenceTable]:
    return [reproduce_table_1(), reproduce_table_2(), reproduce_table_3()]


# -- restriction map divisibility -------------------------------------------------------


def iota_divisibility_check(G: FinGroup, H: FinGroup, H2: FinGroup, chi: SubgroupCharacter | None = None,
                            scenario: str = "restriction divisibility") -> EvidenceTable:
    """For ``H2 <= H``: ``L(Ind_H chi)`` divides ``L(Ind_H2 Res chi)`` at every class."""
    if not H2.is_subgroup_of(H):
        raise NotASubgroup("H2 must be a subgroup of H")
    chi = SubgroupCharacter.trivial(G, H) if chi is None else chi
    res = chi.restrict(H2)
    rows = []
    for c in conjugacy_classes(G):
        g = c.representative
        a = induced_local_factor(G, H, chi, g)
        b = induced_local_factor(G, H2, res, g)
        rows.append({"class": c.index, "rep": g.cycle_string(), "factorH": str(a), "factorH2": str(b),
                     "divides": localfactor_divides(a, b)})
    verdicts = {"divides_all": all(r["divides"] for r in rows)}
    return EvidenceTable(scenario, rows, verdicts, {"divides_all": True}, [],
                         {"H": f"order {H.order}", "H2": f"order {H2.order}"})


# -- orbit matching ----------------------------------------------------------------------


def match_primes(a: LocalFactor, b: LocalFactor) -> list[tuple[int, int]] | None:
    """Pair each factor of ``a`` with a factor of ``b`` containing one of its roots.

    Returns ``[(i, j), ...]`` (indices into ``a.factors``/``b.factors``) or
    ``None`` when ``a`` does not divide ``b``.  Identical factors are paired
    first, so identical inputs give the identity pairing.
    """
    if not localfactor_divides(a, b):
        return None
    from .algebra import _factor_roots

    remaining = [_counter(_factor_roots(k, w)) for k, w in b.factors]
    used = [False] * len(b.factors)
    pairing: list = [None] * len(a.factors)
    for i, f in enumerate(a.factors):
        for j, g in enumerate(b.factors):
            if not used[j] and g == f:
                used[j] = True
                pairing[i] = j
                root = min(_factor_roots(*f))
                remaining[j][root] -= 1
                break
    for i, (k, w) in enumerate(a.factors):
        if pairing[i] is not None:
            continue
        root = min(_factor_roots(k, w))
        j = next((j for j, rem in enumerate(remaining) if rem[root] > 0), None)
        if j is None:
            return None
        remaining[j][root] -= 1
        pairing[i] = j
    return list(enumerate(pairing))


def _counter(items):
    from collections import Counter

    return Counter(items)


def match_prime_tables(table_a: Sequence[LocalFactor], table_b: Sequence[LocalFactor], g: int):
    return match_primes(table_a[g], table_b[g])


# -- small-l counterexample ------------------------------------------------------------------


def long_cycle(l: int) -> Permutation:
    return Permutation.from_cycles(l, [list(range(l))])


def totally_split_kernel(l: int) -> EvidenceTable:
    """Totally-split witnesses for ``S_l`` over ``<l-cycle>`` and the implied divisibility."""
    G = symmetric_group(l)
    sigma = long_cycle(l)
    H = subgroup(G, [sigma])
    chi_n = SubgroupCharacter.from_generator_images(G, [(sigma, RootOfUnity(l, 1))])
    table = coset_table(G, H)
    one = LocalFactor.trivial([1])
    rows = []
    for c in conjugacy_classes(G):
        g = c.representative
        powers = {g ** k for k in range(1, g.order())}
        powers.discard(G.identity)
        witness = None
        for i, x in enumerate(table.representatives):
            xi = x.inverse()
            if not any(xi * y * x in H for y in powers):
                witness = i
                break
        if witness is None:
            raise WitnessNotFound(f"no totally split coset for class {cycle_label(g)}")
        f = induced_local_factor(G, H, chi_n, g)
        rows.append({"class": cycle_label(g), "rep": g.cycle_string(), "witness": witness,
                     "witnessRep": table.representatives[witness].cycle_string(),
                     "factorH": str(one), "factorH2": str(f), "divides": localfactor_divides(one, f)})
    verdicts = {"classes": len(rows), "witnesses_found": True, "divides_all": all(r["divides"] for r in rows)}
    return EvidenceTable(f"totally split witnesses, S_{l} over C_{l}", rows, verdicts,
                         {"witnesses_found": True, "divides_all": True},
                         ["witness: a coset xH with <g> meeting xHx^-1 trivially",
                          "factorH2 is the local factor of Ind(chi_N) with chi_N faithful on C_l"])


@dataclass
class SmallLModel:
    l: int
    group: FinGroup  # S_l x C_l on 2l points
    subgroup: FinGroup  # <l-cycle> x C_l
    chi: SubgroupCharacter  # projection to C_l, on the whole group
    chi_n: SubgroupCharacter  # faithful on the first factor of the subgroup

    def psi(self, k: int = 1) -> SubgroupCharacter:
        """``psi(chi^k) = Res(chi^k) * chi_N^k``."""
        return (self.chi ** k).restrict(self.subgroup) * self.chi_n ** k


def small_l_model(l: int) -> SmallLModel:
    G = direct_product(symmetric_group(l), cyclic_group(l))
    sigma = Permutation._raw(tuple(long_cycle(l)) + tuple(range(l, 2 * l)))
    tau = Permutation._raw(tuple(range(l)) + tuple(l + (i + 1) % l for i in range(l)))
    Ht = subgroup(G, [sigma, tau])
    chi = SubgroupCharacter.from_function(G, G, lambda x: RootOfUnity(l, x[l] - l))
    chi_n = SubgroupCharacter.from_function(G, Ht, lambda x: RootOfUnity(l, x[0]))
    return SmallLModel(l, G, Ht, chi, chi_n)


def counterexample_small_l(l: int) -> EvidenceTable:
    """Divisibility without restriction: ``psi(chi) = Res(chi) chi_N`` on ``S_l x C_l``."""
    M = small_l_model(l)
    G, Ht = M.group, M.subgroup
    psis = {k: M.psi(k) for k in range(1, l)}
    chis = {k: M.chi ** k for k in range(1, l)}
    rows = []
    all_powers = True
    pairings = True
    for c in conjugacy_classes(G):
        x = c.representative
        g_part = Permutation._raw(x[:l])
        row_ok = True
        for k in range(1, l):
            small = induced_local_factor(G, G, chis[k], x)
            big = induced_local_factor(G, Ht, psis[k], x)
            row_ok &= localfactor_divides(small, big)
            pairings &= match_primes(small, big) is not None
            if k == 1:
                row = {"class": f"{cycle_label(g_part)} x z^{x[l] - l}", "rep": x.cycle_string(),
                       "factorH": str(small), "factorH2": str(big), "divides": localfactor_divides(small, big)}
        all_powers &= row_ok
        rows.append(row)
    sigma = next(h for h in Ht.generators if h[l] == l)
    differs = psis[1](sigma) != M.chi.restrict(Ht)(sigma)
    verdicts = {
        "classes": len(rows),
        "divides_all": all(r["divides"] for r in rows),
        "divides_all_powers": all_powers,
        "pairing_exists": pairings,
        "psi_differs_from_restriction": differs,
    }
    notes = [
        f"model: S_{l} x C_{l}; H = <l-cycle> x C_{l}; chi = projection to C_{l}",
        f"psi(chi) at (l-cycle, e) is {psis[1](sigma)} while Res(chi) there is 1",
        "divides_all_powers checks chi^k and psi(chi^k) for k = 1..l-1",
    ]
    expected = {"divides_all": True, "divides_all_powers": True, "pairing_exists": True,
                "psi_differs_from_restriction": True}
    return EvidenceTable(f"small-l counterexample, l = {l}", rows, verdicts, expected, notes)


# -- the C_l^n x| G construction ------------------------------------------------------


@dataclass
class GammaModel:
    n: int
    l: int
    base: FinGroup
    group: FinGroup  # C_l^n x| base, on l*n points
    delta: FinGroup  # C_l^n x| Stab(0)
    chi: SubgroupCharacter  # (a, h) -> zeta_l^{a_0}
    alphas: list
    block_of_coset: list = field(default_factory=list)

    @property
    def zeta(self) -> RootOfUnity:
        return RootOfUnity(self.l, 1)


def _is_transitive(G: FinGroup) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for s in G.generators:
            j = s[i]
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == G.degree


def base_group(spec: str) -> FinGroup:
    """``S<n>``, ``A<n>``, ``C<n>`` or ``D<n>`` as a permutation group on ``n`` points."""
    from .permgroup import alternating_group, dihedral_group

    kind, num = spec[0].upper(), int(spec[1:])
    makers = {"S": symmetric_group, "A": alternating_group, "C": cyclic_group, "D": dihedral_group}
    if kind not in makers:
        raise ValueError(f"unknown base group {spec!r}")
    return makers[kind](num)


def build_gamma(n: int, l: int, base: FinGroup, cap: int | None = None) -> GammaModel:
    """``C_l^n x| G`` acting on pairs ``(i, c)`` (point ``i*l + c``)."""
    if base.degree != n:
        raise ValueError("base group must act on n points")
    if l < 3 or any(l % p == 0 for p in range(2, l)):
        raise ValueError("l must be a prime >= 3")
    if n < 2 or not _is_transitive(base):
        raise ValueError("base group must be transitive on n >= 2 points")

    def lift(g: Permutation) -> Permutation:
        return Permutation._raw(g[i] * l + c for i in range(n) for c in range(l))

    def alpha(i: int) -> Permutation:
        return Permutation._raw(j * l + ((c + 1) % l if j == i else c) for j in range(n) for c in range(l))

    alphas = [alpha(i) for i in range(n)]
    gens = [lift(g) for g in base.generators] + [alphas[0]]
    Gamma = group_from_generators(gens, cap=cap, degree=n * l)
    assert Gamma.order == l ** n * base.order
    stab = subgroup_from_elements(base, [g for g in base.elements if g[0] == 0])
    delta = subgroup(Gamma, [lift(h) for h in stab.generators] + alphas)
    chi = SubgroupCharacter.from_function(Gamma, delta, lambda x: RootOfUnity(l, x[0]))
    table = coset_table(Gamma, delta)
    block_of_coset = [r[0] // l for r in table.representatives]
    return GammaModel(n, l, base, Gamma, delta, chi, alphas, block_of_coset)


def alpha_matrix_report(M: GammaModel, H: FinGroup, chi: SubgroupCharacter) -> dict:
    """Diagonality, single-zeta and distinct-position checks for ``Ind_H chi(alpha_i)``."""
    mats = [induced_matrix(M.group, H, chi, a) for a in M.alphas]
    diagonal = all(m.is_diagonal() for m in mats)
    one_zeta = diagonal and all(
        sum(1 for w in m.weights if w == M.zeta) == 1 and all(w == M.zeta or w.is_one() for w in m.weights)
        for m in mats
    )
    positions = [m.weights.index(M.zeta) if one_zeta else None for m in mats]
    distinct = one_zeta and len(set(positions)) == len(positions)
    return {"diagonal": diagonal, "one_zeta": one_zeta, "distinct_positions": distinct, "positions": positions}


def lemma_alpha_checks(M: GammaModel) -> EvidenceTable:
    G = M.group
    rows = []
    rep = alpha_matrix_report(M, M.delta, M.chi)
    mats = [induced_matrix(G, M.delta, M.chi, a) for a in M.alphas]
    for i, m in enumerate(mats):
        pos = rep["positions"][i]
        rows.append({
            "alpha": i + 1,
            "diagonal": m.is_diagonal(),
            "zetaPosition": pos,
            "zetaBlock": M.block_of_coset[pos] + 1 if pos is not None else None,
            "conjugateToAlpha1": G.class_index(M.alphas[i]) == G.class_index(M.alphas[0]),
        })
    prod = mats[0]
    for m in mats[1:]:
        prod = prod * m
    t = M.alphas[0]
    for a in M.alphas[1:]:
        t = t * a
    verdicts = {
        "order": G.order,
        "index": coset_table(G, M.delta).index,
        "diagonal": rep["diagonal"],
        "one_zeta_each": rep["one_zeta"],
        "zeta_at_own_block": all(r["zetaBlock"] == r["alpha"] for r in rows),
        "alphas_conjugate": all(r["conjugateToAlpha1"] for r in rows),
        "product_is_zeta_identity": prod.is_scalar(M.zeta),
        "product_matrix_matches": induced_matrix(G, M.delta, M.chi, t) == prod,
    }
    expected = {
        "order": M.l ** M.n * M.base.order,
        "index": M.n,
        "diagonal": True,
        "one_zeta_each": True,
        "zeta_at_own_block": True,
        "alphas_conjugate": True,
        "product_is_zeta_identity": True,
        "product_matrix_matches": True,
    }
    notes = [f"n={M.n}, l={M.l}, |G|={M.base.order}; zeta = z{M.l}",
             "zetaBlock: the block of points that the coset representative sends block 1 to"]
    return EvidenceTable(f"alpha lemmas, C_{M.l}^{M.n} x| G", rows, verdicts, expected, notes)


_WORKER: dict = {}


def _init_worker(n, l, base_gens, base_degree):
    base = group_from_generators(base_gens, degree=base_degree)
    M = build_gamma(n, l, base)
    _WORKER["model"] = M
    _WORKER["target"] = local_factor_table(M.group, M.delta, M.chi)


def _examine(M: GammaModel, target: list, H: FinGroup) -> tuple[int, list]:
    G = M.group
    classes = conjugacy_classes(G)
    examined = 0
    passing = []
    for ci, chi in enumerate(linear_characters(G, H)):
        examined += 1
        ok = True
        table = []
        for c, t in zip(classes, target):
            f = induced_local_factor(G, H, chi, c.representative)
            if not localfactor_divides(f, t):
                ok = False
                break
            table.append(f)
        if not ok:
            continue
        index = G.order // H.order
        alpha = alpha_matrix_report(M, H, chi)
        # independent cross-check of the factors through the induced matrices
        mono = all(monomial_charpoly(induced_matrix(G, H, chi, c.representative)) == f for c, f in zip(classes, table))
        passing.append({
            "order": H.order,
            "index": index,
            "character": ci,
            "characterOrder": chi.order(),
            "equalTable": all(f == t for f, t in zip(table, target)),
            "matrixCheck": mono,
            "alphaDiagonal": alpha["diagonal"],
            "alphaOneZeta": alpha["one_zeta"],
            "alphaDistinct": alpha["distinct_positions"],
        })
    return examined, passing


def _examine_remote(gens) -> tuple[int, list]:
    M = _WORKER["model"]
    H = subgroup(M.group, gens)
    return _examine(M, _WORKER["target"], H)


def bruteforce_theorem(M: GammaModel, jobs: int = 1, lattice_cap: int | None = None) -> EvidenceTable:
    """Every ``(H'', chi')`` whose table divides ``Ind(chi~)``'s has index ``n`` and an equal table."""
    G = M.group
    lattice = all_subgroups(G, cap=lattice_cap)
    reps = lattice.class_representatives()
    target = local_factor_table(G, M.delta, M.chi)
    if jobs > 1:
        with ProcessPoolExecutor(jobs, initializer=_init_worker,
                                 initargs=(M.n, M.l, list(M.base.generators), M.base.degree)) as pool:
            results = list(pool.map(_examine_remote, [list(H.generators) for H in reps]))
    else:
        results = [_examine(M, target, H) for H in reps]
    rows = []
    examined = 0
    for k, (count, passing) in enumerate(results):
        examined += count
        for p in passing:
            rows.append({"subgroupClass": k, **p})
    verdicts = {
        "subgroup_classes": len(reps),
        "pairs_examined": examined,
        "passing_pairs": len(rows),
        "delta_passes": any(r["index"] == M.n and r["equalTable"] for r in rows),
        "all_index_n": all(r["index"] == M.n for r in rows),
        "all_tables_equal": all(r["equalTable"] for r in rows),
        "matrix_cross_check": all(r["matrixCheck"] for r in rows),
        "alpha_lemmas": all(r["alphaDiagonal"] and r["alphaOneZeta"] and r["alphaDistinct"] for r in rows),
        "counterexamples": sum(1 for r in rows if r["index"] != M.n or not r["equalTable"]),
    }
    expected = {
        "delta_passes": True,
        "all_index_n": True,
        "all_tables_equal": True,
        "matrix_cross_check": True,
        "alpha_lemmas": True,
        "counterexamples": 0,
    }
    notes = [
        f"n={M.n}, l={M.l}, |G|={M.base.order}, |Gamma|={G.order}",
        f"the general statement asks for l > [N:Q]^2 = {M.base.order ** 2}; this finite model uses l={M.l}",
        "subgroups are taken up to conjugacy; characters range over all of Hom(H''/[H'',H''], C*)",
    ]
    return EvidenceTable(f"single L-series brute force, n={M.n}, l={M.l}", rows, verdicts, expected, notes)


# -- Gassmann example ----------------------------------------------------------------------


def fano_setup() -> dict:
    """GL(3,2) acting on the 7 nonzero vectors of F_2^3, with a point and a plane stabilizer."""

    def perm_of(mat):
        images = []
        for v in range(1, 8):
            bits = [(v >> k) & 1 for k in range(3)]
            w = sum(((sum(mat[r][c] * bits[c] for c in range(3)) % 2) << r) for r in range(3))
            images.append(w - 1)
        return Permutation(images)

    gens = [
        perm_of([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        perm_of([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
    ]
    G = group_from_generators(gens, degree=7)
    point = 0  # the vector (1,0,0)
    plane = {v - 1 for v in range(1, 8) if not (v >> 2) & 1}  # {(x,y,0)}
    H = subgroup_from_elements(G, [g for g in G.elements if g[point] == point])
    H2 = subgroup_from_elements(G, [g for g in G.elements if {g[i] for i in plane} == plane])
    return {"G": G, "H": H, "H2": H2}


def gassmann_report() -> EvidenceTable:
    from .artin import gassmann_equivalent
    from .permgroup import are_conjugate_subgroups

    s = fano_setup()
    G, H, H2 = s["G"], s["H"], s["H2"]
    rows = _evidence_rows(G, H, H2)
    conj, _ = are_conjugate_subgroups(G, H, H2)
    verdicts = {
        "order": G.order,
        "gassmann": gassmann_equivalent(G, H, H2),
        "conjugate": conj,
        "tables_equal": all(parse_local_factor(r["factorH"]) == parse_local_factor(r["factorH2"]) for r in rows),
        "divides_all": all(r["divides"] for r in rows),
    }
    expected = {"order": 168, "gassmann": True, "conjugate": False, "tables_equal": True}
    return EvidenceTable("GL(3,2): point vs plane stabilizer", rows, verdicts, expected,
                         ["H fixes the vector (1,0,0); H2 fixes the plane z = 0"],
                         {"H": "point stabilizer", "H2": "plane stabilizer"})
