"""Command line interface.

Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or input
error, 3 resource cap exceeded.  Errors are printed to stderr as a single
line ``error: <reason>: <message>``.

Groups (``--group``) are given as a file or a built-in name:

* a group file: ``degree: n`` followed by ``perm: (1 2 3)(4 5)`` lines
  (1-based cycle notation, ``#`` comments);
* a presentation file: ``gens: a b``, ``rel: <word>`` lines and optional
  ``sub: <word>`` lines; the group is its regular permutation image;
* ``S<n>``, ``A<n>``, ``C<n>``, ``D<n>``, ``GL32`` (acting on the Fano
  plane) or ``G128`` (the built-in order-128 presentation).

Elements (``--h``, ``--h2``, ``--elt``) are cycle notation ``(1 2)(3 4)`` or,
for presented groups, words such as ``a^2 b^3 c^3 d``.  ``--h`` may be
repeated or hold a comma separated list; no ``--h`` means the trivial subgroup.

Character files: ``modulus: m`` then ``chi: <word-or-perm> -> e`` lines,
each sending a generator to ``z_m^e``.

Default caps come from the ``ARTINDIV_CAPS`` environment variable
(``closure=..,lattice=..,cosets=..``); ``--cap name=value`` overrides it.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import caps
from .algebra import LocalFactor, RootOfUnity
from .artin import (
    SubgroupCharacter,
    character_table,
    class_evidence,
    gassmann_equivalent,
    induced_local_factor,
    is_subrep,
    local_factor_table,
)
from .errors import ArtinDivError, CapExceeded, GroupMismatch, ParseError
from .fpgroup import COUNTEREXAMPLE_128, format_word, parse_presentation, regular_rep, todd_coxeter
from .numfield import NumberFieldSpec, zeta_divides, zeta_local_factor
from .permgroup import (
    FinGroup,
    all_subgroups,
    conjugacy_classes,
    group_from_generators,
    parse_cycles,
    parse_group_file,
    subgroup,
)
from . import verify

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
SCHEMA = 1
PROPERTIES = ("p1", "p2", "p3", "p4")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # one line, exit 2
        print(f"error: usage: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# -- input handling --------------------------------------------------------------------


class GroupContext:
    """A permutation group plus, for presented groups, the word evaluator."""

    def __init__(self, group: FinGroup, label: str, rep=None):
        self.group = group
        self.label = label
        self.rep = rep

    def element(self, text: str):
        text = text.strip()
        if text.startswith("("):
            g = parse_cycles(text, self.group.degree)
        elif self.rep is not None:
            g = self.rep(text)
        else:
            raise ParseError(f"expected cycle notation, got {text!r}")
        if g not in self.group:
            raise ParseError(f"{text!r} is not an element of the group")
        return g

    def subgroup(self, specs) -> FinGroup:
        gens = [self.element(t) for spec in specs or [] for t in split_list(spec)]
        return subgroup(self.group, gens)

    def name(self, g) -> str:
        if self.rep is None:
            return g.cycle_string()
        return format_word(self.words()[g])

    def words(self) -> dict:
        if not hasattr(self, "_words"):
            self._words = self.rep.shortest_words()
        return self._words


def split_list(text: str) -> list[str]:
    """Split at commas outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def load_group(spec: str) -> GroupContext:
    path = Path(spec)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
        first = next((ln.split("#", 1)[0].strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()), "")
        if first.lower().startswith("gens"):
            rep = regular_rep(parse_presentation(text))
            return GroupContext(rep.group, spec, rep)
        degree, gens = parse_group_file(text)
        return GroupContext(group_from_generators(gens, degree=degree), spec)
    key = spec.upper()
    if key == "G128":
        rep = regular_rep(parse_presentation(COUNTEREXAMPLE_128))
        return GroupContext(rep.group, spec, rep)
    if key in ("GL32", "FANO"):
        return GroupContext(verify.fano_setup()["G"], spec)
    try:
        return GroupContext(verify.base_group(spec), spec)
    except (ValueError, IndexError):
        raise UsageError(f"no such group file or built-in group: {spec!r}") from None


def load_character(ctx: GroupContext, path: str | None, H: FinGroup | None) -> SubgroupCharacter:
    G = ctx.group
    if path is None:
        return SubgroupCharacter.trivial(G, H if H is not None else G)
    modulus = None
    images = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        if key == "modulus":
            modulus = int(value)
            if modulus < 1:
                raise ParseError(f"line {lineno}: modulus must be positive")
        elif key == "chi":
            if modulus is None:
                raise ParseError(f"line {lineno}: 'chi' before 'modulus'")
            elt, arrow, exp = value.rpartition("->")
            if not arrow:
                raise ParseError(f"line {lineno}: expected '<element> -> <exponent>'")
            images.append((ctx.element(elt), RootOfUnity(modulus, int(exp))))
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    if modulus is None:
        raise ParseError("missing 'modulus' line")
    chi = SubgroupCharacter.from_generator_images(G, images)
    if H is not None and not chi.subgroup.same_elements(H):
        raise GroupMismatch("character generators do not generate the given subgroup")
    return chi


def parse_caps(items) -> dict[str, int]:
    out = {}
    for item in items or []:
        for part in item.split(","):
            name, sep, value = part.partition("=")
            if not sep:
                raise UsageError(f"--cap expects name=value, got {part!r}")
            out[name.strip()] = int(value)
    return out


# -- output ----------------------------------------------------------------------------


def emit(args, doc: dict, text: str) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA, **doc}, indent=2))
    else:
        print(text)


def emit_tables(args, tables: list) -> int:
    if args.json:
        if len(tables) == 1:
            print(tables[0].to_json())
        else:
            print(json.dumps({"schema": SCHEMA, "tables": [t.as_dict() for t in tables]}, indent=2))
    else:
        print("\n\n".join(t.render() for t in tables))
    return EXIT_OK if all(t.ok for t in tables) else EXIT_FALSE


def _align(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


# -- verbs -----------------------------------------------------------------------------


def cmd_group_classes(args) -> int:
    ctx = load_group(args.group)
    classes = conjugacy_classes(ctx.group)
    rows = [{"class": c.index, "rep": ctx.name(c.representative), "size": c.size,
             "order": c.representative.order()} for c in classes]
    text = f"order {ctx.group.order}, {len(rows)} classes\n" + _align(
        [["class", "rep", "size", "order"]] + [[str(r[k]) for k in ("class", "rep", "size", "order")] for r in rows])
    emit(args, {"order": ctx.group.order, "classes": rows}, text)
    return EXIT_OK


def cmd_group_subgroups(args) -> int:
    ctx = load_group(args.group)
    lattice = all_subgroups(ctx.group)
    rows = []
    for k, H in enumerate(lattice.class_representatives()):
        size = sum(1 for c in lattice.class_of if c == k)
        rows.append({"class": k, "order": H.order, "conjugates": size,
                     "generators": [ctx.name(g) for g in H.generators]})
    text = f"order {ctx.group.order}, {len(rows)} subgroup classes\n" + _align(
        [["class", "order", "conjugates", "generators"]]
        + [[str(r["class"]), str(r["order"]), str(r["conjugates"]), ", ".join(r["generators"]) or "-"] for r in rows])
    emit(args, {"order": ctx.group.order, "subgroups": rows}, text)
    return EXIT_OK


def cmd_fp_enumerate(args) -> int:
    pres = parse_presentation(Path(args.pres).read_text(encoding="utf-8"))
    subs = list(pres.subgroup) + [pres.word(w) for spec in args.sub or [] for w in split_list(spec)]
    table = todd_coxeter(pres, subs)
    doc = {"generators": list(pres.generators), "subgroup": [format_word(w) for w in subs], "index": table.index}
    if args.table:
        doc["table"] = table.table
    text = f"index {table.index}"
    if args.table:
        head = ["coset"] + [f"{s}{'' if e == 1 else '^-1'}" for s in pres.generators for e in (1, -1)]
        text += "\n" + _align([head] + [[str(i)] + [str(x) for x in row] for i, row in enumerate(table.table)])
    emit(args, doc, text)
    return EXIT_OK


def _property_values(G, H, H2, table=None) -> tuple[dict, list]:
    ev = class_evidence(G, H, H2)
    p3 = all(r.divides for r in ev)
    values = {
        "p1": p3,
        "p2": all(r.count_h >= r.count_h2 for r in ev),
        "p3": p3,
        "p4": is_subrep(G, H, H2, table),
    }
    return values, ev


def _pattern_ok(values: dict, require, forbid) -> bool:
    return all(values[p] for p in require or []) and not any(values[p] for p in forbid or [])


def _evidence_rows(ctx, ev) -> list[dict]:
    return [{"class": r.index, "rep": ctx.name(r.representative), "size": r.size, "countH": r.count_h,
             "countH2": r.count_h2, "factorH": str(r.factor_h), "factorH2": str(r.factor_h2),
             "divides": r.divides} for r in ev]


def cmd_equiv_check(args) -> int:
    ctx = load_group(args.group)
    G = ctx.group
    H, H2 = ctx.subgroup(args.h), ctx.subgroup(args.h2)
    values, ev = _property_values(G, H, H2)
    rows = _evidence_rows(ctx, ev)
    values["gassmann"] = gassmann_equivalent(G, H, H2)
    ok = _pattern_ok(values, args.require, args.forbid)
    keys = list(rows[0].keys())
    text = _align([keys] + [[verify._cell(r[k]) for k in keys] for r in rows])
    text += "\n" + "\n".join(
        f"{name}: {values[key]}" for name, key in
        (("property 1 (zeta divides, same check as 3)", "p1"), ("property 2 (class counts)", "p2"),
         ("property 3 (local factors divide)", "p3"), ("property 4 (subrepresentation)", "p4"),
         ("gassmann equivalent", "gassmann")))
    if args.require or args.forbid:
        text += f"\npattern satisfied: {ok}"
    emit(args, {"orderH": H.order, "orderH2": H2.order, "rows": rows, "properties": values,
                "pattern": {"require": args.require or [], "forbid": args.forbid or [], "satisfied": ok}}, text)
    return EXIT_OK if ok else EXIT_FALSE


def equiv_search(G: FinGroup, require=(), forbid=(), jobs: int = 1):
    """Yield ``(i, j, H, H2, values)`` over distinct subgroup classes with ``|H| >= |H2|``.

    Pairs with ``|H| < |H2|`` are skipped: their identity-class factors have
    the wrong degrees, so properties 1-3 fail for a trivial reason.
    """
    reps = all_subgroups(G).class_representatives()
    table = character_table(G) if "p4" in (*require, *forbid) else None
    for i, H in enumerate(reps):
        for j, H2 in enumerate(reps):
            if i == j or H.order < H2.order:
                continue
            values, _ = _property_values(G, H, H2, table) if table is not None else _values_no_p4(G, H, H2)
            if _pattern_ok(values, require, forbid):
                yield i, j, H, H2, values


def _values_no_p4(G, H, H2):
    ev = class_evidence(G, H, H2)
    p3 = all(r.divides for r in ev)
    return {"p1": p3, "p2": all(r.count_h >= r.count_h2 for r in ev), "p3": p3}, ev


def cmd_equiv_search(args) -> int:
    ctx = load_group(args.group)
    found = []
    lines = []
    for i, j, H, H2, values in equiv_search(ctx.group, args.require or [], args.forbid or []):
        rec = {"H": i, "H2": j, "orderH": H.order, "orderH2": H2.order,
               "generatorsH": [ctx.name(g) for g in H.generators],
               "generatorsH2": [ctx.name(g) for g in H2.generators], "properties": values}
        found.append(rec)
        if not args.json:
            props = " ".join(f"{k}={'T' if v else 'F'}" for k, v in values.items())
            lines.append(f"H=class {i} <{', '.join(rec['generatorsH'])}>  "
                         f"H2=class {j} <{', '.join(rec['generatorsH2'])}>  {props}")
            print(lines[-1], flush=True)
    if args.json:
        print(json.dumps({"schema": SCHEMA, "require": args.require or [], "forbid": args.forbid or [],
                          "pairs": found}, indent=2))
    elif not found:
        print("no pairs")
    return EXIT_OK if found else EXIT_FALSE


def cmd_tables_s3(args) -> int:
    return emit_tables(args, verify.reproduce_comparison_tables())


def cmd_artin_local(args) -> int:
    ctx = load_group(args.group)
    G = ctx.group
    H = ctx.subgroup(args.h) if args.h else None
    chi = load_character(ctx, args.chi, H)
    H = chi.subgroup
    if args.elt:
        g = ctx.element(args.elt)
        f = induced_local_factor(G, H, chi, g)
        emit(args, {"element": args.elt, "class": G.class_index(g), "factor": str(f)}, str(f))
        return EXIT_OK
    factors = local_factor_table(G, H, chi)
    rows = [{"class": c.index, "rep": ctx.name(c.representative), "factor": str(f)}
            for c, f in zip(conjugacy_classes(G), factors)]
    emit(args, {"orderH": H.order, "rows": rows},
         _align([["class", "rep", "factor"]] + [[str(r["class"]), r["rep"], r["factor"]] for r in rows]))
    return EXIT_OK


def cmd_artin_character_table(args) -> int:
    ctx = load_group(args.group)
    G = ctx.group
    table = character_table(G)
    classes = conjugacy_classes(G)
    values = [[str(f(c.representative)) for c in classes] for f in table]
    doc = {"classes": [{"class": c.index, "rep": ctx.name(c.representative), "size": c.size} for c in classes],
           "characters": values}
    head = ["", *(ctx.name(c.representative) for c in classes)]
    text = _align([head] + [[f"X{i}"] + v for i, v in enumerate(values)])
    emit(args, doc, text)
    return EXIT_OK


def cmd_artin_subrep(args) -> int:
    ctx = load_group(args.group)
    H, H2 = ctx.subgroup(args.h), ctx.subgroup(args.h2)
    result = is_subrep(ctx.group, H, H2)
    emit(args, {"subrep": result}, f"Ind_H 1 is a subrepresentation of Ind_H2 1: {result}")
    return EXIT_OK if result else EXIT_FALSE


def cmd_zeta_local(args) -> int:
    F = NumberFieldSpec(args.poly, assume_irreducible=args.assume_irreducible)
    f = zeta_local_factor(F, args.p)
    if isinstance(f, LocalFactor):
        emit(args, {"poly": str(F), "p": args.p, "factor": str(f), "excluded": None}, str(f))
    else:
        emit(args, {"poly": str(F), "p": args.p, "factor": None, "excluded": f.excluded}, str(f))
    return EXIT_OK


def cmd_zeta_divides(args) -> int:
    F1 = NumberFieldSpec(args.poly1, assume_irreducible=args.assume_irreducible)
    F2 = NumberFieldSpec(args.poly2, assume_irreducible=args.assume_irreducible)
    report = zeta_divides(F1, F2, args.pmax)
    d = report.as_dict()
    emit(args, d, f"{d['verdict']} (primes tested {d['tested']}, excluded {d['excluded']})")
    return EXIT_OK if report.holds else EXIT_FALSE


def cmd_verify_iota(args) -> int:
    if args.group is None:
        s = verify.s4_setup()
        return emit_tables(args, [verify.iota_divisibility_check(s["G"], s["A4"], s["V4"],
                                                                 scenario="restriction divisibility: S4, A4 > V4")])
    ctx = load_group(args.group)
    H = ctx.subgroup(args.h)
    H2 = ctx.subgroup(args.h2)
    chi = load_character(ctx, args.chi, H)
    return emit_tables(args, [verify.iota_divisibility_check(ctx.group, chi.subgroup, H2, chi)])


def _base(args):
    return load_group(args.base).group


def cmd_verify_kernel5(args) -> int:
    return emit_tables(args, [verify.totally_split_kernel(args.l)])


def cmd_verify_counterexample(args) -> int:
    return emit_tables(args, [verify.counterexample_small_l(args.l)])


def cmd_verify_gamma(args) -> int:
    M = verify.build_gamma(args.n, args.l, _base(args))
    return emit_tables(args, [verify.lemma_alpha_checks(M)])


def cmd_verify_theorem(args) -> int:
    M = verify.build_gamma(args.n, args.l, _base(args))
    return emit_tables(args, [verify.bruteforce_theorem(M, jobs=args.jobs)])


def cmd_verify_gassmann(args) -> int:
    return emit_tables(args, [verify.gassmann_report()])


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON (schema 1) instead of plain text")
    common.add_argument("--cap", action="append", metavar="NAME=VALUE",
                        help="override a cap: closure, lattice or cosets (default from ARTINDIV_CAPS)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes where supported (default 1)")

    grp = argparse.ArgumentParser(add_help=False)
    grp.add_argument("--group", required=True, help="group file, presentation file or built-in name")

    subs = argparse.ArgumentParser(add_help=False)
    subs.add_argument("--h", action="append", metavar="ELTS", help="generators of H (repeatable)")
    subs.add_argument("--h2", action="append", metavar="ELTS", help="generators of H2 (repeatable)")

    pattern = argparse.ArgumentParser(add_help=False)
    pattern.add_argument("--require", nargs="+", choices=PROPERTIES, help="properties that must hold")
    pattern.add_argument("--forbid", nargs="+", choices=PROPERTIES, help="properties that must fail")

    p = _Parser(prog="artindiv", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    top = p.add_subparsers(dest="noun", required=True, parser_class=_Parser)

    def verb(parent, name, func, parents=(), help=None):
        sp = parent.add_parser(name, parents=[common, *parents], help=help, description=help)
        sp.set_defaults(func=func)
        return sp

    g = top.add_parser("group", help="permutation group data").add_subparsers(dest="verb", required=True,
                                                                              parser_class=_Parser)
    verb(g, "classes", cmd_group_classes, [grp], "conjugacy classes")
    verb(g, "subgroups", cmd_group_subgroups, [grp], "subgroups up to conjugacy")

    f = top.add_parser("fp", help="finitely presented groups").add_subparsers(dest="verb", required=True,
                                                                              parser_class=_Parser)
    sp = verb(f, "enumerate", cmd_fp_enumerate, (), "coset enumeration")
    sp.add_argument("--pres", required=True, help="presentation file (gens:/rel:/sub: lines)")
    sp.add_argument("--sub", action="append", help="extra subgroup generator words")
    sp.add_argument("--table", action="store_true", help="print the full coset table")

    e = top.add_parser("equiv", help="compare two subgroups").add_subparsers(dest="verb", required=True,
                                                                            parser_class=_Parser)
    verb(e, "check", cmd_equiv_check, [grp, subs, pattern],
         "properties 1-4 for (H, H2); exit 1 if a --require/--forbid pattern is given and not met")
    verb(e, "search", cmd_equiv_search, [grp, pattern],
         "pairs of subgroup classes matching a pattern; exit 1 if none")

    t = top.add_parser("tables", help="comparison tables").add_subparsers(dest="verb", required=True,
                                                                          parser_class=_Parser)
    verb(t, "s3", cmd_tables_s3, (), "the three comparison tables")

    a = top.add_parser("artin", help="induced local factors and characters").add_subparsers(
        dest="verb", required=True, parser_class=_Parser)
    sp = verb(a, "local", cmd_artin_local, [grp], "local factor of Ind_H chi at an element or every class")
    sp.add_argument("--h", action="append", metavar="ELTS", help="generators of H")
    sp.add_argument("--chi", help="character file (modulus:/chi: lines); trivial if omitted")
    sp.add_argument("--elt", help="group element (default: one row per class)")
    verb(a, "character-table", cmd_artin_character_table, [grp], "exact character table")
    verb(a, "subrep", cmd_artin_subrep, [grp, subs], "is Ind_H 1 a subrepresentation of Ind_H2 1")

    z = top.add_parser("zeta", help="number field zeta factors").add_subparsers(dest="verb", required=True,
                                                                                parser_class=_Parser)
    irr = argparse.ArgumentParser(add_help=False)
    irr.add_argument("--assume-irreducible", action="store_true", help="skip the irreducibility certificate")
    sp = verb(z, "local", cmd_zeta_local, [irr], "local zeta factor at p")
    sp.add_argument("--poly", required=True, help='monic polynomial in x, e.g. "x^3-2"')
    sp.add_argument("--p", type=int, required=True)
    sp = verb(z, "divides", cmd_zeta_divides, [irr], "per-prime zeta divisibility up to pmax")
    sp.add_argument("--poly1", required=True)
    sp.add_argument("--poly2", required=True)
    sp.add_argument("--pmax", type=int, default=1000, help="largest prime tested (default 1000)")

    v = top.add_parser("verify", help="end-to-end reproductions").add_subparsers(dest="verb", required=True,
                                                                               parser_class=_Parser)
    sp = verb(v, "iota", cmd_verify_iota, [subs], "restriction divisibility for H2 <= H")
    sp.add_argument("--group", help="group (default: S4 with H = A4, H2 = V4)")
    sp.add_argument("--chi", help="character file on H")
    for name, func, help_ in (("kernel5", cmd_verify_kernel5, "totally split coset witnesses in S_l"),
                              ("counterexample", cmd_verify_counterexample, "small-l model S_l x C_l")):
        sp = verb(v, name, func, (), help_)
        sp.add_argument("--l", type=int, default=5, help="prime l (default 5)")
    for name, func, help_ in (("gamma", cmd_verify_gamma, "alpha-matrix checks on C_l^n x| G"),
                              ("theorem", cmd_verify_theorem, "exhaustive single L-series check on C_l^n x| G")):
        sp = verb(v, name, func, (), help_)
        sp.add_argument("--n", type=int, default=2, help="degree n (default 2)")
        sp.add_argument("--l", type=int, default=3, help="prime l >= 3 (default 3)")
        sp.add_argument("--base", default=None, help="transitive G on n points: S<n>, A<n>, C<n>, D<n> or a file "
                                                     "(default S<n>)")
    verb(v, "gassmann", cmd_verify_gassmann, (), "point vs plane stabilizer in GL(3,2)")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        caps.set_overrides(parse_caps(args.cap))
        if getattr(args, "base", "unset") is None:
            args.base = f"S{args.n}"
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc.reason}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ArtinDivError as exc:
        print(f"error: {exc.reason}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        caps.set_overrides({})


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
