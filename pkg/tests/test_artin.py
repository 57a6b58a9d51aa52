from fractions import Fraction

import pytest

from artindiv.algebra import CycloElem, LocalFactor, RootOfUnity
from artindiv.artin import (
    ClassFunction,
    SubgroupCharacter,
    character_table,
    class_evidence,
    decompose,
    gassmann_equivalent,
    induced_character,
    induced_local_factor,
    induced_matrix,
    inner_product,
    is_subrep,
    linear_characters,
    monomial_charpoly,
    property_1,
    property_2,
    property_3,
    property_4,
    restrict_class_function,
    subgroup_character_as_class_function,
)
from artindiv.errors import InconsistentCharacter
from artindiv.fpgroup import COUNTEREXAMPLE_128, parse_presentation, regular_rep
from artindiv.permgroup import (
    Permutation,
    all_subgroups,
    class_intersection_count,
    conjugacy_classes,
    coset_table,
    cyclic_group,
    dihedral_group,
    direct_product,
    subgroup,
    symmetric_group,
)
from artindiv.verify import build_gamma


def P(n, *cycles):
    return Permutation.from_cycles(n, [list(c) for c in cycles])


S4 = symmetric_group(4)
A4 = subgroup(S4, [P(4, (0, 1, 2)), P(4, (0, 1, 3))])
S3_IN_S4 = subgroup(S4, [P(4, (0, 1)), P(4, (0, 1, 2))])
C2_IN_S4 = subgroup(S4, [P(4, (0, 1), (2, 3))])


def test_character_from_generator_images():
    G = symmetric_group(4)
    chi = SubgroupCharacter.from_generator_images(G, [(P(4, (0, 1, 2, 3)), RootOfUnity(4, 1))])
    assert chi.subgroup.order == 4
    assert chi(P(4, (0, 2), (1, 3))) == RootOfUnity(2, 1)
    chi.check()
    with pytest.raises(InconsistentCharacter):
        SubgroupCharacter.from_generator_images(G, [(P(4, (0, 1, 2, 3)), RootOfUnity(3, 1))])


def test_linear_character_counts():
    for G, H, expected in [(S4, S4, 2), (S4, A4, 3), (S4, C2_IN_S4, 2), (dihedral_group(4), dihedral_group(4), 4)]:
        chars = linear_characters(G, H)
        assert len(chars) == expected
        assert chars[0].is_trivial()
        for c in chars:
            c.check()
        assert len({tuple(sorted((h, w.fraction) for h, w in c.values.items())) for c in chars}) == expected


def test_identity_and_degree_bookkeeping():
    for H in all_subgroups(S4).class_representatives():
        n = 24 // H.order
        for chi in linear_characters(S4, H):
            assert induced_local_factor(S4, H, chi, S4.identity) == LocalFactor.trivial([1] * n)
            for c in conjugacy_classes(S4):
                assert induced_local_factor(S4, H, chi, c.representative).degree == n


def test_known_factors():
    assert str(induced_local_factor(S4, A4, SubgroupCharacter.trivial(S4, A4), P(4, (0, 1)))) == "(1-T^2)"
    triv = SubgroupCharacter.trivial(S4, S3_IN_S4)
    assert str(induced_local_factor(S4, S3_IN_S4, triv, P(4, (0, 1, 2)))) == "(1-T)(1-T^3)"
    assert str(induced_local_factor(S4, S3_IN_S4, triv, P(4, (0, 1), (2, 3)))) == "(1-T^2)^2"


def _random_instances(rng, count):
    rep = regular_rep(parse_presentation(COUNTEREXAMPLE_128))
    groups = [
        symmetric_group(3), symmetric_group(4), dihedral_group(4),
        direct_product(symmetric_group(3), cyclic_group(5)), rep.group, build_gamma(2, 3, symmetric_group(2)).group,
    ]
    pools = []
    for G in groups:
        subs = all_subgroups(G).class_representatives() if G.order <= 64 else [
            rep.subgroup(["b^-2", "a c^2", "a d^-1 c^-1"]), rep.subgroup(["a c^2", "a^-1 d c^-1 a"]),
            rep.subgroup(["c"]), rep.subgroup([])]
        pools.append((G, [(H, linear_characters(G, H)) for H in subs]))
    for _ in range(count):
        G, subs = rng.choice(pools)
        H, chars = rng.choice(subs)
        yield G, H, rng.choice(chars), rng.choice(G.elements)


def test_factored_matches_matrix_charpoly(rng):
    """600 random (G, H, chi, g): orbit factors equal det(I - T M) of the induced matrix."""
    n = 0
    for G, H, chi, g in _random_instances(rng, 600):
        M = induced_matrix(G, H, chi, g)
        f = induced_local_factor(G, H, chi, g)
        assert monomial_charpoly(M) == f
        assert M.trace() == sum((CycloElem.root(w) for (k, w) in f.factors if k == 1), CycloElem.rational(0))
        n += 1
    assert n == 600


def _factor_with_representatives(G, H, chi, g, reps):
    """Orbit factors computed from an arbitrary transversal by membership search."""
    inv = [r.inverse() for r in reps]

    def act(x, i):
        y = x * reps[i]
        return next(j for j in range(len(reps)) if inv[j] * y in H)

    seen, factors = set(), []
    for s in range(len(reps)):
        if s in seen:
            continue
        k, i = 0, s
        while i not in seen:
            seen.add(i)
            i = act(g, i)
            k += 1
        factors.append((k, chi(inv[s] * g ** k * reps[s])))
    return LocalFactor(factors)


def test_representative_independence(rng):
    for G, H, chi, g in _random_instances(rng, 150):
        reps = [r * rng.choice(H.elements) for r in coset_table(G, H).representatives]
        rng.shuffle(reps)
        assert _factor_with_representatives(G, H, chi, g, reps) == induced_local_factor(G, H, chi, g)


def test_factor_is_a_class_function(rng):
    for G, H, chi, g in _random_instances(rng, 100):
        x = rng.choice(G.elements)
        assert induced_local_factor(G, H, chi, x * g * x.inverse()) == induced_local_factor(G, H, chi, g)


@pytest.mark.parametrize("G", [symmetric_group(2), symmetric_group(3), S4, dihedral_group(4), cyclic_group(6)],
                         ids=["S2", "S3", "S4", "D4", "C6"])
def test_character_table_orthogonality(G):
    table = character_table(G)
    classes = conjugacy_classes(G)
    assert len(table) == len(classes)
    for i, a in enumerate(table):
        d = a.degree.to_rational()
        assert G.order % d == 0
        for j, b in enumerate(table):
            assert inner_product(a, b) == CycloElem.rational(1 if i == j else 0)
    for c1 in classes:
        for c2 in classes:
            s = sum((f(c1.representative) * f(c2.representative).conjugate() for f in table), CycloElem.rational(0))
            expected = Fraction(G.order, c1.size) if c1.index == c2.index else 0
            assert s == CycloElem.rational(expected)


def test_small_tables():
    C2 = cyclic_group(2)
    rows = sorted(tuple(v.to_rational() for v in f.values) for f in character_table(C2))
    assert rows == [(1, -1), (1, 1)]
    assert sorted(f.degree.to_rational() for f in character_table(S4)) == [1, 1, 2, 3, 3]


@pytest.mark.parametrize("G", [symmetric_group(3), S4, dihedral_group(4)], ids=["S3", "S4", "D4"])
def test_frobenius_reciprocity(G):
    table = character_table(G)
    for H in all_subgroups(G).class_representatives():
        for chi in linear_characters(G, H):
            ind = induced_character(G, H, chi)
            chi_cf = subgroup_character_as_class_function(chi)
            for psi in table:
                lhs = inner_product(ind, psi)
                rhs = inner_product(chi_cf, restrict_class_function(psi, H))
                assert lhs == rhs and lhs.is_rational()


def test_decompose_permutation_character():
    table = character_table(S4)
    mult = decompose(induced_character(S4, A4), table)
    assert sorted(mult) == [0, 0, 0, 1, 1]


def test_is_subrep_examples():
    assert is_subrep(S4, A4, A4)
    assert is_subrep(S4, S3_IN_S4, C2_IN_S4)
    assert not is_subrep(S4, A4, S3_IN_S4)


def test_fixed_coset_identity_on_s4():
    """Fixed cosets of g on G/H = |c ∩ H| |G| / (|c| |H|), and equal the (1-T) count."""
    V4 = subgroup(S4, [P(4, (0, 1), (2, 3)), P(4, (0, 2), (1, 3))])
    for H in (A4, S3_IN_S4, V4):
        table = coset_table(S4, H)
        triv = SubgroupCharacter.trivial(S4, H)
        for c in conjugacy_classes(S4):
            g = c.representative
            fixed = sum(1 for i in range(table.index) if table.act(g, i) == i)
            assert fixed * c.size * H.order == class_intersection_count(c, H) * S4.order
            f = induced_local_factor(S4, H, triv, g)
            assert fixed == sum(1 for k, w in f.factors if k == 1)


def test_properties_on_examples():
    assert property_3(S4, A4, S3_IN_S4).holds
    assert property_1(S4, A4, S3_IN_S4).holds
    assert not property_4(S4, A4, S3_IN_S4).holds
    p2 = property_2(S4, S3_IN_S4, C2_IN_S4)
    assert not p2.holds and p2.witness is not None
    assert property_2(S4, A4, subgroup(S4, [P(4, (0, 1, 2))])).holds  # nested subgroups


def test_properties_conjugation_invariant(rng):
    lattice = all_subgroups(S4).class_representatives()
    table = character_table(S4)
    for _ in range(40):
        H, H2 = rng.choice(lattice), rng.choice(lattice)
        x, y = rng.choice(S4.elements), rng.choice(S4.elements)
        Hc = subgroup(S4, [x * h * x.inverse() for h in H.generators])
        H2c = subgroup(S4, [y * h * y.inverse() for h in H2.generators])
        for prop in (property_1, property_2, property_3):
            assert prop(S4, H, H2).holds == prop(S4, Hc, H2c).holds
        assert property_4(S4, H, H2, table).holds == property_4(S4, Hc, H2c, table).holds


def test_gassmann_examples():
    x = P(4, (0, 3))
    A4c = subgroup(S4, [x * h * x.inverse() for h in A4.generators])
    assert gassmann_equivalent(S4, A4, A4c)
    assert not gassmann_equivalent(S4, A4, S3_IN_S4)


def test_class_evidence_counts_sum():
    ev = class_evidence(S4, A4, S3_IN_S4)
    assert sum(r.count_h for r in ev) == 12 and sum(r.count_h2 for r in ev) == 6


def test_class_function_requires_full_length():
    with pytest.raises(ValueError):
        ClassFunction(S4, [1, 2])
