import itertools

import pytest

from artindiv.errors import CapExceeded, NotASubgroup, ParseError
from artindiv.permgroup import (
    Permutation,
    abelian_basis,
    all_subgroups,
    alternating_group,
    are_conjugate_subgroups,
    class_intersection_count,
    commutator_subgroup,
    conjugacy_classes,
    coset_table,
    cyclic_group,
    dihedral_group,
    direct_product,
    format_group_file,
    group_from_generators,
    is_normal,
    normal_closure,
    normal_core,
    parse_cycles,
    parse_group_file,
    quotient,
    subgroup,
    symmetric_group,
)


def P(n, *cycles):
    return Permutation.from_cycles(n, [list(c) for c in cycles])


def test_composition_applies_right_factor_first():
    p, q = P(3, (0, 1)), P(3, (1, 2))
    assert (p * q)(1) == p(q(1)) == 2
    assert (p * q) * (p * q).inverse() == Permutation.identity(3)


def test_cycle_string_round_trip():
    g = P(6, (0, 3, 5), (1, 2))
    assert g.cycle_string() == "(1 4 6)(2 3)"
    assert parse_cycles(g.cycle_string(), 6) == g
    assert parse_cycles("()", 4).is_identity()


@pytest.mark.parametrize("bad", ["(1 2", "1 2", "(1 1)", "(1 9)"])
def test_parse_cycles_rejects(bad):
    with pytest.raises(ParseError):
        parse_cycles(bad, 4)


def test_orders_of_standard_groups():
    assert symmetric_group(4).order == 24
    assert alternating_group(5).order == 60
    assert cyclic_group(7).order == 7
    assert dihedral_group(4).order == 8
    assert direct_product(symmetric_group(3), cyclic_group(2)).order == 12


def test_closure_cap():
    with pytest.raises(CapExceeded):
        group_from_generators(symmetric_group(6).generators, cap=100)


def test_s4_classes_are_cycle_types():
    G = symmetric_group(4)
    classes = conjugacy_classes(G)
    assert sorted(c.size for c in classes) == [1, 3, 6, 6, 8]
    for c in classes:
        assert len({x.cycle_type() for x in c.members}) == 1
    assert sum(c.size for c in classes) == 24


def test_s4_subgroup_lattice_matches_pair_oracle():
    G = symmetric_group(4)
    # every subgroup of S4 is generated by at most two elements
    oracle = set()
    for a, b in itertools.combinations_with_replacement(G.elements, 2):
        oracle.add(subgroup(G, [a, b]).element_set)
    lattice = all_subgroups(G)
    assert {H.element_set for H in lattice.subgroups} == oracle
    assert len(oracle) == 30
    assert len(lattice.classes) == 11


def test_subgroup_classes_are_conjugacy_classes():
    G = symmetric_group(4)
    lattice = all_subgroups(G)
    for cls in lattice.classes:
        first = lattice.subgroups[cls[0]]
        for k in cls[1:]:
            ok, g = are_conjugate_subgroups(G, first, lattice.subgroups[k])
            assert ok
            gi = g.inverse()
            assert {g * h * gi for h in first.elements} == lattice.subgroups[k].element_set


def test_nonconjugate_subgroups_of_same_order():
    G = symmetric_group(4)
    V_normal = subgroup(G, [P(4, (0, 1), (2, 3)), P(4, (0, 2), (1, 3))])
    V_other = subgroup(G, [P(4, (0, 1)), P(4, (2, 3))])
    assert are_conjugate_subgroups(G, V_normal, V_other) == (False, None)


def test_coset_table_is_a_left_action():
    G = symmetric_group(4)
    H = subgroup(G, [P(4, (0, 1, 2))])
    t = coset_table(G, H)
    assert t.index == 8
    for g in G.elements[:10]:
        for h in G.elements[:10]:
            for i in range(t.index):
                assert t.act(g * h, i) == t.act(g, t.act(h, i))
    for i, r in enumerate(t.representatives):
        assert t.coset_of[r] == i


def test_normal_core_oracle():
    G = symmetric_group(4)
    for H in all_subgroups(G).subgroups:
        core = normal_core(G, H)
        expected = set(H.elements)
        for g in G.elements:
            gi = g.inverse()
            expected &= {g * h * gi for h in H.elements}
        assert core.element_set == frozenset(expected)
        assert is_normal(G, core)


def test_commutator_quotient_and_closure():
    G = symmetric_group(4)
    assert commutator_subgroup(G).order == 12
    assert commutator_subgroup(alternating_group(4)).order == 4
    assert normal_closure(G, [P(4, (0, 1, 2))]).order == 12
    A4 = alternating_group(4)
    assert quotient(G, A4).order == 2


def test_abelian_basis_of_c2_c4():
    A = direct_product(cyclic_group(2), cyclic_group(4))
    b = abelian_basis(A)
    assert sorted(b.orders) == [2, 4]
    seen = {b.element(c) for c in itertools.product(*(range(d) for d in b.orders))}
    assert len(seen) == 8


def test_intersection_counts_sum_to_subgroup_order():
    G = symmetric_group(4)
    H = subgroup(G, [P(4, (0, 1)), P(4, (0, 1, 2))])
    assert sum(class_intersection_count(c, H) for c in conjugacy_classes(G)) == 6


def test_subgroup_rejects_outside_elements():
    G = alternating_group(4)
    with pytest.raises(NotASubgroup):
        subgroup(G, [P(4, (0, 1))])


def test_group_file_round_trip():
    text = "# comment\ndegree: 5\nperm: (1 2 3)(4 5)\nperm: (1 2)\n"
    degree, gens = parse_group_file(text)
    assert degree == 5 and len(gens) == 2
    out = format_group_file(degree, gens)
    assert out == "degree: 5\nperm: (1 2 3)(4 5)\nperm: (1 2)\n"
    assert parse_group_file(out) == (degree, gens)


def test_empty_generator_group_has_one_class():
    degree, gens = parse_group_file("degree: 3\n")
    G = group_from_generators(gens, degree=degree)
    assert G.order == 1 and len(conjugacy_classes(G)) == 1
