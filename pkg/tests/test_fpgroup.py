import pytest

from artindiv.errors import CapExceeded, ParseError
from artindiv.fpgroup import (
    COUNTEREXAMPLE_128,
    format_presentation,
    format_word,
    parse_presentation,
    parse_word,
    regular_rep,
    todd_coxeter,
)

S3 = "gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^2\n".replace("(a b)^2", "a b a b")


def test_word_parsing_forms_agree():
    gens = ("a", "b", "c", "d")
    assert parse_word("a d^-1 c^-1", gens) == (("a", 1), ("d", -1), ("c", -1))
    assert parse_word("ac^2", gens) == parse_word("a c c", gens)
    assert parse_word("1", gens) == () == parse_word("e", gens)
    assert parse_word("a a^-1 b", gens) == (("b", 1),)


def test_word_round_trip():
    gens = ("a", "b", "c", "d")
    for text in ["a^2 b^3 c^3 d", "a^-1 d c^-1 a", "b^-2", "1"]:
        assert format_word(parse_word(text, gens)) == text


def test_word_rejects_unknown_letters():
    with pytest.raises(ParseError):
        parse_word("x", ("a", "b"))


def test_presentation_round_trip():
    pres = parse_presentation(COUNTEREXAMPLE_128)
    again = parse_presentation(format_presentation(pres))
    assert again == pres
    assert len(pres.relators) == 10


@pytest.mark.parametrize("text", ["rel: a\n", "gens: a\nfoo: a\n", "gens: a\nrel a\n"])
def test_presentation_errors(text):
    with pytest.raises(ParseError):
        parse_presentation(text)


def test_s3_enumeration():
    pres = parse_presentation(S3)
    assert todd_coxeter(pres).index == 6
    assert todd_coxeter(pres, [pres.word("a")]).index == 3
    assert todd_coxeter(pres, [pres.word("b")]).index == 2


def test_cyclic_and_free_cap():
    assert todd_coxeter(parse_presentation("gens: x\nrel: x^7\n")).index == 7
    with pytest.raises(CapExceeded):
        todd_coxeter(parse_presentation("gens: x y\nrel: x^2\n"), cap=500)


def test_coset_table_is_consistent():
    pres = parse_presentation(S3)
    t = todd_coxeter(pres, [pres.word("a")])
    for c in range(t.index):
        for s in pres.generators:
            assert t.act(t.act(c, [(s, 1)]), [(s, -1)]) == c
        for r in pres.relators:
            assert t.act(c, r) == c


def test_regular_rep_satisfies_relators():
    rep = regular_rep(parse_presentation(COUNTEREXAMPLE_128))
    assert rep.group.order == 128
    for r in rep.presentation.relators:
        assert rep(r).is_identity()


def test_words_multiply_like_permutations():
    rep = regular_rep(parse_presentation(COUNTEREXAMPLE_128))
    assert rep("a b") == rep("a") * rep("b")
    assert rep("c^-1") == rep("c").inverse()


def test_counterexample_subgroups_structure():
    rep = regular_rep(parse_presentation(COUNTEREXAMPLE_128))
    H = rep.subgroup(["b^-2", "a c^2", "a d^-1 c^-1"])
    H2 = rep.subgroup(["a c^2", "a^-1 d c^-1 a"])
    assert H.order == 8 and H2.order == 4
    # H is dihedral: an element of order 4 and a non-central involution
    assert any(x.order() == 4 for x in H.elements)
    assert any(x.order() == 2 and any(x * y != y * x for y in H.elements) for x in H.elements)
    # H2 is elementary abelian
    assert all(x.order() <= 2 for x in H2.elements)


def test_shortest_words_cover_group():
    rep = regular_rep(parse_presentation(S3))
    words = rep.shortest_words()
    assert len(words) == 6
    for x, w in words.items():
        assert rep(w) == x
    assert max(len(w) for w in words.values()) == 2
