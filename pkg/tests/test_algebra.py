import itertools
from collections import Counter
from fractions import Fraction

import pytest

from artindiv.algebra import (
    CycloElem,
    FpPoly,
    LocalFactor,
    RootOfUnity,
    cpoly_exact_div,
    cyclotomic_polynomial,
    ddf,
    ddf_stages,
    discriminant,
    euler_phi,
    fp_divmod,
    fp_mul,
    localfactor_divides,
    localfactor_expand,
    parse_local_factor,
    parse_poly,
    poly_divmod,
    poly_mul,
    poly_str,
)
from artindiv.errors import NotSquarefree, ParseError


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert list(cyclotomic_polynomial(12)) == [1, 0, -1, 0, 1]
    for m in range(1, 40):
        assert len(cyclotomic_polynomial(m)) - 1 == euler_phi(m)


def test_x_to_the_n_minus_one_is_product_of_cyclotomics():
    for n in range(1, 25):
        prod = [1]
        for d in range(1, n + 1):
            if n % d == 0:
                prod = poly_mul(prod, cyclotomic_polynomial(d))
        assert prod == [-1] + [0] * (n - 1) + [1]


def test_poly_parse_and_print():
    assert parse_poly("x^3-2") == [-2, 0, 0, 1]
    assert parse_poly("x^4 + 1") == [1, 0, 0, 0, 1]
    assert poly_str(parse_poly("x^2-x+3")) == "x^2-x+3"
    q, r = poly_divmod([-1, 0, 0, 1], [-1, 1])
    assert q == [1, 1, 1] and r == []


def test_discriminants():
    assert discriminant([1, 0, 1]) == -4
    assert discriminant([-2, 0, 0, 1]) == -108
    assert discriminant([1, 0, 0, 0, 1]) == 256
    assert discriminant([-2, 0, 1]) == 8


def test_root_of_unity_normalises():
    assert RootOfUnity(6, 2) == RootOfUnity(3, 1)
    assert RootOfUnity(4, 4).is_one()
    assert str(RootOfUnity(2, 1)) == "-1"
    assert str(RootOfUnity(8, 3)) == "z8^3"
    w = RootOfUnity(5, 2)
    assert w * w.inverse() == RootOfUnity.one()
    assert w ** 5 == RootOfUnity.one()


def test_cyclo_arithmetic():
    z3 = CycloElem.zeta(3)
    assert (1 + z3 + z3 * z3).is_zero()
    i = CycloElem.zeta(4)
    assert i * i == CycloElem.rational(-1)
    z12 = CycloElem.zeta(12)
    assert z12 ** 4 == z3  # mixed moduli lift to a common field
    assert (i + z3).conjugate() == i.conjugate() + z3.conjugate()
    assert ((z3 + 2) / (z3 + 2)) == CycloElem.rational(1)
    assert (1 + z12) * (1 + z12).inverse() == CycloElem.rational(1)
    assert i.galois(3) == i.conjugate()
    s = z3 + z3.conjugate()
    assert s.is_rational() and s.to_rational() == -1


def test_local_factor_strings_round_trip():
    for text in ["1", "(1-T)^4(1-T^2)^6", "(1+T)", "(1-z3*T^2)", "(1-z5*T)(1-z5^2*T)(1-T^5)^4", "(1-T^4)^8"]:
        f = parse_local_factor(text)
        assert str(f) == text
    with pytest.raises(ParseError):
        parse_local_factor("(1-Q)")


def test_local_factor_degree_and_roots():
    f = LocalFactor([(2, RootOfUnity.one()), (1, RootOfUnity(3, 1))])
    assert f.degree == 3
    assert sum(f.roots().values()) == 3
    # 1 - T^2 has roots +1 and -1
    assert LocalFactor.trivial([2]).roots() == Counter({Fraction(0): 1, Fraction(1, 2): 1})


def test_local_factor_divisibility_examples():
    one_t = LocalFactor.trivial([1])
    assert localfactor_divides(one_t, LocalFactor.trivial([3]))
    assert not localfactor_divides(LocalFactor.trivial([2]), LocalFactor.trivial([1, 1]))
    assert localfactor_divides(LocalFactor.trivial([2]), LocalFactor.trivial([4]))
    assert not localfactor_divides(LocalFactor.trivial([2]), LocalFactor.trivial([3]))
    # (1 + T) divides (1 - T^2)
    assert localfactor_divides(LocalFactor([(1, RootOfUnity(2, 1))]), LocalFactor.trivial([2]))


def test_expand_matches_small_products():
    f = LocalFactor.trivial([1, 1])
    assert [c.to_rational() for c in localfactor_expand(f)] == [1, -2, 1]
    g = LocalFactor([(1, RootOfUnity(4, 1)), (1, RootOfUnity(4, 3))])
    assert [c.to_rational() for c in localfactor_expand(g)] == [1, 0, 1]


def _random_factor(rng, moduli=(1, 2, 3, 4, 6), max_terms=4, max_k=4):
    return LocalFactor(
        (rng.randint(1, max_k), RootOfUnity(m := rng.choice(moduli), rng.randrange(m)))
        for _ in range(rng.randint(0, max_terms))
    )


def test_divides_agrees_with_expanded_division(rng):
    """Root-multiset divisibility against exact power-series division, 600 random pairs."""
    hits = 0
    for trial in range(600):
        a = _random_factor(rng)
        if trial % 2:
            b = a * _random_factor(rng)  # guarantees some positive cases
        else:
            b = _random_factor(rng)
        m = 12
        q = cpoly_exact_div(localfactor_expand(b, m), localfactor_expand(a, m))
        assert localfactor_divides(a, b) == (q is not None), (str(a), str(b))
        hits += q is not None
    assert 150 < hits < 600


def test_quotient_is_the_complementary_factor(rng):
    for _ in range(100):
        a, c = _random_factor(rng), _random_factor(rng)
        q = cpoly_exact_div(localfactor_expand(a * c, 12), localfactor_expand(a, 12))
        assert q == localfactor_expand(c, 12)[: len(q)] and len(q) == c.degree + 1


# -- distinct-degree factorization against an exhaustive oracle ------------------------


def _monic(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield list(tail) + [1]


def _irreducibles(p, dmax):
    irr = {}
    for d in range(1, dmax + 1):
        irr[d] = []
        for f in _monic(p, d):
            if not any(not fp_divmod(f, g, p)[1] for e in range(1, d // 2 + 1) for g in irr[e]):
                irr[d].append(f)
    return irr


def _trial_factor(f, p, irr):
    degrees = Counter()
    rest = f
    for d in sorted(irr):
        for g in irr[d]:
            while len(rest) > 1:
                q, r = fp_divmod(rest, g, p)
                if r:
                    break
                degrees[d] += 1
                rest = q
    return degrees, len(rest) == 1


@pytest.mark.parametrize("p,dmax", [(2, 6), (3, 5), (5, 4)])
def test_ddf_exhaustive(p, dmax):
    irr = _irreducibles(p, dmax)
    checked = 0
    for d in range(1, dmax + 1):
        for f in _monic(p, d):
            degrees, complete = _trial_factor(f, p, irr)
            assert complete
            squarefree = all(fp_divmod(f, fp_mul(g, g, p), p)[1] for e in irr for g in irr[e] if 2 * e <= d)
            if not squarefree:
                with pytest.raises(NotSquarefree):
                    ddf(FpPoly(p, tuple(f)))
                continue
            assert ddf(FpPoly(p, tuple(f))) == degrees
            # stage products reproduce f
            prod = [1]
            for _, g in ddf_stages(FpPoly(p, tuple(f))):
                prod = fp_mul(prod, g, p)
            assert prod == f
            checked += 1
    assert checked > 20
