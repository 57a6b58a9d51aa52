import pytest

from artindiv.algebra import LocalFactor
from artindiv.artin import SubgroupCharacter, induced_local_factor
from artindiv.errors import NotCertified
from artindiv.numfield import NumberFieldSpec, primes_up_to, splitting_type, zeta_divides, zeta_local_factor
from artindiv.permgroup import cyclic_group, subgroup


def brute_splitting(f, p):
    """Factor degrees of f mod p by trial division over all monic polynomials."""
    import itertools

    from artindiv.algebra import fp_divmod

    rest = [c % p for c in f]
    degrees = []
    d = 1
    while len(rest) > 1:
        if 2 * d > len(rest) - 1:
            degrees.append(len(rest) - 1)
            break
        found = False
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            q, r = fp_divmod(rest, g, p)
            if not r:
                degrees.append(d)
                rest = q
                found = True
                break
        if not found:
            d += 1
    return tuple(sorted(degrees))


@pytest.mark.parametrize("p", [5, 7, 11, 13, 31])
def test_x3_minus_2_against_oracle(p):
    F = NumberFieldSpec("x^3-2")
    assert splitting_type(F, p).degrees == brute_splitting(F.poly, p)


def test_examples():
    F = NumberFieldSpec("x^3-2")
    assert splitting_type(F, 5).degrees == (1, 2)
    assert splitting_type(F, 7).degrees == (3,)
    assert splitting_type(NumberFieldSpec("x^2+1"), 2).excluded
    assert zeta_local_factor(NumberFieldSpec("x"), 7) == LocalFactor.trivial([1])
    assert str(zeta_local_factor(NumberFieldSpec("x^2+1"), 5)) == "(1-T)^2"
    assert str(zeta_local_factor(NumberFieldSpec("x^2+1"), 3)) == "(1-T^2)"


def test_certificates():
    cert = NumberFieldSpec("x^3-2").certificate
    assert isinstance(cert, int) and cert <= 100
    assert NumberFieldSpec("x^4+1").certificate == "sympy"  # reducible mod every prime
    with pytest.raises(NotCertified):
        NumberFieldSpec("x^2-1")
    assert NumberFieldSpec("x^4+1", assume_irreducible=True).certificate == "sympy"


def test_degree_sums():
    for f in ["x^3-2", "x^4+1", "x^2+x+1", "x^5-x-1"]:
        F = NumberFieldSpec(f)
        for p in primes_up_to(200):
            st = splitting_type(F, p)
            if not st.excluded:
                assert sum(st.degrees) == F.degree


def test_tower_and_failure():
    Q = NumberFieldSpec("x")
    for f in ["x^2+1", "x^3-2", "x^4+1", "x^2-2"]:
        assert zeta_divides(Q, NumberFieldSpec(f), 300).holds
    r = zeta_divides(NumberFieldSpec("x^2+1"), NumberFieldSpec("x^4+1"), 1000)
    assert r.holds and r.excluded == [2]
    bad = zeta_divides(NumberFieldSpec("x^2-2"), NumberFieldSpec("x^2+1"), 100)
    assert not bad.holds and bad.witness == 5
    assert bad.as_dict()["verdict"] == "fails at p=5"
    # Q(sqrt 2) inside Q(zeta_8)
    assert zeta_divides(NumberFieldSpec("x^2-2"), NumberFieldSpec("x^4+1"), 500).holds


def test_gaussian_field_agrees_with_group_model():
    """Gal(Q(i)/Q) = C2; Frobenius at p is trivial iff p = 1 mod 4."""
    G = cyclic_group(2)
    H = subgroup(G, [])
    triv = SubgroupCharacter.trivial(G, H)
    sigma = G.generators[0]
    F = NumberFieldSpec("x^2+1")
    for p in primes_up_to(500):
        if p == 2:
            continue
        frob = G.identity if p % 4 == 1 else sigma
        assert zeta_local_factor(F, p) == induced_local_factor(G, H, triv, frob)
        assert splitting_type(F, p).degrees == ((1, 1) if p % 4 == 1 else (2,))


def test_pmax_validation():
    with pytest.raises(ValueError):
        zeta_divides(NumberFieldSpec("x"), NumberFieldSpec("x"), 1)
    with pytest.raises(ValueError):
        splitting_type(NumberFieldSpec("x^2+1"), 9)
