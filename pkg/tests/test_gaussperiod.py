import random
from fractions import Fraction as F

import pytest
import sympy
from sympy import primerange

from galent.errors import ValidationError
from galent.gaussperiod import companion_family, companion_matrix, period_polynomial, two_torsion_match
from galent.qpoly import ExactPolynomial, factor_fingerprint_mod_p, poly_discriminant
from galent.qpoly.rational import is_square

ADMISSIBLE = [7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83]


def P(*c):
    return ExactPolynomial(list(c))


def cos_minpoly(ell):
    """Minimal polynomial of 2 cos(2 pi / ell), computed by sympy (independent of the a_r formula)."""
    x = sympy.Symbol("x")
    mp = sympy.minimal_polynomial(2 * sympy.cos(2 * sympy.pi / ell), x)
    return ExactPolynomial([F(int(c)) for c in reversed(sympy.Poly(mp, x).all_coeffs())])


def test_ell7():
    pp = period_polynomial(7)
    assert pp.poly == P(-1, -2, 1, 1)
    assert pp.coefficients == (1, 1, -2, -1)
    assert pp.discriminant == 49


def test_ell11():
    pp = period_polynomial(11)
    assert pp.e == 5 and pp.coefficients[:2] == (1, 1)
    assert pp.poly == P(1, 3, -3, -4, 1, 1)


@pytest.mark.parametrize("ell", [7, 11, 19, 23, 31])
def test_matches_cosine_minimal_polynomial(ell):
    assert period_polynomial(ell).poly == cos_minpoly(ell)


@pytest.mark.parametrize("ell", ADMISSIBLE)
def test_square_discriminant(ell):
    pp = period_polynomial(ell, split_checks=2)
    assert pp.poly.degree == pp.e == (ell - 1) // 2
    d = poly_discriminant(pp.poly)
    assert d != 0 and is_square(d)


@pytest.mark.parametrize("ell", [7, 11, 23])
def test_splitting_pattern(ell):
    f = period_polynomial(ell).poly
    e = (ell - 1) // 2
    for p in primerange(2, 10 ** 4):
        if p == ell:
            continue
        split = factor_fingerprint_mod_p(f, p).degree_multiset == (1,) * e
        assert split == (p % ell in (1, ell - 1))


@pytest.mark.parametrize("bad", [9, 3, 2, 13, 17, 4])
def test_bad_ell(bad):
    with pytest.raises(ValidationError):
        period_polynomial(bad)


def test_companion_matrix_charpoly():
    f = P(-1, -2, 1, 1)
    x = sympy.Symbol("x")
    cp = companion_matrix(f).charpoly(x).all_coeffs()
    assert [int(c) for c in cp] == [1, 1, -2, -1]


def test_pure_shift_member():
    f = period_polynomial(7)
    m = companion_family(f, (1, 0, 0))
    k1 = m.shifts[0]
    assert k1 == F(-1, 3)
    assert m.member_poly == f.poly.compose(P(k1, 1))
    assert m.member_poly == P(F(-7, 27), F(-7, 3), 0, 1)


def test_member_110():
    f = period_polynomial(7)
    m = companion_family(f, (1, 1, 0))
    assert m.member_poly == P(F(7, 27), F(-7, 3), 0, 1)
    assert m.discriminant == 49 and not m.on_discriminant_locus
    assert two_torsion_match(f, m.member_poly, 10 ** 4).verdict == "consistent"


def test_alphas_traceless():
    m = companion_family(period_polynomial(11), (1, -2, 0, F(1, 3), 5))
    for a in m.alphas:
        assert a.trace() == 0
    assert m.member_poly.coeffs[m.member_poly.degree - 1] == 0


def test_family_errors():
    f = period_polynomial(7)
    with pytest.raises(ValidationError):
        companion_family(f, (0, 0, 0))
    with pytest.raises(ValidationError):
        companion_family(f, (1, 0))
    with pytest.raises(ValidationError):
        companion_family(P(1, 0, 0, 0, 1), (1, 0, 0, 0))


def test_random_members_keep_two_torsion():
    rng = random.Random(11)
    f = period_polynomial(7)
    done = 0
    while done < 20:
        b = tuple(F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3))
        if all(x == 0 for x in b):
            continue
        m = companion_family(f, b)
        if m.on_discriminant_locus:
            continue
        assert two_torsion_match(f, m.member_poly, 2000).verdict == "consistent"
        done += 1


def test_discriminant_locus_flagged():
    # -2A + A^2 + A^3 = f(A) + I = I, so the traceless combination is 0 and the member is x^3
    m = companion_family(period_polynomial(7), (-2, 1, 1))
    assert m.member_poly == P(0, 0, 0, 1)
    assert m.on_discriminant_locus and m.discriminant == 0


def test_two_torsion_refuted():
    v = two_torsion_match(P(1, -3, 0, 1), P(-2, 0, 0, 1), 1000)
    assert v.verdict == "refuted"


def test_json():
    doc = companion_family(period_polynomial(7), (1, 1, 0)).to_json()
    assert doc["discriminant"] == "49" and doc["on_discriminant_locus"] is False
    assert period_polynomial(7).to_json()["coefficients"] == [1, 1, -2, -1]
