import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from galent.eqcurves import EllipticCurveModel, family_curve
from galent.errors import BudgetExceeded, ValidationError
from galent.qpoly import (
    ExactPolynomial, RationalFunction, division_polynomial, factor_fingerprint_mod_p, poly_discriminant,
    rational_reconstruction, resultant, same_splitting_field_mc, small_rational_factors, square_class,
)
from galent.qpoly.named import cyclic_cubic_f, cyclic_cubic_g, delta, delta_as_two_squares

X = sympy.Symbol("x")


def P(*coeffs):
    """Polynomial from ascending integer/rational coefficients."""
    return ExactPolynomial(list(coeffs))


def sylvester_resultant(f, g):
    """Determinant of the Sylvester matrix (sympy.resultant gets the sign wrong in some degree-1 cases)."""
    a = [sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)]
    b = [sympy.Rational(c.numerator, c.denominator) for c in reversed(g.coeffs)]
    n, m = len(a) - 1, len(b) - 1
    rows = [[0] * i + a + [0] * (m - 1 - i) for i in range(m)] + [[0] * i + b + [0] * (n - 1 - i) for i in range(n)]
    return sympy.Matrix(rows).det()


def to_sympy(f):
    return sum(sympy.Rational(c.numerator, c.denominator) * X ** i for i, c in enumerate(f.coeffs))


def from_sympy(expr):
    cs = sympy.Poly(expr, X).all_coeffs()[::-1]
    return ExactPolynomial([F(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in cs])


small_polys = st.lists(st.integers(-6, 6), min_size=2, max_size=6).filter(lambda c: c[-1] != 0).map(
    lambda c: ExactPolynomial(c))


# arithmetic against sympy

@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_arithmetic_matches_sympy(f, g):
    assert to_sympy(f * g).expand() == (to_sympy(f) * to_sympy(g)).expand()
    q, r = f.divrem(g)
    sq, sr = sympy.div(to_sympy(f), to_sympy(g), X)
    assert to_sympy(q) == sympy.expand(sq) and to_sympy(r) == sympy.expand(sr)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_resultant_and_discriminant_match_sympy(f, g):
    assert resultant(f, g) == sylvester_resultant(f, g)
    if f.degree >= 2:
        assert poly_discriminant(f) == sympy.discriminant(to_sympy(f), X)


@settings(max_examples=40, deadline=None)
@given(small_polys, small_polys)
def test_discriminant_of_product(f, g):
    if f.degree < 2 or g.degree < 2:
        return
    dfg = poly_discriminant(f * g)
    rhs = poly_discriminant(f) * poly_discriminant(g) * resultant(f, g) ** 2
    assert dfg == rhs
    if dfg != 0:
        assert square_class(dfg) == square_class(rhs)


def test_discriminant_examples():
    for d in (2, -3, 5, 12):
        f = P(-d, 0, 1)
        assert poly_discriminant(f) == 4 * d
        assert square_class(poly_discriminant(f)) == square_class(d)
    f = P(-1, -2, 1, 1)
    assert poly_discriminant(f) == 49 and square_class(49) == 1


def test_discriminant_needs_degree_two():
    with pytest.raises(ValidationError):
        poly_discriminant(P(1, 1))


def test_cyclic_cubics_have_square_discriminant():
    for f in (cyclic_cubic_f(), cyclic_cubic_g()):
        d = poly_discriminant(f)
        assert isinstance(d, RationalFunction) and d.is_square()
    for t0 in (0, 1, -20, F(7, 3)):
        assert poly_discriminant(cyclic_cubic_f(t0)) == (t0 * t0 - 3 * t0 + 9) ** 2


# division polynomials

def test_psi3_example():
    E = EllipticCurveModel([0, 0, 0, 0, 1])
    assert division_polynomial(E, 3) == P(0, 12, 0, 0, 3)


def test_psi3_short_formula():
    for a, b in ((1, 1), (-2, 3), (F(1, 2), -5)):
        E = EllipticCurveModel([0, 0, 0, a, b])
        assert division_polynomial(E, 3) == P(-a * a, 12 * b, 6 * a, 0, 3)


def test_division_polynomial_errors():
    E = EllipticCurveModel([0, 0, 0, 0, 1])
    with pytest.raises(BudgetExceeded):
        division_polynomial(E, 13)
    with pytest.raises(ValidationError):
        division_polynomial(E, 0)


def _random_curve(rng):
    while True:
        a = [rng.randint(-3, 3) for _ in range(5)]
        try:
            return EllipticCurveModel(a)
        except ValidationError:
            continue


def test_degree_formula_random_curves():
    rng = random.Random(20261019)
    for _ in range(50):
        E = _random_curve(rng)
        from galent.qpoly.divpoly import division_polynomials
        fs = division_polynomials(E, 12)
        for m in range(1, 13):
            if m % 2:
                assert fs[m].degree == (m * m - 1) // 2 and fs[m].lc == m
            else:
                assert fs[m].degree == (m * m - 4) // 2 and fs[m].lc == m // 2


def test_division_polynomial_roots_are_torsion_mod_p():
    # each root of psi_3 mod p lifts to a point of order 3 over F_p or F_{p^2}; checked on y^2 = x^3 + 1
    # whose 3-torsion x-coordinates are 0 and the roots of x^3 + 4
    E = EllipticCurveModel([0, 0, 0, 0, 1])
    assert from_sympy(sympy.expand(3 * X * (X ** 3 + 4))) == division_polynomial(E, 3)


# factors

def test_small_factors_example():
    f = P(-2, 0, 1) * P(1, 0, 1) * P(1, 1, 0, 1)
    facs = small_rational_factors(f, 2)
    assert set(facs) == {P(-2, 0, 1), P(1, 0, 1)}
    assert small_rational_factors(f, 3)[-1] == P(1, 1, 0, 1)


def test_small_factors_irreducible():
    assert small_rational_factors(P(1, 0, 1), 2) == [P(1, 0, 1)]
    assert small_rational_factors(P(-2, 0, 0, 1), 2) == []


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=2, max_size=4), min_size=1, max_size=3))
def test_small_factors_against_sympy(parts):
    f = P(1)
    for c in parts:
        c = c[:-1] + [1]
        f = f * ExactPolynomial(c)
    f = f * P(3, 0, 0, 0, 0, 1)  # irreducible quintic keeps the degree up
    ours = set(small_rational_factors(f, 3))
    theirs = set()
    for fac, _ in sympy.factor_list(to_sympy(f), X)[1]:
        if sympy.degree(fac, X) <= 3:
            theirs.add(from_sympy(fac).monic())
    assert ours == theirs
    for g in ours:
        assert (f % g).is_zero


def test_isog5_quadratic_factor_square_class():
    E = family_curve("isog5", 1)
    facs = [g for g in small_rational_factors(division_polynomial(E, 5), 2) if g.degree == 2]
    assert len(facs) == 1
    assert square_class(poly_discriminant(facs[0])) == 65 == square_class(delta(1))


def test_isog5_quadratic_factor_random_t():
    rng = random.Random(5)
    done = 0
    while done < 20:
        t0 = F(rng.randint(-40, 40), rng.randint(1, 12))
        try:
            E = family_curve("isog5", t0)
        except ValidationError:
            continue
        facs = [g for g in small_rational_factors(division_polynomial(E, 5), 2) if g.degree == 2]
        assert len(facs) >= 1
        d = delta(t0)
        assert any(square_class(poly_discriminant(g)) == square_class(d) for g in facs)
        done += 1


def test_delta_identity():
    m, n = delta_as_two_squares()
    assert m * m + n * n == delta()
    assert delta(1) == F(52, 5)


def test_rational_reconstruction():
    m = 10 ** 9 + 7
    for q in (F(3, 7), F(-22, 5), F(0), F(1, 1000)):
        a = q.numerator * pow(q.denominator, -1, m) % m
        assert rational_reconstruction(a, m, 10 ** 4, 10 ** 4) == q


# fingerprints and splitting fields

def test_fingerprint_examples():
    f = P(-1, -2, 1, 1)
    assert factor_fingerprint_mod_p(f, 13).degree_multiset == (1, 1, 1)
    assert factor_fingerprint_mod_p(f, 2).degree_multiset == (3,)
    assert factor_fingerprint_mod_p(P(-1, 0, 1), 3).degree_multiset == (1, 1)


@settings(max_examples=40, deadline=None)
@given(small_polys, st.sampled_from([5, 7, 11, 13, 101]))
def test_fingerprint_matches_sympy_mod_p(f, p):
    fp = factor_fingerprint_mod_p(f, p)
    if fp.ramified:
        return
    degs = []
    # the fingerprint sees f up to a rational unit, so factor its primitive part
    prim = sympy.primitive(to_sympy(f), X)[1]
    for fac, e in sympy.factor_list(prim, X, modulus=p)[1]:
        degs += [sympy.degree(fac, X)] * e
    assert fp.degree_multiset == tuple(sorted(degs))
    assert sum(fp.degree_multiset) == f.degree


def test_fingerprint_period_polynomial_pattern():
    f = P(-1, -2, 1, 1)
    for p in sympy.primerange(3, 400):
        if p == 7:
            continue
        split = factor_fingerprint_mod_p(f, p).degree_multiset == (1, 1, 1)
        assert split == (p % 7 in (1, 6))


def test_samefield_refuted():
    v = same_splitting_field_mc(P(-2, 0, 1), P(-3, 0, 1), 1000)
    assert v.verdict == "refuted" and v.certificate == 7


def test_resultant_sign_convention():
    # Res(x + 1, x^3) = (-1)^3
    assert resultant(P(1, 1), P(0, 0, 0, 1)) == -1 == sylvester_resultant(P(1, 1), P(0, 0, 0, 1))


def test_samefield_g_against_reparametrized_f():
    v = same_splitting_field_mc(cyclic_cubic_g(5), cyclic_cubic_f(F(49, 5) + 8), 10 ** 4)
    assert v.verdict == "consistent" and v.sample_size > 1000


def test_f0_and_f_minus_20_differ():
    # x^3 - 3x + 1 splits mod 19 (19 = 1 mod 9) while f_{-20} = x^3 + 20x^2 - 23x + 1 stays irreducible
    v = same_splitting_field_mc(cyclic_cubic_f(0), cyclic_cubic_f(-20), 10 ** 4)
    assert v.verdict == "refuted" and v.certificate == 19
    assert len(sympy.factor_list(to_sympy(cyclic_cubic_f(-20)), X, modulus=19)[1]) == 1
    assert len(sympy.factor_list(to_sympy(cyclic_cubic_f(0)), X, modulus=19)[1]) == 3
    # the simplest cubics giving the conductor-9 field
    for t in (-3, 3, 6):
        assert same_splitting_field_mc(cyclic_cubic_f(0), cyclic_cubic_f(t), 10 ** 4).verdict == "consistent"


def test_samefield_rejects_non_squarefree():
    # g_0 = (x + 2401)^3
    assert cyclic_cubic_g(0) == P(2401, 1) ** 3
    with pytest.raises(ValidationError):
        same_splitting_field_mc(cyclic_cubic_g(0), cyclic_cubic_f(1), 1000)


def test_samefield_distinct_cubics():
    v = same_splitting_field_mc(cyclic_cubic_f(0), cyclic_cubic_f(1), 2000)
    assert v.verdict == "refuted"


def test_json_round_trip():
    f = P(F(1, 3), -2, 0, 5)
    assert ExactPolynomial.from_json(f.to_json()) == f
    g = cyclic_cubic_f()
    assert ExactPolynomial.from_json(g.to_json()) == g
