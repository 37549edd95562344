"""Gauss period polynomials and traceless companion-matrix deformations.

The curves y^2 = det(xI - sum b_j alpha_j) share their 2-division field with
y^2 = f(x); everything here stays at the level of the defining polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import sympy
from sympy import isprime, primerange

from .errors import ValidationError
from .qpoly import ExactPolynomial, factor_fingerprint_mod_p, poly_discriminant, same_splitting_field_mc
from .qpoly.rational import fraction_str, is_square


@dataclass(frozen=True)
class PeriodPolynomial:
    ell: int
    e: int
    coefficients: tuple  # a_0 .. a_e, f = sum a_r x^(e - r)

    @property
    def poly(self):
        return ExactPolynomial(list(reversed(self.coefficients)))

    @property
    def discriminant(self):
        return poly_discriminant(self.poly)

    def to_json(self):
        return {
            "ell": self.ell,
            "e": self.e,
            "coefficients": list(self.coefficients),
            "polynomial": str(self.poly),
            "discriminant": fraction_str(self.discriminant),
        }


def period_coefficient(ell, r):
    half = (ell - 1) // 2
    return (-1) ** (r // 2) * comb(half - (r + 1) // 2, r // 2)


def period_polynomial(ell: int, split_checks: int = 5) -> PeriodPolynomial:
    """Minimal polynomial of the degree e = (ell - 1)/2 subfield of Q(zeta_ell), for ell > 3, e odd."""
    if not isinstance(ell, int) or not isprime(ell):
        raise ValidationError(f"ell must be prime, got {ell!r}")
    if ell <= 3:
        raise ValidationError("ell must exceed 3")
    e = (ell - 1) // 2
    if e % 2 == 0:
        raise ValidationError(f"(ell - 1)/2 = {e} is even; need ell = 3 mod 4")
    pp = PeriodPolynomial(ell, e, tuple(period_coefficient(ell, r) for r in range(e + 1)))
    d = pp.discriminant
    if d == 0 or not is_square(d):
        raise AssertionError(f"discriminant {d} is not a nonzero square")
    checked = 0
    for p in primerange(3, 10 ** 6):
        if checked >= split_checks:
            break
        if p % ell in (1, ell - 1):
            if factor_fingerprint_mod_p(pp.poly, p).degree_multiset != (1,) * e:
                raise AssertionError(f"period polynomial fails to split mod {p}")
            checked += 1
    return pp


def _as_poly(f):
    if isinstance(f, PeriodPolynomial):
        return f.poly
    if isinstance(f, ExactPolynomial):
        return f
    return ExactPolynomial(f)


def companion_matrix(f: ExactPolynomial):
    """Ones below the diagonal, last column -c_0..-c_{e-1}; its characteristic polynomial is f."""
    e = f.degree
    c = f.coeffs
    M = sympy.zeros(e, e)
    for i in range(1, e):
        M[i, i - 1] = 1
    for i in range(e):
        M[i, e - 1] = -sympy.Rational(c[i].numerator, c[i].denominator)
    return M


@dataclass(frozen=True)
class CompanionFamilyMember:
    base_poly: ExactPolynomial
    b: tuple
    shifts: tuple  # k_j = tr(alpha_1^j)/e
    alphas: tuple  # sympy matrices alpha_j
    member_poly: ExactPolynomial
    discriminant: Fraction

    @property
    def on_discriminant_locus(self):
        return self.discriminant == 0

    def to_json(self):
        return {
            "base_poly": str(self.base_poly),
            "b": [fraction_str(x) for x in self.b],
            "shifts": [fraction_str(k) for k in self.shifts],
            "member_poly": self.member_poly.to_json(),
            "member_poly_str": str(self.member_poly),
            "discriminant": fraction_str(self.discriminant),
            "on_discriminant_locus": self.on_discriminant_locus,
        }


def _frac(x):
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def companion_family(f, b) -> CompanionFamilyMember:
    """The member det(xI - sum_j b_j alpha_j) with alpha_j = A^j - k_j I traceless, A the companion of f."""
    f = _as_poly(f)
    e = f.degree
    if e < 1 or e % 2 == 0:
        raise ValidationError("the base polynomial must have odd degree")
    if f.lc != 1 or any(c.denominator != 1 for c in f.coeffs):
        raise ValidationError("the base polynomial must be monic with integer coefficients")
    if f.squarefree_part().degree != e:
        raise ValidationError("the base polynomial must be squarefree")
    b = tuple(Fraction(x) if not isinstance(x, str) else Fraction(x) for x in b)
    if len(b) != e:
        raise ValidationError(f"need {e} parameters b_1..b_{e}, got {len(b)}")
    if all(x == 0 for x in b):
        raise ValidationError("b is identically zero")
    A = companion_matrix(f)
    I = sympy.eye(e)
    alphas, shifts = [], []
    P = I
    for _ in range(e):
        P = P * A
        k = P.trace() / e
        alphas.append(P - k * I)
        shifts.append(_frac(k))
    M = sympy.zeros(e, e)
    for bj, al in zip(b, alphas):
        M += sympy.Rational(bj.numerator, bj.denominator) * al
    assert M.trace() == 0
    x = sympy.Symbol("x")
    cp = M.charpoly(x).all_coeffs()  # descending
    member = ExactPolynomial([_frac(c) for c in reversed(cp)])
    assert member.degree == e and (e == 1 or member.coeffs[e - 1] == 0)
    disc = poly_discriminant(member) if e >= 2 else Fraction(1)
    return CompanionFamilyMember(f, b, tuple(shifts), tuple(alphas), member, disc)


def two_torsion_match(f, g, p_bound: int):
    """Same 2-division field for y^2 = f and y^2 = g, i.e. same splitting field: sampled evidence only."""
    return same_splitting_field_mc(_as_poly(f), _as_poly(g), p_bound)
