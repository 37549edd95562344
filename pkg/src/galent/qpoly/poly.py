"""The ExactPolynomial type: univariate polynomials in x over Q or Q(t)."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from ..errors import ValidationError
from . import _dense as D
from .rational import RationalFunction, fraction_str, poly_str, square_class, to_fraction

DOMAINS = ("Q", "Q(t)")


def _coerce(x, domain):
    if domain == "Q":
        if isinstance(x, RationalFunction):
            return x.constant_value()
        return to_fraction(x)
    return RationalFunction.coerce(x)


class ExactPolynomial:
    __slots__ = ("coeffs", "domain")

    def __init__(self, coeffs, domain="Q"):
        if domain not in DOMAINS:
            raise ValidationError(f"unknown coefficient domain {domain!r}")
        self.domain = domain
        self.coeffs = D.trim(_coerce(c, domain) for c in coeffs)

    @classmethod
    def x(cls, domain="Q"):
        return cls((0, 1), domain)

    @classmethod
    def constant(cls, c, domain="Q"):
        return cls((c,), domain)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1]

    def one(self):
        return Fraction(1) if self.domain == "Q" else RationalFunction((1,))

    def is_zero(self):
        return not self.coeffs

    def _new(self, coeffs):
        p = ExactPolynomial.__new__(ExactPolynomial)
        p.domain = self.domain
        p.coeffs = D.trim(coeffs)
        return p

    def _lift(self, other):
        if isinstance(other, ExactPolynomial):
            if other.domain == self.domain:
                return other
            if self.domain == "Q(t)":
                return ExactPolynomial(other.coeffs, "Q(t)")
            raise ValidationError("cannot mix Q(t) coefficients into a polynomial over Q")
        return self._new((_coerce(other, self.domain),))

    # arithmetic
    def __add__(self, other):
        return self._new(D.add(self.coeffs, self._lift(other).coeffs))

    __radd__ = __add__

    def __neg__(self):
        return self._new(D.neg(self.coeffs))

    def __sub__(self, other):
        return self._new(D.sub(self.coeffs, self._lift(other).coeffs))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        return self._new(D.mul(self.coeffs, self._lift(other).coeffs))

    __rmul__ = __mul__

    def __pow__(self, e):
        return self._new(D.power(self.coeffs, e, self.one()))

    def divrem(self, other):
        q, r = D.divmod_(self.coeffs, self._lift(other).coeffs)
        return self._new(q), self._new(r)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def exact_div(self, other):
        q, r = self.divrem(other)
        if not r.is_zero():
            raise ValidationError("division is not exact")
        return q

    def gcd(self, other):
        return self._new(D.gcd(self.coeffs, self._lift(other).coeffs))

    def monic(self):
        return self._new(D.monic(self.coeffs))

    def derivative(self):
        return self._new(D.derivative(self.coeffs))

    def compose(self, other):
        return self._new(D.compose(self.coeffs, self._lift(other).coeffs))

    def __call__(self, x):
        return D.evaluate(self.coeffs, x)

    def __eq__(self, other):
        if isinstance(other, ExactPolynomial):
            return self.coeffs == other.coeffs and (self.domain == other.domain or self.degree <= 0)
        try:
            return self.coeffs == self._lift(other).coeffs
        except (TypeError, ValidationError):
            return NotImplemented

    def __hash__(self):
        return hash((self.domain, self.coeffs))

    def __repr__(self):
        return f"ExactPolynomial({poly_str(self.coeffs)} over {self.domain})"

    def __str__(self):
        return poly_str(self.coeffs)

    def squarefree_part(self):
        g = self.gcd(self.derivative())
        return self if g.degree <= 0 else self.exact_div(g)

    def specialize(self, t0):
        """Substitute t = t0 in every coefficient (Q(t) -> Q)."""
        if self.domain == "Q":
            return self
        return ExactPolynomial([c(t0) for c in self.coeffs], "Q")

    def integer_coefficients(self):
        """Primitive integer multiple with positive leading coefficient (over Q only)."""
        if self.domain != "Q":
            raise ValidationError("integer scaling needs rational coefficients")
        if not self.coeffs:
            return []
        L = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * L) for c in self.coeffs]
        g = reduce(math.gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return [v // g for v in ints]

    def denominator_lcm(self):
        return reduce(math.lcm, (c.denominator for c in self.coeffs), 1) if self.domain == "Q" else None

    def to_json(self):
        if self.domain == "Q":
            coeffs = [fraction_str(c) for c in self.coeffs]
        else:
            coeffs = [c.to_json() for c in self.coeffs]
        return {"domain": self.domain, "coefficients": coeffs}

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, list):
            return cls(doc, "Q")
        try:
            domain = doc.get("domain", "Q")
            return cls(doc["coefficients"], domain)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"malformed polynomial document: {exc}") from None


def poly_discriminant(f: ExactPolynomial):
    """Discriminant via Res(f, f'); an element of Q or Q(t)."""
    if f.degree < 2:
        raise ValidationError("discriminant needs degree at least 2")
    return D.discriminant(f.coeffs, f.one())


def discriminant_square_class(f: ExactPolynomial):
    """Squarefree integer representing disc(f) mod squares (f over Q)."""
    if f.domain != "Q":
        raise ValidationError("square classes are only reported over Q")
    d = poly_discriminant(f)
    if d == 0:
        raise ValidationError("polynomial is not squarefree")
    return square_class(d)


def resultant(f: ExactPolynomial, g: ExactPolynomial):
    return D.resultant(f.coeffs, f._lift(g).coeffs, f.one())
