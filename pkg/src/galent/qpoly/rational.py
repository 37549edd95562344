"""Rational numbers modulo squares, and exact rational functions in t."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from sympy import ZZ, factorint
from sympy.polys.euclidtools import dup_inner_gcd

from . import _dense as D


def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if hasattr(x, "p") and hasattr(x, "q"):  # sympy Rational
        return Fraction(int(x.p), int(x.q))
    raise TypeError(f"cannot read {x!r} as an exact rational")


def squarefree_part(n: int) -> int:
    """The squarefree integer s with n = s * k^2 (sign kept)."""
    if n == 0:
        raise ValueError("0 has no square class")
    s = -1 if n < 0 else 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            s *= p
    return s


def square_class(q) -> int:
    """Squarefree integer representing q in Q^x / (Q^x)^2."""
    q = to_fraction(q)
    return squarefree_part(q.numerator * q.denominator)


def is_square(q) -> bool:
    q = to_fraction(q)
    if q < 0:
        return False
    a, b = q.numerator, q.denominator
    return math.isqrt(a) ** 2 == a and math.isqrt(b) ** 2 == b


def same_square_class(p, q) -> bool:
    """p/q is a square; decided without factoring."""
    return is_square(to_fraction(p) * to_fraction(q))


def rational_root(q, k):
    """Exact k-th root of a rational if it exists, else None."""
    q = to_fraction(q)
    if q < 0:
        if k % 2 == 0:
            return None
        r = rational_root(-q, k)
        return None if r is None else -r

    def iroot(n):
        r = _iroot_big(n, k)
        return r if r ** k == n else None

    a, b = iroot(q.numerator), iroot(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _iroot_big(n, k):
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _content(f):
    return reduce(math.gcd, (int(a) for a in f), 0)


def _cancel(num, den):
    """num/den in lowest terms; the gcd runs over Z[t] (Euclid over Q blows up)."""
    L = reduce(math.lcm, (a.denominator for a in num + den), 1)
    a = [ZZ(int(c * L)) for c in reversed(num)]
    b = [ZZ(int(c * L)) for c in reversed(den)]
    _, cf, cg = dup_inner_gcd(a, b, ZZ)
    return tuple(Fraction(int(c)) for c in reversed(cf)), tuple(Fraction(int(c)) for c in reversed(cg))


def _to_integer_pair(num, den):
    """Scale a num/den pair of Q[t] tuples to integer coefficients, overall content 1, lc(den) > 0."""
    L = reduce(math.lcm, (a.denominator for a in num + den), 1)
    num = [a * L for a in num]
    den = [a * L for a in den]
    g = math.gcd(_content(num), _content(den))
    if den[-1] < 0:
        g = -g
    return tuple(Fraction(int(a / g)) for a in num), tuple(Fraction(int(a / g)) for a in den)


class RationalFunction:
    """An element of Q(t), stored as a reduced pair of integer polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),), _reduced=False):
        num = D.trim(to_fraction(a) for a in num)
        den = D.trim(to_fraction(a) for a in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            num, den = (), (Fraction(1),)
        elif not _reduced:
            if len(den) > 1:
                num, den = _cancel(num, den)
            num, den = _to_integer_pair(num, den)
        self.num = num
        self.den = den

    @classmethod
    def t(cls):
        return cls((0, 1))

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, dict):
            return cls(x["num"], x.get("den", [1]))
        return cls((to_fraction(x),))

    @classmethod
    def from_poly(cls, coeffs):
        return cls(coeffs)

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return (self.num[0] if self.num else Fraction(0)) / self.den[0]

    def __call__(self, t0):
        t0 = to_fraction(t0)
        d = D.evaluate(self.den, t0)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at t = {t0}")
        return D.evaluate(self.num, t0) / d

    # arithmetic
    def _wrap(self, other):
        if isinstance(other, RationalFunction):
            return other
        try:
            return RationalFunction((to_fraction(other),))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(D.add(self.num, o.num), self.den)
        return RationalFunction(D.add(D.mul(self.num, o.den), D.mul(o.num, self.den)), D.mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(D.neg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if o.is_constant() and o.num:
            c = o.num[0] / o.den[0]
            return RationalFunction(D.scale(self.num, c), self.den)
        return RationalFunction(D.mul(self.num, o.num), D.mul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RationalFunction(self.den, self.num, _reduced=False)

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        one = Fraction(1)
        return RationalFunction(D.power(self.num, e, one), D.power(self.den, e, one), _reduced=True)

    def __eq__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_square(self):
        """Exact test for being a square in Q(t)."""
        if not self.num:
            return True
        return poly_sqrt(D.mul(self.num, self.den)) is not None

    def to_json(self):
        return {"num": [fraction_str(a) for a in self.num] or ["0"], "den": [fraction_str(a) for a in self.den]}

    def __repr__(self):
        n = poly_str(self.num, "t")
        if self.den == (Fraction(1),):
            return n
        return f"({n})/({poly_str(self.den, 't')})"


def fraction_str(q):
    q = to_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def poly_str(coeffs, var="x"):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if isinstance(c, RationalFunction):
            cs = f"({c!r})"
        else:
            cs = fraction_str(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def poly_sqrt(f):
    """Square root of a polynomial over Q (tuple form), or None."""
    f = D.trim(f)
    if not f:
        return ()
    n = len(f) - 1
    if n % 2:
        return None
    lead = rational_root(f[-1], 2)
    if lead is None:
        return None
    m = n // 2
    # top-down: determine coefficients s_m, s_{m-1}, ..., s_0
    s = [Fraction(0)] * (m + 1)
    s[m] = lead
    for k in range(m - 1, -1, -1):
        # coefficient of x^{m+k} in s^2 equals f[m+k]
        acc = sum(s[i] * s[m + k - i] for i in range(k + 1, m))
        s[k] = (f[m + k] - acc) / (2 * lead)
    if D.mul(tuple(s), tuple(s)) != f:
        return None
    return D.trim(s)
