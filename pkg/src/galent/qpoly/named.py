"""Explicit polynomials used by the cyclic quartic and cyclic cubic constructions."""

from __future__ import annotations

from fractions import Fraction

from .poly import ExactPolynomial
from .rational import RationalFunction, to_fraction

F = Fraction


def _scalar(t):
    """t as an exact scalar: a Fraction, or the generator of Q(t) when t is None."""
    if t is None:
        return RationalFunction.t(), "Q(t)"
    if isinstance(t, RationalFunction):
        return t, "Q(t)"
    return to_fraction(t), "Q"


def delta(t=None):
    """delta(t) = 5(t^2 + 22/25 t + 1/5)."""
    s, _ = _scalar(t)
    return 5 * (s * s + F(22, 25) * s + F(1, 5))


def delta_as_two_squares(t=None):
    """(m(t), n(t)) = (t + 7/25, 2t + 24/25), with m^2 + n^2 = delta."""
    s, _ = _scalar(t)
    return s + F(7, 25), 2 * s + F(24, 25)


def cyclic_cubic_f(t=None):
    """f_t(x) = x^3 - t x^2 + (t - 3) x + 1."""
    s, dom = _scalar(t)
    return ExactPolynomial([1, s - 3, -s, 1], dom)


def cyclic_cubic_g(t=None):
    """The cubic g_t(x) cutting out Q(x(P_t)) for the 7-isogeny family."""
    s, dom = _scalar(t)
    q = s * s + 13 * s + 49
    c2 = 147 * q
    c1 = 147 * q * (33 * s * s + 637 * s + 2401)
    c0 = 49 * q * (881 * s ** 4 + 38122 * s ** 3 + 525819 * s ** 2 + 3058874 * s + 5764801)
    return ExactPolynomial([c0, c1, c2, 1], dom)
