"""Weierstrass models over Q and Q(t), twists, named families and the C_d conics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional

from .errors import ValidationError
from .qpoly.rational import (
    RationalFunction, fraction_str, rational_root, square_class, squarefree_part, to_fraction,
)

F = Fraction


def _scalar(x, base):
    if base == "Q":
        if isinstance(x, RationalFunction):
            return x.constant_value()
        return to_fraction(x)
    return RationalFunction.coerce(x)


class EllipticCurveModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q or Q(t)."""

    __slots__ = ("a1", "a2", "a3", "a4", "a6", "base", "label")

    def __init__(self, ainvs, base="Q", label="", check=True):
        if base not in ("Q", "Q(t)"):
            raise ValidationError(f"unknown base {base!r}")
        if len(ainvs) != 5:
            raise ValidationError("expected five a-invariants [a1, a2, a3, a4, a6]")
        try:
            self.a1, self.a2, self.a3, self.a4, self.a6 = (_scalar(a, base) for a in ainvs)
        except (TypeError, ValueError, ZeroDivisionError, KeyError) as exc:
            raise ValidationError(f"bad a-invariant: {exc}") from None
        self.base = base
        self.label = label
        if check and self.discriminant == 0:
            raise ValidationError("singular model: discriminant is zero")

    @property
    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self):
        b2 = self.b2
        return -b2 * b2 * b2 + 36 * b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j(self):
        return self.c4 ** 3 / self.discriminant

    def specialize(self, t0, label=None):
        if self.base == "Q":
            return self
        return EllipticCurveModel([a(t0) for a in self.ainvs], "Q", label or f"{self.label} at t={t0}")

    def __eq__(self, other):
        return isinstance(other, EllipticCurveModel) and self.base == other.base and self.ainvs == other.ainvs

    def __hash__(self):
        return hash((self.base, self.ainvs))

    def __repr__(self):
        return f"EllipticCurveModel({[_fmt(a) for a in self.ainvs]}, {self.base!r})"

    def to_json(self):
        doc = {"a_invariants": [_fmt(a) for a in self.ainvs], "base": self.base}
        if self.label:
            doc["label"] = self.label
        return doc

    @classmethod
    def from_json(cls, doc):
        try:
            return cls(doc["a_invariants"], doc.get("base", "Q"), doc.get("label", ""))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValidationError(f"malformed curve document: {exc}") from None


def _fmt(a):
    return a.to_json() if isinstance(a, RationalFunction) else fraction_str(a)


# invariants and twists

def curve_invariants(E: EllipticCurveModel):
    out = {"j": E.j, "discriminant": E.discriminant}
    if E.base == "Q":
        out["discriminant_square_class"] = square_class(E.discriminant)
    return out


def short_model(E: EllipticCurveModel):
    """y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4, isomorphic to E (complete the square)."""
    return EllipticCurveModel([0, E.b2 / 4, 0, E.b4 / 2, E.b6 / 4], E.base, E.label)


def quadratic_twist(E: EllipticCurveModel, d: int):
    if E.base != "Q":
        raise ValidationError("twists are implemented over Q")
    if not isinstance(d, int) or d == 0 or squarefree_part(d) != d:
        raise ValidationError(f"twist parameter must be a nonzero squarefree integer, got {d!r}")
    S = short_model(E)
    label = f"{E.label} twisted by {d}" if E.label else ""
    return EllipticCurveModel([0, d * S.a2, 0, d * d * S.a4, d ** 3 * S.a6], "Q", label)


def is_isomorphic(E1: EllipticCurveModel, E2: EllipticCurveModel):
    """Q-isomorphism test through (c4, c6): c4' = u^4 c4 and c6' = u^6 c6 for some u in Q^x."""
    if E1.base != "Q" or E2.base != "Q":
        raise ValidationError("isomorphism test is implemented over Q")
    c4, c6, d4, d6 = E1.c4, E1.c6, E2.c4, E2.c6
    if (c4 == 0) != (d4 == 0) or (c6 == 0) != (d6 == 0):
        return False
    if c4 == 0:
        return rational_root(d6 / c6, 6) is not None
    if c6 == 0:
        return rational_root(d4 / c4, 4) is not None
    lam = (d6 * c4) / (c6 * d4)  # u^2
    return d4 == lam * lam * c4 and d6 == lam ** 3 * c6 and rational_root(lam, 2) is not None


def universal_curve(j0, label=None):
    """y^2 + xy = x^3 - 36/(j0 - 1728) x - 1/(j0 - 1728), a model with j-invariant j0."""
    base = "Q(t)" if isinstance(j0, RationalFunction) else "Q"
    if base == "Q":
        j0 = to_fraction(j0)
    if j0 == 0 or j0 == 1728:
        raise ValidationError("universal curve excludes j = 0 and j = 1728")
    s = 1 / (j0 - 1728)
    return EllipticCurveModel([1, 0, 0, -36 * s, -s], base, label or f"universal curve j={_fmt(j0) if base == 'Q' else 'j(t)'}")


def integral_model(E: EllipticCurveModel):
    """Scale by u = lcm of denominators: a_i -> u^i a_i."""
    if E.base != "Q":
        raise ValidationError("integral models are defined over Q")
    u = reduce(math.lcm, (a.denominator for a in E.ainvs), 1)
    weights = (1, 2, 3, 4, 6)
    return EllipticCurveModel([a * u ** w for a, w in zip(E.ainvs, weights)], "Q", E.label), u


# quadratic fields inside cyclotomic fields

def quad_conductor(d: int) -> int:
    """Conductor of Q(sqrt d): |d| if d = 1 mod 4, else 4|d|."""
    if not isinstance(d, int) or d in (0, 1) or squarefree_part(d) != d:
        raise ValidationError(f"need a squarefree integer other than 0 and 1, got {d!r}")
    return abs(d) if d % 4 == 1 else 4 * abs(d)


def in_cyclotomic(d: int, n: int) -> bool:
    return n % quad_conductor(d) == 0


@dataclass(frozen=True)
class SerreReport:
    delta_square_class: object  # squarefree int, or "square"
    serre_field: Optional[str]
    minimal_cyclotomic_level: Optional[int]
    witness_level: int
    vertical_flag: bool

    def to_json(self):
        return {
            "delta_square_class": self.delta_square_class,
            "serre_field": self.serre_field,
            "minimal_cyclotomic_level": self.minimal_cyclotomic_level,
            "witness_level": self.witness_level,
            "vertical_flag": self.vertical_flag,
        }


def serre_entanglement(E: EllipticCurveModel) -> SerreReport:
    """The quadratic subfield Q(sqrt Delta) of Q(E[2]) and the cyclotomic levels containing it.

    witness_level is the witness 4|Delta| of an integral model; the conductor
    of Q(sqrt Delta) is the minimal such level and always divides it.
    """
    Eint, _ = integral_model(E)
    D = int(Eint.discriminant)
    witness = 4 * abs(D)
    s = square_class(D)
    if s == 1:
        return SerreReport("square", None, None, witness, True)
    cond = quad_conductor(s)
    assert witness % cond == 0
    return SerreReport(s, f"Q(sqrt({s}))", cond, witness, False)


# the conics C_d

def c_d_formula(m, n):
    """A point on d y^2 = 5(x^2 + 22/25 x + 1/5) with d = m^2 + n^2.

    Solves x + 7/25 = m y, 2x + 24/25 = n y.  Pure arithmetic, so it also
    runs on symbolic m and n.
    """
    den = n - 2 * m
    return (24 * m - 7 * n) / (25 * den), 2 / (5 * den)


def c_d_equation(x, y, d):
    """5(x^2 + 22/25 x + 1/5) - d y^2."""
    return 5 * (x * x + F(22, 25) * x + F(1, 5)) - d * y * y


def c_d_point(m: int, n: int):
    """Rational point (x, y) with y > 0 on C_d, d = m^2 + n^2; verified exactly."""
    if not isinstance(m, int) or not isinstance(n, int):
        raise ValidationError("m and n must be integers")
    if m == 0 and n == 0:
        raise ValidationError("m and n are both zero")
    if n == 2 * m:
        raise ValidationError("n - 2m vanishes, no point from this parametrization")
    x, y = c_d_formula(F(m), F(n))
    if y < 0:
        y = -y
    d = m * m + n * n
    if c_d_equation(x, y, d) != 0:
        raise AssertionError("C_d point failed verification")
    return x, y


# families

def _vanish_check(name, checks):
    for label, value in checks:
        if value == 0:
            raise ValidationError(f"{name}: excluded parameter, {label} vanishes")


def _hesse3(s):
    return [0, 0, 0, -27 * s * (s ** 3 + 8), 54 * (s ** 6 - 20 * s ** 3 - 8)], [("t - 1", s - 1)]


def _rs9(s):
    return [0, 0, 0, -3888 * (2303 * s * s + 1), -46656 * (-2303 * s ** 3 - 6909 * s * s + 3 * s + 1)], []


def _isog5(s):
    u = s * s + F(22, 25) * s + F(1, 5)
    w = s * s - 20 * s - 25
    v = s * s + 10 * s + 5
    checks = [("t^2 + 22/25 t + 1/5", u), ("t^2 - 20t - 25", w), ("t^2 + 10t + 5", v)]
    if any(c == 0 for _, c in checks):
        return None, checks
    q = v ** 3 / (u * w * w)
    return [0, 0, 0, -27 * q, 54 * q], checks


def _isog7(s):
    q = s * s + 13 * s + 49
    r = s * s + 245 * s + 2401
    a4 = -27 * q ** 3 * r
    a6 = 54 * q ** 4 * (s ** 4 - 490 * s ** 3 - 21609 * s * s - 235298 * s - 823543)
    return [0, 0, 0, a4, a6], [("t^2 + 13t + 49", q), ("t^2 + 245t + 2401", r)]


def _tors4(s):
    c = s * s - F(1, 16)
    return [1, -c, -c, 0, 0], [("d", s), ("d^2 - 1/16", c)]


def _poly(coeffs_desc, s):
    acc = 0
    for c in coeffs_desc:
        acc = acc * s + c
    return acc


P1 = [1, 8, 25, 34, 6, -30, -17, 6, 0, -4, 3, 4, 1]
P2 = [1, 18, 131, 480, 1032, 1242, 805, 306, 132, 60, -1, -6, 1]
P3 = [1, -8, 265, -1474, 5046, -10050, 11263, -7206, 2880, -956, 243, -4, 1]
P4 = [1, -9, 39, -75, 75, -114, 26, 114, 75, 75, 39, 9, 1]
P5 = [211, -189, -501, -135, 345, 966, 146, -966, 345, 135, -501, 189, 211]


def j_family(i, s):
    """The j-invariant families j_1..j_5 as (numerator, denominator factors) evaluated at s."""
    p = lambda c: _poly(c, s)
    if i == 1:
        num = (s * s + s + 1) ** 3 * p([1, 5, 12, 9, 2, 1, 1]) * p(P1) ** 3
        dens = [("t", s, 14), ("t + 1", s + 1, 14), ("t^3 + 2t^2 - t - 1", p([1, 2, -1, -1]), 2)]
    elif i == 2:
        num = 7 ** 4 * (s * s + s + 1) ** 3 * p([9, 39, 64, 23, 4, 15, 9]) * p(P2) ** 3
        dens = [("t^3 + t^2 - 2t - 1", p([1, 1, -2, -1]), 14), ("t^3 + 8t^2 + 5t - 1", p([1, 8, 5, -1]), 2)]
    elif i == 3:
        num = (s * s - s + 1) ** 3 * p([1, -5, 12, -9, 2, -1, 1]) * p(P3) ** 3
        dens = [("t - 1", s - 1, 2), ("t", s, 2), ("t^3 - 2t^2 - t + 1", p([1, -2, -1, 1]), 14)]
    elif i in (4, 5):
        num = 2 ** 12 * p(P4 if i == 4 else P5) ** 3
        dens = [("t - 1", s - 1, 15), ("t + 1", s + 1, 15), ("t^2 - 4t - 1", p([1, -4, -1]), 3)]
    else:
        raise ValidationError(f"no j-family {i}")
    return num, dens


def _jfam(i):
    def build(s):
        num, dens = j_family(i, s)
        checks = [(name, v) for name, v, _ in dens]
        if any(v == 0 for _, v in checks):
            return None, checks
        den = 1
        for _, v, e in dens:
            den = den * v ** e
        j = num / den
        checks += [("j", j), ("j - 1728", j - 1728)]
        if j == 0 or j == 1728:
            return None, checks
        return list(universal_curve(j).ainvs), checks
    return build


FAMILIES = {
    "hesse3": (_hesse3, "Hesse cubic: rational 3-torsion point, Q(E[3]) = Q(sqrt(-3)); t != 1"),
    "rs9": (_rs9, "Rubin-Silverberg family with Q(E_t[2]) the cubic subfield of Q(zeta_9)"),
    "isog5": (_isog5, "rational 5-isogeny family whose kernel x-coordinate generates Q(sqrt(delta(t)))"),
    "isog7": (_isog7, "rational 7-isogeny family whose kernel x-coordinate is cut out by g_t"),
    "tors4": (_tors4, "Z/2 x Z/4 torsion family in the parameter d; d != 0, +-1/4"),
}
for _i in range(1, 6):
    FAMILIES[f"jfam{_i}"] = (_jfam(_i), f"universal curve over the j-invariant family j_{_i}(t)")
del _i


def family_curve(name, t=None):
    """The family member at t (a rational), or the generic member over Q(t) when t is None."""
    if name not in FAMILIES:
        raise ValidationError(f"unknown family {name!r}; known: {sorted(FAMILIES)}")
    builder = FAMILIES[name][0]
    if t is None:
        s, base = RationalFunction.t(), "Q(t)"
    else:
        s, base = to_fraction(t), "Q"
    ainvs, checks = builder(s)
    if base == "Q":
        _vanish_check(name, checks)
    label = f"{name}(t)" if t is None else f"{name} at t={fraction_str(s)}"
    E = EllipticCurveModel(ainvs, base, label, check=False)
    if E.discriminant == 0:
        raise ValidationError(f"{name}: excluded parameter, the discriminant vanishes")
    return E


def family_specialize(name, params):
    if isinstance(params, (list, tuple)):
        if len(params) != 1:
            raise ValidationError("families take a single parameter")
        params = params[0]
    return family_curve(name, params)


def hesse_j(t=None):
    """Closed form j-invariant t^3(t+2)^3(t^2-2t+4)^3 / ((t-1)^3(t^2+t+1)^3)."""
    s = RationalFunction.t() if t is None else to_fraction(t)
    return (s * (s + 2) * (s * s - 2 * s + 4)) ** 3 / ((s - 1) * (s * s + s + 1)) ** 3


# fixtures

CM_TABLE = [
    # (j, Delta_K, f, conductor of the listed curves, labels)
    (2 ** 4 * 3 ** 3 * 5 ** 3, -3, 2, 36, ("36.a1", "36.a2")),
    (-(2 ** 15) * 3 * 5 ** 3, -3, 3, 27, ("27.a1", "27.a2")),
    (-(3 ** 3) * 5 ** 3, -7, 1, 49, ("49.a2", "49.a4")),
    (3 ** 3 * 5 ** 3 * 17 ** 3, -7, 2, 49, ("49.a1", "49.a3")),
    (-(2 ** 15), -11, 1, 121, ("121.b1", "121.b2")),
    (-(2 ** 15) * 3 ** 3, -19, 1, 361, ("361.a1", "361.a2")),
    (-(2 ** 18) * 3 ** 3 * 5 ** 3, -43, 1, 1849, ("1849.b1", "1849.b2")),
    (-(2 ** 15) * 3 ** 3 * 5 ** 3 * 11 ** 3, -67, 1, 4489, ("4489.b1", "4489.b2")),
    (-(2 ** 18) * 3 ** 3 * 5 ** 3 * 23 ** 3 * 29 ** 3, -163, 1, 26569, ("26569.a1", "26569.a2")),
]

_MODELS = {
    "50.a1": ([1, 0, 1, -126, -552], "y^2 + xy + y = x^3 - 126x - 552, j = -5^2 241^3 / 2^3"),
    "E1": ([0, 1, 0, -3, 1], "y^2 = x^3 + x^2 - 3x + 1, CM by Z[sqrt(-2)]"),
    "E2": ([0, -1, 0, -13, 21], "y^2 = x^3 - x^2 - 13x + 21, twist of E1 by 2"),
    "E3": ([0, 1, 0, -13, -21], "y^2 = x^3 + x^2 - 13x - 21, twist of E1 by -2"),
    "E4": ([0, -1, 0, -3, -1], "y^2 = x^3 - x^2 - 3x - 1, twist of E1 by -1"),
    "37.a1": ([0, 0, 1, -1, 0], "y^2 + y = x^3 - x, auxiliary curve with surjective mod-3 image"),
}


def curve_fixture(name):
    if name in _MODELS:
        return EllipticCurveModel(_MODELS[name][0], "Q", name)
    for j, dk, f, _, labels in CM_TABLE:
        if name in labels:
            return universal_curve(j, label=f"{name} (j-invariant representative)")
    raise ValidationError(f"unknown curve fixture {name!r}")


def curve_fixture_descriptions():
    out = {k: v[1] for k, v in _MODELS.items()}
    for j, dk, f, _, labels in CM_TABLE:
        for lab in labels:
            out[lab] = f"CM curve with j = {j}, Delta_K = {dk}, f = {f}; represented by the universal curve of j"
    return out
