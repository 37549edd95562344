"""Point counts over F_p, Frobenius signatures mod n, and sampled image checks."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy import factorint, isprime, primerange

from .eqcurves import EllipticCurveModel
from .errors import BudgetExceeded, ValidationError
from .modmat import FiniteMatrixGroup, det_image
from .qpoly.divpoly import division_polynomials

MAX_P = 100_000
COVERAGE_THRESHOLD = 0.99


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _mod(q: Fraction, p):
    if q.denominator % p == 0:
        raise ValidationError(f"bad reduction at p = {p}: model is not integral there")
    return q.numerator * pow(q.denominator, -1, p) % p


def _reduce_curve(E: EllipticCurveModel, p):
    if E.base != "Q":
        raise ValidationError("point counting needs a curve over Q")
    if not isprime(p):
        raise ValidationError(f"{p} is not prime")
    if p > MAX_P:
        raise BudgetExceeded(f"p = {p} exceeds the point-counting budget {MAX_P}")
    a = [_mod(c, p) for c in E.ainvs]
    if _mod(E.discriminant, p) == 0:
        raise ValidationError(f"bad reduction at p = {p}")
    return a


def _count_brute(a, p):
    a1, a2, a3, a4, a6 = a
    n = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p == 0:
                n += 1
    return n


def _square_table(p):
    sq = np.zeros(p, dtype=np.int8)
    sq[(np.arange(p, dtype=np.int64) ** 2) % p] = 1
    return sq


def _g_values(a, p):
    """(2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, evaluated at every x in F_p."""
    a1, a2, a3, a4, a6 = a
    b2, b4, b6 = (a1 * a1 + 4 * a2) % p, (2 * a4 + a1 * a3) % p, (a3 * a3 + 4 * a6) % p
    x = np.arange(p, dtype=np.int64)
    g = (4 * x + b2) % p
    g = (g * x + 2 * b4) % p
    g = (g * x + b6) % p
    return g


def _points_over_x(a, p):
    """Number of affine points above each x in F_p (0, 1 or 2)."""
    if p == 2:
        a1, a2, a3, a4, a6 = a
        return np.array([sum((y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2 == 0
                              for y in range(2)) for x in range(2)], dtype=np.int64)
    g = _g_values(a, p)
    sq = _square_table(p)
    return np.where(g == 0, 1, 2 * sq[g].astype(np.int64))


def count_points(E: EllipticCurveModel, p: int) -> int:
    """#E(F_p), including the point at infinity."""
    a = _reduce_curve(E, p)
    n = _count_brute(a, p) if p == 2 else 1 + int(_points_over_x(a, p).sum())
    ap = p + 1 - n
    assert ap * ap <= 4 * p, "Hasse bound violated"
    return n


def trace_of_frobenius(E, p):
    return p + 1 - count_points(E, p)


# torsion structure of E(F_p)

def _poly_values_mod_p(coeffs, p):
    x = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * x + _mod(c, p)) % p
    return acc


class _TorsionCounter:
    """Counts #E(F_p)[m] through the division polynomials of E."""

    def __init__(self, E: EllipticCurveModel, n):
        self.E = E
        self.n = n
        self.ppowers = sorted({q ** k for q, e in factorint(n).items() for k in range(1, e + 1)})
        top = max(self.ppowers, default=1)
        self.f = division_polynomials(E, top) if top > 1 else {}

    def count(self, a, p, m, over_x):
        if m == 1:
            return 1
        if p == 2:
            return self._brute_torsion(a, m)
        fm = self.f[m]
        vals = _poly_values_mod_p(fm.coeffs, p)
        total = 1 + int(over_x[vals == 0].sum())
        if m % 2 == 0:
            g = _g_values(a, p)
            total += int((g == 0).sum())
        return total

    def _brute_torsion(self, a, m):
        raise ValidationError("torsion profiles at p = 2 are not supported")

    def structure(self, a, p):
        """{prime l: (alpha, beta)} with E(F_p)[l^inf] truncated at the l-part of n = Z/l^alpha x Z/l^beta."""
        over_x = _points_over_x(a, p)
        out = {}
        for q, e in factorint(self.n).items():
            prev, alpha, beta = 0, 0, 0
            for k in range(1, e + 1):
                c = self.count(a, p, q ** k, over_x)
                ek = round(math.log(c, q))
                assert q ** ek == c
                step = ek - prev
                if step >= 1:
                    beta += 1
                if step == 2:
                    alpha += 1
                prev = ek
            out[q] = (alpha, beta)
        return out


def _profile_from_structure(struct, n):
    prof = []
    for m in _divisors(n):
        e1 = e2 = 1
        for q, (alpha, beta) in struct.items():
            v = 0
            mm = m
            while mm % q == 0:
                mm //= q
                v += 1
            e1 *= q ** min(alpha, v)
            e2 *= q ** min(beta, v)
        prof.append((m, e1, e2))
    return tuple(prof)


def _kernel_profile(key, n):
    """Invariant factors of ker(h - I) on (Z/m)^2 for every m | n, via the Smith form of a lift."""
    a, b, c, d = key
    A = (a - 1, b, c, d - 1)
    s1 = math.gcd(math.gcd(A[0], A[1]), math.gcd(A[2], A[3]))
    det = A[0] * A[3] - A[1] * A[2]
    s2 = abs(det) // s1 if s1 else 0
    prof = []
    for m in _divisors(n):
        e1, e2 = math.gcd(m, s1), math.gcd(m, s2)
        prof.append((m, min(e1, e2), max(e1, e2)))
    return tuple(prof)


@dataclass(frozen=True)
class FrobeniusSignature:
    p: int
    trace_mod_n: int
    det_mod_n: int
    fix_profile: tuple  # ((m, d1, d2), ...) with E(F_p)[m] = Z/d1 x Z/d2

    @property
    def key(self):
        return (self.trace_mod_n, self.det_mod_n, self.fix_profile)

    def to_json(self):
        return {
            "p": self.p,
            "trace_mod_n": self.trace_mod_n,
            "det_mod_n": self.det_mod_n,
            "fix_profile": [{"m": m, "invariants": [d1, d2]} for m, d1, d2 in self.fix_profile],
        }


def excluded_primes_divisor(E: EllipticCurveModel, n):
    D = E.discriminant
    den = math.lcm(*(a.denominator for a in E.ainvs))
    return 6 * n * abs(D.numerator) * D.denominator * den


class _SignatureSource:
    def __init__(self, E, n):
        if n < 2:
            raise ValidationError("n must be at least 2")
        self.E = E
        self.n = n
        self.torsion = _TorsionCounter(E, n)

    def signature(self, p):
        a = _reduce_curve(self.E, p)
        if self.n % p == 0:
            raise ValidationError(f"p = {p} divides n = {self.n}")
        over_x = _points_over_x(a, p)
        npts = 1 + int(over_x.sum())
        ap = p + 1 - npts
        assert ap * ap <= 4 * p
        prof = _profile_from_structure(self.torsion.structure(a, p), self.n)
        return FrobeniusSignature(p, ap % self.n, p % self.n, prof)


def frob_signature(E: EllipticCurveModel, p: int, n: int) -> FrobeniusSignature:
    return _SignatureSource(E, n).signature(p)


_SIG_CACHE = {}


def signatures(E: EllipticCurveModel, n: int, p_bound: int):
    """Signatures at every prime p <= p_bound not dividing 6 n Delta (and denominators), sorted by p."""
    ck = (E.ainvs, n, p_bound)
    if ck in _SIG_CACHE:
        return _SIG_CACHE[ck]
    bad = excluded_primes_divisor(E, n)
    src = _SignatureSource(E, n)
    out = [src.signature(p) for p in primerange(2, p_bound + 1) if bad % p]
    _SIG_CACHE[ck] = out
    return out


def subgroup_signature_profile(H: FiniteMatrixGroup):
    """{(trace, det, fix_profile): frequency} over the elements of H."""
    n = H.level
    cnt = Counter()
    for key in H.keys:
        a, b, c, d = key
        cnt[((a + d) % n, (a * d - b * c) % n, _kernel_profile(key, n))] += 1
    total = H.order
    return {k: Fraction(v, total) for k, v in sorted(cnt.items())}


@dataclass(frozen=True)
class ImageVerdict:
    candidate_order: int
    level: int
    p_bound: int
    primes_used: int
    containment_violations: tuple
    coverage: float
    classes_total: int
    classes_observed: int
    verdict: str
    warnings: tuple = field(default=())

    @property
    def certificate(self):
        return self.containment_violations[0].p if self.containment_violations else None

    def to_json(self):
        return {
            "candidate_order": self.candidate_order,
            "level": self.level,
            "p_bound": self.p_bound,
            "primes_used": self.primes_used,
            "containment_violations": [s.to_json() for s in self.containment_violations],
            "certificate": self.certificate,
            "coverage": self.coverage,
            "classes_total": self.classes_total,
            "classes_observed": self.classes_observed,
            "verdict": self.verdict,
            "warnings": list(self.warnings),
        }


def verify_image(E: EllipticCurveModel, H: FiniteMatrixGroup, p_bound: int,
                 threshold: float = COVERAGE_THRESHOLD, max_violations: int = 20) -> ImageVerdict:
    """Sample Frobenius signatures and compare them with the signatures of H.

    Evidence only: a violation rules H (and its conjugates) out, while
    agreement with full coverage is consistent with H being the image.
    """
    if p_bound < 100:
        raise ValidationError("p_bound must be at least 100")
    n = H.level
    warnings = []
    if not det_image(H).full:
        warnings.append("candidate does not have full determinant image")
    prof = subgroup_signature_profile(H)
    sigs = signatures(E, n, p_bound)
    seen, bad = set(), []
    for s in sigs:
        if s.key in prof:
            seen.add(s.key)
        else:
            bad.append(s)
    coverage = len(seen) / len(prof)
    if bad:
        verdict = "inconsistent"
    elif coverage >= threshold:
        verdict = "consistent"
    else:
        verdict = "inconclusive"
    return ImageVerdict(H.order, n, p_bound, len(sigs), tuple(bad[:max_violations]), coverage,
                        len(prof), len(seen), verdict, tuple(warnings))
