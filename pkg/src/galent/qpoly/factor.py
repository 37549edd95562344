"""Small-degree rational factors, and splitting fingerprints modulo primes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional

from sympy import nextprime, primerange

from ..errors import BudgetExceeded, ValidationError
from . import modp
from .poly import ExactPolynomial, poly_discriminant

COMBINATION_BUDGET = 20_000


def rational_reconstruction(a, m, N, D):
    """r/s with |r| <= N, 0 < s <= D and r = s*a mod m, or None.

    Unique when 2*N*D < m.
    """
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > N:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > D:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if math.gcd(r1, s1) != 1:
        return None
    return Fraction(r1, s1)


def crt_pair(a1, m1, a2, m2):
    t = ((a2 - a1) * pow(m1, -1, m2)) % m2
    return a1 + m1 * t, m1 * m2


def _count_subsets(counts, k):
    """Number of products of distinct irreducible factors with total degree k."""
    poly = [1] + [0] * k
    for d, n in counts.items():
        for _ in range(n):
            for j in range(k, d - 1, -1):
                poly[j] += poly[j - d]
    return poly[k]


def _good_prime(F, p):
    if F[-1] % p == 0:
        return False
    fp = modp.reduce_poly(F, p)
    return modp.is_squarefree(fp, p)


def _degree_k_candidates(F, p, k):
    fp = modp.monic(modp.reduce_poly(F, p), p)
    factors = modp.factor_squarefree(fp, p, max_degree=k)
    out = []
    for r in range(1, k + 1):
        for combo in combinations(factors, r):
            if sum(len(g) - 1 for g in combo) != k:
                continue
            g = [1]
            for h in combo:
                g = modp.mul(g, h, p)
            out.append(g)
    return out


def _height_bounds(F, k):
    norm2 = math.isqrt(sum(c * c for c in F)) + 1
    return math.comb(k, k // 2) * norm2, abs(F[-1])


def _factors_of_degree(F, k, budget=COMBINATION_BUDGET):
    """All monic rational factors of exact degree k of the integer polynomial F.

    F is squarefree and has no rational factor of degree below k.
    """
    n = len(F) - 1
    if n < k:
        return []
    if n == k:
        return [ExactPolynomial(F).monic()]
    N, Dd = _height_bounds(F, k)
    need = (2 * N * Dd).bit_length() + 1
    bits = 62
    while True:
        r = max(1, -(-need // (bits - 1)))
        pool = []
        p = 1 << (bits - 1)
        while len(pool) < max(3 * r, r + 8):
            p = nextprime(p)
            if not _good_prime(F, p):
                continue
            fp = modp.monic(modp.reduce_poly(F, p), p)
            cnt = _count_subsets(modp.degree_counts(fp, p, max_degree=k), k)
            if cnt == 0:
                # the degree pattern mod p already rules out degree k factors
                return []
            pool.append((cnt, p))
        pool.sort()
        chosen = pool[:r]
        combos = math.prod(c for c, _ in chosen)
        if combos <= budget:
            break
        bits *= 2
        if bits > 8192:
            raise BudgetExceeded("rational reconstruction would need too many candidate combinations")
    primes = [p for _, p in chosen]
    cand_lists = [_degree_k_candidates(F, p, k) for p in primes]
    M = math.prod(primes)
    if M <= 2 * N * Dd:
        raise BudgetExceeded("modulus too small for the reconstruction height bound")
    Fpoly = ExactPolynomial(F)
    found = []
    for combo in product(*cand_lists):
        coeffs = []
        for i in range(k):
            a, m = 0, 1
            for g, p in zip(combo, primes):
                a, m = crt_pair(a, m, g[i], p)
            q = rational_reconstruction(a, m, N, Dd)
            if q is None:
                break
            coeffs.append(q)
        else:
            g = ExactPolynomial(coeffs + [1])
            if g not in found and (Fpoly % g).is_zero():
                found.append(g)
    return found


def small_rational_factors(f: ExactPolynomial, d_max: int):
    """Monic irreducible factors of degree <= d_max (<= 3) of f over Q."""
    if f.domain != "Q":
        raise ValidationError("small_rational_factors works over Q")
    if not 1 <= d_max <= 3:
        raise ValidationError("d_max must be 1, 2 or 3")
    if f.degree < 1:
        return []
    g = f.squarefree_part()
    out = []
    for k in range(1, d_max + 1):
        F = g.integer_coefficients()
        if len(F) - 1 < k:
            break
        for h in _factors_of_degree(F, k):
            out.append(h)
            g = g.exact_div(h)
    return sorted(out, key=lambda h: (h.degree, h.coeffs))


# splitting fingerprints

@dataclass(frozen=True)
class SplitFingerprint:
    p: int
    degree_multiset: tuple
    ramified: bool

    def to_json(self):
        return {"p": self.p, "degree_multiset": list(self.degree_multiset), "ramified": self.ramified}


class _Fingerprinter:
    """Per-polynomial data reused across a sweep of primes."""

    def __init__(self, f: ExactPolynomial):
        if f.domain != "Q":
            raise ValidationError("fingerprints need a polynomial over Q")
        if f.degree < 1:
            raise ValidationError("fingerprints need a nonconstant polynomial")
        self.den = f.denominator_lcm()
        self.F = f.integer_coefficients()
        if f.degree >= 2:
            d = poly_discriminant(ExactPolynomial(self.F))
            self.disc = int(d) if d.denominator == 1 else d
        else:
            self.disc = 1

    def ramified(self, p):
        if self.disc == 0:
            return True
        disc_num = self.disc if isinstance(self.disc, int) else self.disc.numerator
        return self.den % p == 0 or self.F[-1] % p == 0 or disc_num % p == 0

    def __call__(self, p):
        ram = self.ramified(p)
        fp = modp.reduce_poly(self.F, p)
        if len(fp) <= 1:
            return SplitFingerprint(p, (), ram)
        fp = modp.monic(fp, p)
        if ram:
            d = modp.derivative(fp, p)
            if not d:
                return SplitFingerprint(p, (), True)
            g = modp.gcd(fp, d, p)
            fp = modp.divmod_(fp, g, p)[0]
        degs = []
        for d, g in modp.ddf(fp, p):
            degs.extend([d] * ((len(g) - 1) // d))
        return SplitFingerprint(p, tuple(sorted(degs)), ram)


def factor_fingerprint_mod_p(f: ExactPolynomial, p: int) -> SplitFingerprint:
    if p >= 2 ** 64:
        raise ValidationError("prime exceeds the 64-bit budget")
    return _Fingerprinter(f)(p)


@dataclass(frozen=True)
class SplitVerdict:
    consistent: bool
    refuted: bool
    certificate: Optional[int]
    sample_size: int
    p_bound: int
    skipped: tuple = field(default=())
    certificate_fingerprints: Optional[tuple] = None

    @property
    def verdict(self):
        return "refuted" if self.refuted else "consistent"

    def to_json(self):
        doc = {
            "verdict": self.verdict,
            "consistent": self.consistent,
            "refuted": self.refuted,
            "certificate": self.certificate,
            "sample_size": self.sample_size,
            "p_bound": self.p_bound,
            "skipped_primes": list(self.skipped),
        }
        if self.certificate_fingerprints:
            doc["certificate_fingerprints"] = [fp.to_json() for fp in self.certificate_fingerprints]
        return doc


def same_splitting_field_mc(f: ExactPolynomial, g: ExactPolynomial, p_bound: int) -> SplitVerdict:
    """Compare splitting fingerprints of f and g at every unramified prime up to p_bound.

    A mismatch refutes "same splitting field"; agreement everywhere is
    Chebotarev-style evidence only.
    """
    ff, gg = _Fingerprinter(f), _Fingerprinter(g)
    if ff.disc == 0 or gg.disc == 0:
        # every prime would be skipped and the verdict would be vacuous
        raise ValidationError("same_splitting_field_mc needs squarefree polynomials")
    used, skipped = 0, []
    for p in primerange(2, p_bound + 1):
        if ff.ramified(p) or gg.ramified(p):
            skipped.append(p)
            continue
        a, b = ff(p), gg(p)
        used += 1
        if a.degree_multiset != b.degree_multiset:
            return SplitVerdict(False, True, p, used, p_bound, tuple(skipped), (a, b))
    return SplitVerdict(True, False, None, used, p_bound, tuple(skipped))
