"""Polynomial arithmetic over F_p with distinct- and equal-degree factorization.

Polynomials are lists of ints in [0, p), ascending, without trailing zeros.
"""

from __future__ import annotations

import random


def trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def reduce_poly(coeffs, p):
    return trim([c % p for c in coeffs])


def add(f, g, p):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, b in enumerate(g):
        out[i] = (out[i] + b) % p
    return trim(out)


def sub(f, g, p):
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, b in enumerate(g):
        out[i] = (out[i] - b) % p
    return trim(out)


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def divmod_(f, g, p):
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    if len(r) - 1 < dg:
        return [], trim(r)
    q = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i] % p
        if c == 0:
            continue
        c = c * inv % p
        q[i - dg] = c
        for j in range(dg + 1):
            r[i - dg + j] = (r[i - dg + j] - c * g[j]) % p
    return trim(q), trim(r[:dg])


def rem(f, g, p):
    return divmod_(f, g, p)[1]


def monic(f, p):
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def gcd(f, g, p):
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def derivative(f, p):
    return trim([(i * f[i]) % p for i in range(1, len(f))])


def mulmod(f, g, m, p):
    return rem(mul(f, g, p), m, p)


def powmod(base, e, m, p):
    out = [1]
    base = rem(base, m, p)
    while e:
        if e & 1:
            out = mulmod(out, base, m, p)
        base = mulmod(base, base, m, p)
        e >>= 1
    return out


def is_squarefree(f, p):
    d = derivative(f, p)
    if not d:
        return len(f) <= 1
    return len(gcd(f, d, p)) == 1


def ddf(f, p, max_degree=None):
    """Distinct-degree factorization of a monic squarefree f.

    Returns [(d, g_d)] where g_d is the product of the irreducible factors of
    degree d.  With ``max_degree`` only degrees up to that bound are split
    off, and the remaining cofactor is returned as (None, rest).
    """
    f = monic(list(f), p)
    out = []
    h = [0, 1]
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        if max_degree is not None and i > max_degree:
            out.append((None, f))
            return out
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((i, g))
            f = divmod_(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        d = len(f) - 1
        if max_degree is not None and d > max_degree:
            out.append((None, f))
        else:
            out.append((d, f))
    return out


def degree_counts(f, p, max_degree=None):
    """{d: number of irreducible factors of degree d} from the DDF."""
    counts = {}
    for d, g in ddf(f, p, max_degree):
        if d is not None:
            counts[d] = counts.get(d, 0) + (len(g) - 1) // d
    return counts


def edf(f, d, p, rng):
    """Split a monic product of irreducibles of common degree d (odd p)."""
    n = len(f) - 1
    if n == d:
        return [f]
    if n == 0:
        return []
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        g = gcd(a, f, p)
        if 1 < len(g) < len(f):
            break
        b = powmod(a, (p ** d - 1) // 2, f, p)
        g = gcd(sub(b, [1], p), f, p)
        if 1 < len(g) < len(f):
            break
    return edf(g, d, p, rng) + edf(divmod_(f, g, p)[0], d, p, rng)


def factor_squarefree(f, p, max_degree=None, seed=0):
    """Monic irreducible factors of a squarefree f mod an odd prime p.

    With ``max_degree``, only the factors of degree up to that bound are
    returned.
    """
    rng = random.Random(seed * 1_000_003 + p)
    out = []
    for d, g in ddf(f, p, max_degree):
        if d is None:
            continue
        out.extend(edf(g, d, p, rng))
    return sorted(out, key=lambda g: (len(g), g))
