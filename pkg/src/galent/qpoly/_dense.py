"""Dense univariate polynomial kernels over an exact field.

Polynomials are tuples of coefficients in ascending degree with no trailing
zeros; () is the zero polynomial.  The scalar type only has to support
+, -, *, / and equality with 0, so the same code runs over Q (Fraction) and
over Q(t) (RationalFunction).
"""

from __future__ import annotations


def trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(f):
    return len(f) - 1


def add(f, g):
    if len(f) < len(g):
        f, g = g, f
    return trim(tuple(f[i] + g[i] if i < len(g) else f[i] for i in range(len(f))))


def neg(f):
    return tuple(-a for a in f)


def sub(f, g):
    return add(f, neg(g))


def scale(f, s):
    if s == 0:
        return ()
    return trim(tuple(a * s for a in f))


def mul(f, g):
    if not f or not g:
        return ()
    out = [f[0] * 0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_(f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    lc = g[-1]
    if len(f) - 1 < dg:
        return (), trim(f)
    q = [g[0] * 0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        if f[i] == 0:
            continue
        c = f[i] / lc
        q[i - dg] = c
        for j in range(dg + 1):
            f[i - dg + j] = f[i - dg + j] - c * g[j]
    return trim(q), trim(f[:dg])


def monic(f):
    if not f:
        return ()
    lc = f[-1]
    return tuple(a / lc for a in f)


def gcd(f, g):
    while g:
        f, g = g, divmod_(f, g)[1]
    return monic(f)


def derivative(f):
    return trim(tuple(f[i] * i for i in range(1, len(f))))


def evaluate(f, x):
    acc = 0
    for a in reversed(f):
        acc = acc * x + a
    return acc


def compose(f, g):
    """f(g(x))."""
    acc = ()
    for a in reversed(f):
        acc = add(mul(acc, g), (a,) if a != 0 else ())
    return acc


def power(f, e, one):
    out = (one,)
    base = f
    while e:
        if e & 1:
            out = mul(out, base)
        base = mul(base, base)
        e >>= 1
    return out


def resultant(f, g, one):
    """Res(f, g) by the Euclidean algorithm."""
    if not f or not g:
        return one * 0
    res = one
    while deg(g) > 0:
        r = divmod_(f, g)[1]
        if not r:
            return one * 0
        if (deg(f) * deg(g)) % 2:
            res = -res
        res = res * g[-1] ** (deg(f) - deg(r))
        f, g = g, r
    return res * g[0] ** deg(f)


def discriminant(f, one):
    n = deg(f)
    r = resultant(f, derivative(f), one)
    if (n * (n - 1) // 2) % 2:
        r = -r
    return r / f[-1]
