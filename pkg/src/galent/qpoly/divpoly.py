"""Division polynomials of long Weierstrass models."""

from __future__ import annotations

from ..errors import BudgetExceeded, ValidationError
from .poly import ExactPolynomial

MAX_M = 12


def division_polynomial(E, m, max_m=MAX_M):
    """The m-th division polynomial as a polynomial in x.

    For odd m this is psi_m, of degree (m^2 - 1)/2, whose roots are the
    x-coordinates of the nonzero m-torsion points.  For even m, psi_m carries
    the factor psi_2 = 2y + a1 x + a3 which is not a polynomial in x; we
    return psi_m / psi_2 (degree (m^2 - 4)/2), whose roots are the
    x-coordinates of m-torsion points of order greater than 2.
    """
    if not isinstance(m, int) or m < 1:
        raise ValidationError("m must be a positive integer")
    if m > max_m:
        raise BudgetExceeded(f"m = {m} exceeds the division polynomial budget {max_m}")
    if E.discriminant == 0:
        raise ValidationError("singular curve")
    return division_polynomials(E, m)[m]


def division_polynomials(E, m):
    """{k: f_k} for 0 <= k <= m with f_k = psi_k (k odd) or psi_k/psi_2 (k even)."""
    dom = E.base
    b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
    P = lambda cs: ExactPolynomial(cs, dom)
    F = P([b6, 2 * b4, b2, 4])  # psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    F2 = F * F
    f = {
        0: P([]),
        1: P([1]),
        2: P([1]),
        3: P([b8, 3 * b6, 3 * b4, b2, 3]),
        4: P([b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2]),
    }

    def get(k):
        if k in f:
            return f[k]
        j = k // 2
        if k % 2:
            if j % 2 == 0:
                val = F2 * get(j + 2) * get(j) ** 3 - get(j - 1) * get(j + 1) ** 3
            else:
                val = get(j + 2) * get(j) ** 3 - F2 * get(j - 1) * get(j + 1) ** 3
        else:
            val = get(j) * (get(j + 2) * get(j - 1) ** 2 - get(j - 2) * get(j + 1) ** 2)
        f[k] = val
        return val

    for k in range(m + 1):
        get(k)
    return {k: f[k] for k in range(m + 1)}
