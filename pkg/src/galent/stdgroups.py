"""Borel, Cartan and normalizer subgroups, and the CM groups C_{delta,phi}(n), N_{delta,phi}(n)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from sympy import isprime

from .errors import ValidationError
from .modmat import FiniteMatrixGroup, closure, join

LABELS = ("B", "Cs", "Cn", "Ns", "Nn")


def nonsplit_epsilon(ell):
    """-1 when ell = 3 mod 4, else the least quadratic non-residue >= 2."""
    if ell % 4 == 3:
        return ell - 1
    for e in range(2, ell):
        if pow(e, (ell - 1) // 2, ell) == ell - 1:
            return e
    raise ValidationError(f"no non-residue mod {ell}")


def standard_subgroup(label, ell):
    if not isinstance(ell, int) or ell < 3 or not isprime(ell):
        raise ValidationError(f"ell must be an odd prime, got {ell!r}")
    if label not in LABELS:
        raise ValidationError(f"label must be one of {LABELS}, got {label!r}")
    p = ell
    if label == "B":
        elems = [(a, b, 0, d) for a, b, d in product(range(1, p), range(p), range(1, p))]
        return FiniteMatrixGroup.from_elements(p, elems)
    if label in ("Cs", "Ns"):
        cs = FiniteMatrixGroup.from_elements(p, [(a, 0, 0, d) for a in range(1, p) for d in range(1, p)])
        if label == "Cs":
            return cs
        return join(cs, closure([(0, 1, 1, 0)], p))
    eps = nonsplit_epsilon(p)
    cn = FiniteMatrixGroup.from_elements(
        p, [(a, (b * eps) % p, b, a) for a, b in product(range(p), repeat=2) if (a, b) != (0, 0)]
    )
    if label == "Cn":
        return cn
    return join(cn, closure([(1, 0, 0, p - 1)], p))


def is_fundamental_discriminant(D):
    if D >= 0:
        return False

    def squarefree(m):
        m = abs(m)
        k = 2
        while k * k <= m:
            if m % (k * k) == 0:
                return False
            k += 1
        return True

    if D % 4 == 1:
        return squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree(m)
    return False


@dataclass(frozen=True)
class CartanParams:
    delta: int
    phi: int
    n: int
    disc: int = None
    conductor: int = None

    def signed_delta(self):
        """delta as the representative of least absolute value."""
        return self.delta - self.n if self.delta > self.n // 2 else self.delta

    def to_json(self):
        return {"delta": self.delta, "phi": self.phi, "n": self.n,
                "source": {"disc": self.disc, "conductor": self.conductor, "n": self.n}}


def cartan_params(disc, f, n):
    """(delta, phi) for the order of conductor f in the field of discriminant disc, at level n."""
    if not is_fundamental_discriminant(disc):
        raise ValidationError(f"{disc} is not a negative fundamental discriminant")
    if not isinstance(f, int) or f < 1 or not isinstance(n, int) or n < 1:
        raise ValidationError("conductor and level must be positive integers")
    D = disc * f * f
    if D % 4 == 0:
        return CartanParams((D // 4) % n, 0, n, disc, f)
    if n % 2:
        return CartanParams((D * pow(4, -1, n)) % n if n > 1 else 0, 0, n, disc, f)
    return CartanParams(((disc - 1) // 4 * f * f) % n, f % n, n, disc, f)


def cartan_group(params: CartanParams):
    """C_{delta,phi}(n) = {[[a + b phi, b], [delta b, a]] : a^2 + ab phi - delta b^2 a unit}."""
    n, dl, ph = params.n, params.delta, params.phi
    elems = []
    for a, b in product(range(n), repeat=2):
        if math.gcd(a * a + a * b * ph - dl * b * b, n) == 1:
            elems.append(((a + b * ph) % n, b % n, (dl * b) % n, a % n))
    return FiniteMatrixGroup.from_elements(n, elems)


def cartan_normalizer(params: CartanParams):
    """N_{delta,phi}(n) = <C_{delta,phi}(n), [[-1, 0], [phi, 1]]>."""
    n = params.n
    C = cartan_group(params)
    extra = ((-1) % n, 0, params.phi % n, 1 % n)
    N = join(C, closure([extra], n))
    if extra not in C and N.order != 2 * C.order:
        raise ValidationError("normalizer does not have index 2 over the Cartan group")
    return N
