"""2x2 matrices over Z/nZ and explicitly materialized subgroups of GL(2, Z/nZ).

Internally a matrix is the tuple (a, b, c, d) for [[a, b], [c, d]]; the
``ResidueMatrix`` wrapper carries the level for public use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, partial
from itertools import product

from . import _finite
from ._finite import GroupFingerprint, GroupView
from .errors import BudgetExceeded, ValidationError

DEFAULT_BUDGET = 5_000_000


def _mul(n, x, y):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)


def _inv(n, x):
    a, b, c, d = x
    if n == 1:
        return (0, 0, 0, 0)
    u = pow((a * d - b * c) % n, -1, n)
    return ((d * u) % n, (-b * u) % n, (-c * u) % n, (a * u) % n)


def _identity(n):
    return (1 % n, 0, 0, 1 % n)


def _det(n, x):
    return (x[0] * x[3] - x[1] * x[2]) % n


def _reduce(x, e):
    return tuple(v % e for v in x)


@dataclass(frozen=True, order=True)
class ResidueMatrix:
    level: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        n = self.level
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"level must be a positive integer, got {n!r}")
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % n)

    @classmethod
    def from_rows(cls, rows, n):
        (a, b), (c, d) = rows
        return cls(n, a, b, c, d)

    @classmethod
    def from_key(cls, key, n):
        return cls(n, *key)

    @classmethod
    def identity(cls, n):
        return cls(n, 1, 0, 0, 1)

    @property
    def key(self):
        return (self.a, self.b, self.c, self.d)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    @property
    def det(self):
        return _det(self.level, self.key)

    @property
    def trace(self):
        return (self.a + self.d) % self.level

    def is_invertible(self):
        return math.gcd(self.det, self.level) == 1

    def __mul__(self, other):
        if not isinstance(other, ResidueMatrix):
            return NotImplemented
        if other.level != self.level:
            raise ValidationError(f"cannot multiply matrices of levels {self.level} and {other.level}")
        return ResidueMatrix(self.level, *_mul(self.level, self.key, other.key))

    def inverse(self):
        if not self.is_invertible():
            raise ValidationError(f"{self.rows()} is not invertible mod {self.level}")
        return ResidueMatrix(self.level, *_inv(self.level, self.key))

    def reduce(self, e):
        if self.level % e:
            raise ValidationError(f"{e} does not divide {self.level}")
        return ResidueMatrix(e, *self.key)

    def __repr__(self):
        return f"ResidueMatrix({self.rows()} mod {self.level})"


def _as_key(m, n):
    if isinstance(m, ResidueMatrix):
        if m.level != n:
            raise ValidationError(f"matrix of level {m.level} used at level {n}")
        return m.key
    if len(m) == 2:
        (a, b), (c, d) = m
    else:
        a, b, c, d = m
    return (a % n, b % n, c % n, d % n)


class FiniteMatrixGroup:
    """A subgroup of GL(2, Z/nZ) with its full element set materialized."""

    def __init__(self, level, generators, elements):
        self.level = level
        self._gens = tuple(generators)
        self._elems = frozenset(elements)

    # construction helpers
    @classmethod
    def from_elements(cls, level, elements):
        elements = frozenset(elements)
        gens = _finite.minimal_generators(elements, partial(_mul, level), _identity(level))
        return cls(level, gens, elements)

    @property
    def generators(self):
        return [ResidueMatrix(self.level, *g) for g in self._gens]

    @property
    def generator_keys(self):
        return self._gens

    @cached_property
    def keys(self):
        return tuple(sorted(self._elems))

    @property
    def key_set(self):
        return self._elems

    @cached_property
    def elements(self):
        return tuple(ResidueMatrix(self.level, *k) for k in self.keys)

    @property
    def order(self):
        return len(self._elems)

    def __len__(self):
        return len(self._elems)

    def __contains__(self, m):
        if isinstance(m, ResidueMatrix):
            return m.level == self.level and m.key in self._elems
        return tuple(m) in self._elems

    def __eq__(self, other):
        return isinstance(other, FiniteMatrixGroup) and self.level == other.level and self._elems == other._elems

    def __hash__(self):
        return hash((self.level, self._elems))

    def __repr__(self):
        return f"FiniteMatrixGroup(level={self.level}, order={self.order})"

    def issubgroup(self, other):
        return self.level == other.level and self._elems <= other._elems

    def view(self):
        n = self.level
        return GroupView(self._elems, partial(_mul, n), partial(_inv, n), _identity(n), self._gens)

    @cached_property
    def fingerprint(self) -> GroupFingerprint:
        return _finite.fingerprint(self.view())

    def is_abelian(self):
        return _finite.is_abelian(self.view())

    def conjugate(self, g):
        """g H g^-1 for g in GL(2, Z/nZ)."""
        n = self.level
        g = _as_key(g, n)
        gi = _inv(n, g)
        conj = lambda x: _mul(n, _mul(n, g, x), gi)
        return FiniteMatrixGroup(n, [conj(x) for x in self._gens], [conj(x) for x in self._elems])

    def commutator_subgroup(self):
        elems, gens = _finite.commutator_subgroup(self.view())
        return FiniteMatrixGroup(self.level, gens, elems)


def _validate_generators(generators, n):
    keys = []
    for g in generators:
        if isinstance(g, ResidueMatrix) and g.level != n:
            raise ValidationError(f"mixed levels: generator of level {g.level} in a level-{n} closure")
        k = _as_key(g, n)
        if math.gcd(_det(n, k), n) != 1:
            raise ValidationError(f"generator {list(k)} is not invertible mod {n}")
        keys.append(k)
    return keys


def order_gl2(n):
    """|GL(2, Z/nZ)| = n^4 prod_{p | n} (1 - 1/p)(1 - 1/p^2)."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"order_gl2 needs a positive integer, got {n!r}")
    out = n ** 4
    for p in _finite._prime_factors(n):
        out = out // (p * p * p) * (p - 1) * (p * p - 1)
    return out


def closure(generators, n, budget=DEFAULT_BUDGET):
    """Subgroup of GL(2, Z/nZ) generated by ``generators``."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"level must be a positive integer, got {n!r}")
    keys = _validate_generators(generators, n)
    elems = _finite.close(keys, partial(_mul, n), _identity(n), budget)
    return FiniteMatrixGroup(n, [k for k in dict.fromkeys(keys) if k != _identity(n)], elems)


def _unit_generators(n):
    units = [u for u in range(1, n) if math.gcd(u, n) == 1] or [0]
    return _finite.minimal_generators(units, lambda x, y: x * y % n, 1 % n)


def gl2(n, budget=DEFAULT_BUDGET):
    """The full group GL(2, Z/nZ)."""
    if order_gl2(n) > budget:
        raise BudgetExceeded(f"|GL(2,Z/{n}Z)| = {order_gl2(n)} exceeds budget {budget}")
    gens = [(1, 1, 0, 1), (1, 0, 1, 1)] + [(u, 0, 0, 1) for u in _unit_generators(n)]
    gens = [_reduce(g, n) for g in gens]
    elems = [k for k in product(range(n), repeat=4) if math.gcd(_det(n, k), n) == 1]
    return FiniteMatrixGroup(n, [g for g in dict.fromkeys(gens) if g != _identity(n)], elems)


def kernel_of_reduction(G, e):
    """N_e = {g in G : g = I mod e}."""
    c = G.level
    if not isinstance(e, int) or e < 1 or c % e:
        raise ValidationError(f"{e} does not divide the level {c}")
    one = 1 % e
    elems = [k for k in G.keys if k[0] % e == one and k[1] % e == 0 and k[2] % e == 0 and k[3] % e == one]
    return FiniteMatrixGroup.from_elements(c, elems)


def reduce_group(G, e):
    """pi_e(G): the image of G in GL(2, Z/eZ)."""
    if G.level % e:
        raise ValidationError(f"{e} does not divide the level {G.level}")
    elems = {_reduce(k, e) for k in G.keys}
    gens = [g for g in dict.fromkeys(_reduce(k, e) for k in G.generator_keys) if g != _identity(e)]
    return FiniteMatrixGroup(e, gens, elems)


def preimage(G, N, budget=DEFAULT_BUDGET):
    """Full preimage of G under GL(2, Z/NZ) -> GL(2, Z/nZ), n = level of G."""
    n = G.level
    if N % n:
        raise ValidationError(f"level {n} does not divide {N}")
    r = N // n
    if len(G) * r ** 4 > budget:
        raise BudgetExceeded(f"preimage would have up to {len(G) * r ** 4} elements")
    elems = []
    for k in G.keys:
        for lift in product(range(r), repeat=4):
            x = tuple(v + n * s for v, s in zip(k, lift))
            if math.gcd(_det(N, x), N) == 1:
                elems.append(x)
    return FiniteMatrixGroup.from_elements(N, elems)


def join(H1, H2, ambient=None, budget=DEFAULT_BUDGET):
    """<H1 u H2>."""
    if H1.level != H2.level:
        raise ValidationError(f"mixed levels {H1.level} and {H2.level}")
    n = H1.level
    if ambient is not None and not (H1.issubgroup(ambient) and H2.issubgroup(ambient)):
        raise ValidationError("join arguments are not contained in the supplied ambient group")
    if H2.key_set <= H1.key_set:
        return H1
    if H1.key_set <= H2.key_set:
        return H2
    gens = list(dict.fromkeys(H1.generator_keys + H2.generator_keys))
    elems = _finite.close(gens, partial(_mul, n), _identity(n), budget, start=H1.key_set)
    return FiniteMatrixGroup(n, gens, elems)


def is_normal(G, N):
    return N.key_set <= G.key_set and _finite.is_normal(G.view(), N.key_set, N.generator_keys)


def quotient_view(G, N):
    if G.level != N.level or not N.key_set <= G.key_set:
        raise ValidationError("N is not contained in G")
    if not _finite.is_normal(G.view(), N.key_set, N.generator_keys):
        raise ValidationError("N is not normal in G")
    return _finite.quotient(G.view(), N.key_set)


def quotient_fingerprint(G, N) -> GroupFingerprint:
    """Fingerprint of the coset group G/N."""
    return _finite.fingerprint(quotient_view(G, N))


@dataclass(frozen=True)
class DetImage:
    level: int
    residues: tuple
    full: bool

    def to_json(self):
        return {"level": self.level, "residues": list(self.residues), "full_determinant": self.full}


def units(n):
    return tuple(u for u in range(n) if math.gcd(u, n) == 1) if n > 1 else (0,)


def det_image(G) -> DetImage:
    n = G.level
    res = tuple(sorted({_det(n, k) for k in G.keys}))
    return DetImage(n, res, res == units(n))


def factor_level(n):
    out = []
    for p in _finite._prime_factors(n):
        q = 1
        while n % (q * p) == 0:
            q *= p
        out.append(q)
    return out


@dataclass(frozen=True)
class CrtSplit:
    projections: tuple
    full_fiber_product: bool

    def to_json(self):
        return {
            "projections": [{"level": H.level, "order": H.order} for H in self.projections],
            "full_fiber_product": self.full_fiber_product,
        }


def crt_split(G) -> CrtSplit:
    """Projections of G to the prime-power factors of its level."""
    parts = tuple(reduce_group(G, q) for q in factor_level(G.level)) if G.level > 1 else (G,)
    return CrtSplit(parts, math.prod(H.order for H in parts) == G.order)


def crt_glue(keys, levels):
    """Combine matrices given at pairwise coprime levels into one at their product."""
    N = math.prod(levels)
    out = []
    for idx in range(4):
        x, m = 0, 1
        for q, k in zip(levels, keys):
            t = ((k[idx] - x) * pow(m, -1, q)) % q if q > 1 else 0
            x += m * t
            m *= q
        out.append(x % N)
    return tuple(out)


# JSON round trip

def group_to_json(G, with_fingerprint=True):
    doc = {"level": G.level, "generators": [[[g[0], g[1]], [g[2], g[3]]] for g in G.generator_keys]}
    if with_fingerprint:
        doc["order"] = G.order
        doc["fingerprint"] = G.fingerprint.to_json()
    return doc


def group_from_json(doc, budget=DEFAULT_BUDGET):
    try:
        n = int(doc["level"])
        gens = [ResidueMatrix.from_rows(g, n) for g in doc["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed group document: {exc}") from None
    G = closure(gens, n, budget)
    if "order" in doc and int(doc["order"]) != G.order:
        raise ValidationError(f"declared order {doc['order']} but generators give {G.order}")
    return G
