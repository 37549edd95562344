"""Entanglement detection and typing for subgroups of GL(2, Z/nZ).

For divisors a, b of the level with c = lcm(a, b) and d = gcd(a, b), put
G_c = pi_c(G) and N_e = ker(pi_e) restricted to G_c.  The pair is entangled
when <N_a, N_b> is strictly smaller than N_d, and the type is the quotient.

Abelian and Weil types are computed through the Galois correspondence inside
G_c: intersecting with Q^ab corresponds to adjoining [G_c, G_c], and Q(zeta_m)
corresponds to D_m = {g : det g = 1 mod m}.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

from . import _finite
from ._finite import GroupFingerprint
from .errors import StructuralError, ValidationError
from .modmat import (
    FiniteMatrixGroup, _det, det_image, join, kernel_of_reduction,
    quotient_view, reduce_group,
)


class DeterminantWarning(UserWarning):
    """The group does not have surjective determinant; cyclotomic translations are heuristic."""


def _divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


def _check_pair(G, a, b):
    n = G.level
    for x in (a, b):
        if not isinstance(x, int) or x < 1 or n % x:
            raise ValidationError(f"{x} is not a divisor of the level {n}")
    if a == b:
        raise ValidationError("a and b must differ")
    if not det_image(G).full:
        warnings.warn(f"determinant of the level-{n} group is not surjective", DeterminantWarning, stacklevel=3)
    return (a, b) if a < b else (b, a)


class _PairData:
    """Shared pieces for one divisor pair: G_c and the kernels."""

    def __init__(self, G, a, b):
        self.a, self.b = a, b
        self.c = math.lcm(a, b)
        self.d = math.gcd(a, b)
        self.Gc = G if self.c == G.level else reduce_group(G, self.c)
        self.Na = kernel_of_reduction(self.Gc, a)
        self.Nb = kernel_of_reduction(self.Gc, b)
        self.Nd = kernel_of_reduction(self.Gc, self.d)
        self._comm = None

    @property
    def comm(self):
        if self._comm is None:
            self._comm = self.Gc.commutator_subgroup()
        return self._comm

    def det_kernel(self, m):
        c = self.c
        keys = [k for k in self.Gc.keys if _det(c, k) % m == 1 % m]
        return FiniteMatrixGroup.from_elements(c, keys)


@dataclass(frozen=True)
class EntanglementReport:
    level: int
    a: int
    b: int
    d: int
    c: int
    order_Na: int
    order_Nb: int
    order_Nd: int
    order_join: int
    nontrivial: bool
    type_fingerprint: Optional[GroupFingerprint]
    type_group: Optional[_finite.GroupView] = field(default=None, repr=False, compare=False)

    def to_json(self):
        return {
            "level": self.level,
            "a": self.a,
            "b": self.b,
            "d": self.d,
            "c": self.c,
            "orders": {"N_a": self.order_Na, "N_b": self.order_Nb, "N_d": self.order_Nd, "join": self.order_join},
            "nontrivial": self.nontrivial,
            "type": None if self.type_fingerprint is None else self.type_fingerprint.to_json(),
        }


def _report(G, data: _PairData):
    J = join(data.Na, data.Nb)
    if not J.key_set <= data.Nd.key_set:
        raise StructuralError("<N_a, N_b> is not contained in N_d")
    nontrivial = J.order < data.Nd.order
    fp = view = None
    if nontrivial:
        view = quotient_view(data.Nd, J)
        fp = _finite.fingerprint(view)
    return EntanglementReport(
        G.level, data.a, data.b, data.d, data.c,
        data.Na.order, data.Nb.order, data.Nd.order, J.order, nontrivial, fp, view,
    )


def entanglement_report(G, a, b) -> EntanglementReport:
    a, b = _check_pair(G, a, b)
    return _report(G, _PairData(G, a, b))


def _quotient_or_none(top, bottom):
    if not bottom.key_set <= top.key_set:
        raise StructuralError("translated subgroup escapes the determinant kernel D_d")
    if bottom.order == top.order:
        return None
    return _finite.fingerprint(quotient_view(top, bottom))


def _abelian(data: _PairData):
    Dd = data.det_kernel(data.d)
    J = join(join(data.Na, data.Nb), data.comm)
    return _quotient_or_none(Dd, J)


def abelian_type(G, a, b) -> Optional[GroupFingerprint]:
    """D_d / <N_a, N_b, [G_c, G_c]>, or None when that quotient is trivial."""
    a, b = _check_pair(G, a, b)
    return _abelian(_PairData(G, a, b))


@dataclass(frozen=True)
class WeilOrientations:
    """Both readings of the Weil condition: K_a inside Q(zeta_b), and K_b inside Q(zeta_a)."""

    a_side: Optional[GroupFingerprint]
    b_side: Optional[GroupFingerprint]

    @property
    def headline(self):
        sides = [s for s in (self.a_side, self.b_side) if s is not None]
        if not sides:
            return None
        return max(sides, key=lambda s: s.order)

    def to_json(self):
        enc = lambda s: None if s is None else s.to_json()
        return {"a_side": enc(self.a_side), "b_side": enc(self.b_side), "headline": enc(self.headline)}


def _weil(data: _PairData):
    Dd = data.det_kernel(data.d)
    one = join(join(data.Na, data.comm), data.det_kernel(data.b))
    two = join(join(data.Nb, data.comm), data.det_kernel(data.a))
    return WeilOrientations(_quotient_or_none(Dd, one), _quotient_or_none(Dd, two))


def weil_orientations(G, a, b) -> WeilOrientations:
    a, b = _check_pair(G, a, b)
    return _weil(_PairData(G, a, b))


def weil_type(G, a, b) -> Optional[GroupFingerprint]:
    """Larger of D_d/<N_a,[G_c,G_c],D_b> and D_d/<N_b,[G_c,G_c],D_a>; None when both trivial."""
    return weil_orientations(G, a, b).headline


@dataclass(frozen=True)
class Classification:
    report: EntanglementReport
    abelian: Optional[GroupFingerprint]
    weil: WeilOrientations

    def to_json(self):
        return {
            "report": self.report.to_json(),
            "abelian": None if self.abelian is None else self.abelian.to_json(),
            "weil": self.weil.to_json(),
        }


def classify(G, a, b) -> Classification:
    a, b = _check_pair(G, a, b)
    data = _PairData(G, a, b)
    return Classification(_report(G, data), _abelian(data), _weil(data))


# the relation on T_G

def _same_type_below(r1, r2):
    a1, b1, a2, b2 = r1.a, r1.b, r2.a, r2.b
    if r1.type_fingerprint != r2.type_fingerprint:
        return False
    return (a1 % a2 == 0 and b1 % b2 == 0) or (a1 % b2 == 0 and b1 % a2 == 0)


def _quotient_above(r1, r2):
    a1, b1, a2, b2 = r1.a, r1.b, r2.a, r2.b
    if not ((a2 % a1 == 0 and b2 % b1 == 0) or (a2 % b1 == 0 and b2 % a1 == 0)):
        return False
    return _finite.is_quotient_of(r1.type_fingerprint, r2.type_group)


def precedes(r1: EntanglementReport, r2: EntanglementReport) -> bool:
    """r1 <= r2 in the order on nontrivial entanglements."""
    return _same_type_below(r1, r2) or _quotient_above(r1, r2)


@dataclass(frozen=True)
class EntanglementLattice:
    level: int
    entries: tuple
    maximal: Optional[EntanglementReport]

    @property
    def primitive(self):
        return self.maximal is not None and self.maximal.c == self.level

    def pairs(self):
        return [(r.a, r.b) for r in self.entries]

    def to_json(self):
        enc = lambda r: {"pair": [r.a, r.b], "type": r.type_fingerprint.to_json()}
        return {
            "level": self.level,
            "entries": [enc(r) for r in self.entries],
            "maximal": None if self.maximal is None else enc(self.maximal),
            "primitive": self.primitive,
        }


def _pick_maximal(entries):
    top = [m for m in entries if all(precedes(e, m) for e in entries)]
    if len(top) == 1:
        return top[0]
    if len(top) > 1:
        # mutual domination: prefer the entry the others reach by having the
        # same type at levels dividing its own
        best = [m for m in top if all(x is m or _same_type_below(x, m) for x in top)]
        if len(best) == 1:
            return best[0]
    return None


def entanglement_lattice(G) -> EntanglementLattice:
    n = G.level
    divs = [k for k in _divisors(n) if k > 1]
    entries = []
    for i, a in enumerate(divs):
        for b in divs[i + 1:]:
            if b % a == 0:
                continue  # N_a contains N_b, never entangled
            r = _report(G, _PairData(G, a, b))
            if r.nontrivial:
                entries.append(r)
    if not det_image(G).full:
        warnings.warn(f"determinant of the level-{n} group is not surjective", DeterminantWarning, stacklevel=2)
    return EntanglementLattice(n, tuple(entries), _pick_maximal(entries))
