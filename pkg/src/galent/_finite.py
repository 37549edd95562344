"""Generic algorithms on small explicitly materialized finite groups.

A group is handed around as a ``GroupView``: a sorted element list, a
multiplication, an inversion, the identity and a generating set.  Matrix
groups and coset groups both produce views, so fingerprints, quotients and
normal-subgroup enumeration are written once.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional

from .errors import BudgetExceeded


@dataclass(frozen=True)
class GroupFingerprint:
    """Cheap isomorphism invariants of a finite group.

    Equal fingerprints are necessary for isomorphism, not sufficient; for
    abelian groups the invariant factors already pin the class down.
    """

    order: int
    is_abelian: bool
    abelian_invariants: Optional[tuple]
    exponent: int
    conjugacy_class_count: int
    abelianization_invariants: tuple

    @property
    def is_trivial(self):
        return self.order == 1

    def to_json(self):
        return {
            "order": self.order,
            "is_abelian": self.is_abelian,
            "abelian_invariants": None if self.abelian_invariants is None else list(self.abelian_invariants),
            "exponent": self.exponent,
            "conjugacy_class_count": self.conjugacy_class_count,
            "abelianization_invariants": list(self.abelianization_invariants),
        }

    @classmethod
    def from_json(cls, doc):
        inv = doc.get("abelian_invariants")
        return cls(
            order=int(doc["order"]),
            is_abelian=bool(doc["is_abelian"]),
            abelian_invariants=None if inv is None else tuple(int(x) for x in inv),
            exponent=int(doc["exponent"]),
            conjugacy_class_count=int(doc["conjugacy_class_count"]),
            abelianization_invariants=tuple(int(x) for x in doc["abelianization_invariants"]),
        )

    def short(self):
        """Compact label used in reports: invariant factors if abelian, else the order."""
        if self.is_abelian:
            return list(self.abelian_invariants)
        return {"order": self.order, "nonabelian": True}


class GroupView:
    __slots__ = ("elements", "mul", "inv", "identity", "gens", "_members")

    def __init__(self, elements: Iterable[Hashable], mul: Callable, inv: Callable,
                 identity: Hashable, gens: Iterable[Hashable]):
        self.elements = sorted(elements)
        self._members = frozenset(self.elements)
        self.mul = mul
        self.inv = inv
        self.identity = identity
        self.gens = [g for g in dict.fromkeys(gens) if g != identity]

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._members

    def conj(self, x, s):
        return self.mul(self.mul(s, x), self.inv(s))


def close(gens, mul, identity, budget=None, start=None):
    """Subgroup generated by ``gens`` (optionally together with a known subgroup ``start``)."""
    seen = set(start) if start else {identity}
    frontier = list(seen)
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if budget is not None and len(seen) > budget:
            raise BudgetExceeded(f"closure exceeded element budget {budget}")
        frontier = nxt
    return seen


def minimal_generators(elements, mul, identity):
    """Greedy generating set: walk the sorted elements, keep those not yet generated."""
    elements = sorted(elements)
    gens = []
    current = {identity}
    for x in elements:
        if x not in current:
            gens.append(x)
            current = close(gens, mul, identity, start=current)
    if len(current) != len(elements):
        raise ValueError("element set is not closed under multiplication")
    return gens


def element_order(x, mul, identity):
    k, y = 1, x
    while y != identity:
        y = mul(y, x)
        k += 1
    return k


def conjugacy_classes(G: GroupView):
    """Orbits of conjugation by the generators (these are the full classes)."""
    invs = [G.inv(s) for s in G.gens]
    label = {}
    classes = []
    for x in G.elements:
        if x in label:
            continue
        orbit = [x]
        label[x] = len(classes)
        i = 0
        while i < len(orbit):
            y = orbit[i]
            i += 1
            for s, si in zip(G.gens, invs):
                z = G.mul(G.mul(s, y), si)
                if z not in label:
                    label[z] = len(classes)
                    orbit.append(z)
        classes.append(orbit)
    return classes


def is_abelian(G: GroupView):
    gs = G.gens
    return all(G.mul(x, y) == G.mul(y, x) for i, x in enumerate(gs) for y in gs[i + 1:])


def normal_closure(G: GroupView, seeds, budget=None):
    """Smallest normal subgroup of G containing ``seeds``; returns (elements, gens)."""
    gens = [s for s in dict.fromkeys(seeds) if s != G.identity]
    H = close(gens, G.mul, G.identity, budget)
    changed = True
    while changed:
        changed = False
        for s in G.gens:
            for h in list(gens):
                c = G.conj(h, s)
                if c not in H:
                    gens.append(c)
                    H = close(gens, G.mul, G.identity, budget, start=H)
                    changed = True
    return H, gens


def commutator_subgroup(G: GroupView, budget=None):
    seeds = []
    for i, x in enumerate(G.gens):
        for y in G.gens[i + 1:]:
            seeds.append(G.mul(G.mul(x, y), G.mul(G.inv(x), G.inv(y))))
    return normal_closure(G, seeds, budget)


def is_normal(G: GroupView, N_elements, N_gens):
    return all(G.conj(h, s) in N_elements for s in G.gens for h in N_gens)


def quotient(G: GroupView, N_elements) -> GroupView:
    """Coset group G/N by coset enumeration.  N must be normal (not rechecked here)."""
    N = list(N_elements)
    coset_of = {}
    reps = []
    for g in G.elements:
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for h in N:
            coset_of[G.mul(g, h)] = idx
    mul, inv = G.mul, G.inv
    return GroupView(
        range(len(reps)),
        lambda i, j: coset_of[mul(reps[i], reps[j])],
        lambda i: coset_of[inv(reps[i])],
        coset_of[G.identity],
        [coset_of[g] for g in G.gens],
    )


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def invariants_from_orders(orders):
    """Invariant factors of an abelian group from the multiset of its element orders.

    For each prime p the counts #{x : x^(p^i) = 1} determine the p-primary
    partition; the partitions are then recombined into d_1 | d_2 | ...
    """
    m = len(orders)
    hist = Counter(orders)
    parts = {}
    for p in _prime_factors(m):
        k, mm = 0, m
        while mm % p == 0:
            mm //= p
            k += 1
        logs = []
        for i in range(k + 1):
            c = sum(v for o, v in hist.items() if (p ** i) % o == 0)
            e = round(math.log(c, p))
            if p ** e != c:
                raise ValueError("orders are not those of an abelian group")
            logs.append(e)
        r = [logs[i] - logs[i - 1] for i in range(1, k + 1)]
        n_parts = r[0] if r else 0
        parts[p] = sorted((sum(1 for ri in r if ri > j) for j in range(n_parts)), reverse=True)
    width = max((len(v) for v in parts.values()), default=0)
    factors = []
    for j in range(width):
        d = 1
        for p, es in parts.items():
            if j < len(es):
                d *= p ** es[j]
        factors.append(d)
    return tuple(sorted(factors))


def abelian_invariants(G: GroupView):
    return invariants_from_orders([element_order(x, G.mul, G.identity) for x in G.elements])


def fingerprint(G: GroupView, budget=None) -> GroupFingerprint:
    order = len(G)
    ab = is_abelian(G)
    if ab:
        orders = [element_order(x, G.mul, G.identity) for x in G.elements]
        inv = invariants_from_orders(orders)
        exponent = max(orders) if orders else 1
        return GroupFingerprint(order, True, inv, exponent, order, inv)
    classes = conjugacy_classes(G)
    exponent = 1
    for cl in classes:
        exponent = math.lcm(exponent, element_order(cl[0], G.mul, G.identity))
    comm, _ = commutator_subgroup(G, budget)
    abz = abelian_invariants(quotient(G, comm))
    return GroupFingerprint(order, False, None, exponent, len(classes), abz)


def normal_subgroups(G: GroupView):
    """All normal subgroups, as frozensets, by joining normal closures of single elements."""
    found = {frozenset([G.identity])}
    for cl in conjugacy_classes(G):
        H, _ = normal_closure(G, [cl[0]])
        found.add(frozenset(H))
    pending = list(found)
    while pending:
        A = pending.pop()
        for B in list(found):
            AB = frozenset(G.mul(a, b) for a in A for b in B)
            if AB not in found:
                found.add(AB)
                pending.append(AB)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_quotient_of(small: GroupFingerprint, big: GroupView):
    """True when some quotient of ``big`` has fingerprint ``small``."""
    if len(big) % small.order:
        return False
    for N in normal_subgroups(big):
        if len(big) // len(N) != small.order:
            continue
        if fingerprint(quotient(big, N)) == small:
            return True
    return False
