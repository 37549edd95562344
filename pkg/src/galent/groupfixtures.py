"""Constructions behind the shipped group fixtures.

The JSON files in ``galent/data`` hold generator lists; the builders here
derive the same groups from their defining descriptions so the two can be
checked against each other.
"""

from __future__ import annotations

import json
from importlib import resources
from itertools import product

from .errors import ValidationError
from .modmat import FiniteMatrixGroup, closure, crt_glue, gl2, group_from_json


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def gl2_f2_sign(g):
    """Sign of g in GL(2, F_2) viewed as a permutation of the three nonzero vectors."""
    a, b, c, d = g
    vecs = [(1, 0), (0, 1), (1, 1)]
    img = [((a * x + b * y) % 2, (c * x + d * y) % 2) for x, y in vecs]
    perm = [vecs.index(v) for v in img]
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def serre6():
    """{(g, h) in GL(2,Z/2) x GL(2,Z/3) : sgn g = (det h / 3)} at level 6, order 144."""
    elems = []
    for g in gl2(2).keys:
        for h in gl2(3).keys:
            if gl2_f2_sign(g) == _legendre(h[0] * h[3] - h[1] * h[2], 3):
                elems.append(crt_glue([g, h], [2, 3]))
    return FiniteMatrixGroup.from_elements(6, elems)


def abelian_not_weil_6():
    """Level-6 model of a curve with Q(E[2]) = Q(sqrt 2) and Q(E[3]) = Q(sqrt 2, sqrt -3).

    sigma moves sqrt 2 and fixes sqrt -3: the swap mod 2 and -I mod 3.
    tau fixes sqrt 2 and moves sqrt -3: I mod 2 and diag(1, -1) mod 3.
    """
    sigma = crt_glue([(0, 1, 1, 0), (2, 0, 0, 2)], [2, 3])
    tau = crt_glue([(1, 0, 0, 1), (1, 0, 0, 2)], [2, 3])
    return closure([sigma, tau], 6)


def _borel_with_sign(p):
    """{[[u, b], [0, e]] : u unit, e = +-1} mod p, with e reported."""
    out = []
    for u, b, e in product(range(1, p), range(p), (1, p - 1)):
        out.append(((u, b, 0, e), 1 if e == 1 else -1))
    return out


def twist15():
    """Index-2 fiber product at level 15 modelling a quadratic twist of a Borel curve.

    Mod 3 and mod 5 the image is {[[chi_p chi_d, b], [0, chi_d]]}; the two
    copies of chi_d must agree, which glues the factors along Q(sqrt d).
    """
    elems = []
    for g, s in _borel_with_sign(3):
        for h, t in _borel_with_sign(5):
            if s == t:
                elems.append(crt_glue([g, h], [3, 5]))
    return FiniteMatrixGroup.from_elements(15, elems)


BUILDERS = {
    "serre6": serre6,
    "abelian_not_weil_6": abelian_not_weil_6,
    "twist15": twist15,
}

DESCRIPTIONS = {
    "serre6": "sgn(mod 2) = Legendre(det mod 3) fiber product; Serre (2,3)-entanglement of type Z/2",
    "abelian_not_weil_6": "448.g3 pattern: Q(E[2]) = Q(sqrt 2) inside Q(E[3]) = Q(sqrt 2, sqrt -3); abelian, not Weil",
    "twist15": "twist by d of a curve with Borel images mod 3 and 5, glued along Q(sqrt d)",
}


def load_group(name):
    """Load a shipped group fixture from its JSON generators."""
    if name not in BUILDERS:
        raise ValidationError(f"unknown group fixture {name!r}")
    text = resources.files("galent.data").joinpath(f"{name}.json").read_text()
    return group_from_json(json.loads(text))
