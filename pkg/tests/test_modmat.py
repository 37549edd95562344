import json
import math
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from galent.errors import BudgetExceeded, ValidationError
from galent.groupfixtures import serre6
from galent.modmat import (
    FiniteMatrixGroup, ResidueMatrix, closure, crt_glue, crt_split, det_image, gl2, group_from_json,
    group_to_json, is_normal, join, kernel_of_reduction, order_gl2, quotient_fingerprint,
)


def brute_gl2_order(n):
    return sum(1 for k in product(range(n), repeat=4) if math.gcd((k[0] * k[3] - k[1] * k[2]) % n, n) == 1)


def brute_closure(gens, n):
    """Naive BFS closure used as an oracle, independent of the library closure."""
    one = (1 % n, 0, 0, 1 % n)
    mul = lambda x, y: (
        (x[0] * y[0] + x[1] * y[2]) % n, (x[0] * y[1] + x[1] * y[3]) % n,
        (x[2] * y[0] + x[3] * y[2]) % n, (x[2] * y[1] + x[3] * y[3]) % n,
    )
    seen = {one}
    todo = [one]
    while todo:
        x = todo.pop()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


# order_gl2

@pytest.mark.parametrize("n,expected", [(1, 1), (2, 6), (3, 48), (4, 96), (5, 480), (6, 288)])
def test_order_gl2_values(n, expected):
    assert order_gl2(n) == expected


@pytest.mark.parametrize("n", range(1, 9))
def test_order_gl2_matches_enumeration(n):
    assert order_gl2(n) == brute_gl2_order(n)


def test_order_gl2_rejects_zero():
    with pytest.raises(ValidationError):
        order_gl2(0)


# closure

def test_closure_trivial():
    assert closure([ResidueMatrix.identity(5)], 5).order == 1


def test_closure_gl2_f2():
    G = closure([ResidueMatrix.from_rows([[0, 1], [1, 0]], 2), ResidueMatrix.from_rows([[1, 1], [0, 1]], 2)], 2)
    assert G.order == 6


def test_closure_diagonal_mod5():
    G = closure([[[2, 0], [0, 1]], [[1, 0], [0, 2]]], 5)
    assert G.order == 16


def test_closure_gl2_mod3_generators():
    G = closure([[[0, 1], [1, 0]], [[1, 1], [0, 1]], [[2, 0], [0, 1]]], 3)
    assert G.order == 48


@pytest.mark.parametrize("n", range(2, 13))
def test_closure_of_standard_generators_is_gl2(n):
    units = [u for u in range(1, n) if math.gcd(u, n) == 1]
    gens = [(1, 1, 0, 1), (1, 0, 1, 1)] + [(u, 0, 0, 1) for u in units]
    assert closure(gens, n).order == order_gl2(n)


def test_closure_rejects_singular_generator():
    with pytest.raises(ValidationError):
        closure([[[2, 0], [0, 1]]], 4)


def test_closure_rejects_mixed_levels():
    with pytest.raises(ValidationError):
        closure([ResidueMatrix.identity(3), ResidueMatrix(5, 2, 0, 0, 1)], 5)


def test_closure_budget():
    with pytest.raises(BudgetExceeded):
        closure([(1, 1, 0, 1), (1, 0, 1, 1), (2, 0, 0, 1)], 7, budget=100)


def test_closure_ordering_is_deterministic():
    G = closure([(1, 1, 0, 1), (0, 1, 1, 0)], 4)
    assert list(G.keys) == sorted(G.keys)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.lists(st.tuples(*[st.integers(0, 7)] * 4), min_size=1, max_size=3))
def test_closure_matches_bfs_oracle(n, raw):
    gens = [tuple(x % n for x in g) for g in raw if math.gcd((g[0] * g[3] - g[1] * g[2]) % n, n) == 1]
    if not gens:
        return
    G = closure(gens, n)
    assert G.key_set == brute_closure(gens, n)
    assert order_gl2(n) % G.order == 0


# kernels, joins, quotients

def test_kernel_of_reduction_gl2_6():
    G = gl2(6)
    assert kernel_of_reduction(G, 3).order == 6
    assert kernel_of_reduction(G, 6).order == 1
    assert kernel_of_reduction(G, 1).order == G.order


def test_kernel_rejects_nondivisor():
    with pytest.raises(ValidationError):
        kernel_of_reduction(gl2(6), 4)


@pytest.mark.parametrize("n,e", [(4, 2), (6, 2), (6, 3), (8, 4), (9, 3)])
def test_kernel_is_normal(n, e):
    G = gl2(n)
    assert is_normal(G, kernel_of_reduction(G, e))


def test_join_of_kernels_is_everything():
    G = gl2(6)
    J = join(kernel_of_reduction(G, 2), kernel_of_reduction(G, 3))
    assert J.order == 288


def test_join_idempotent_and_identity():
    H = closure([(1, 1, 0, 1), (2, 0, 0, 1)], 5)
    assert join(H, H) == H
    assert join(H, closure([], 5)) == H


def test_join_contains_both():
    H1 = closure([(1, 1, 0, 1)], 6)
    H2 = closure([(1, 0, 1, 1)], 6)
    J = join(H1, H2)
    assert H1.key_set <= J.key_set and H2.key_set <= J.key_set
    assert J.key_set == brute_closure([(1, 1, 0, 1), (1, 0, 1, 1)], 6)


def test_join_rejects_mixed_levels():
    with pytest.raises(ValidationError):
        join(closure([], 2), closure([], 3))


def test_quotient_trivial_and_full():
    G = gl2(6)
    assert quotient_fingerprint(G, G).order == 1
    fp = quotient_fingerprint(G, closure([], 6))
    assert fp.order == 288


def test_quotient_serre6():
    G = serre6()
    J = join(kernel_of_reduction(G, 2), kernel_of_reduction(G, 3))
    fp = quotient_fingerprint(G, J)
    assert fp.is_abelian and fp.abelian_invariants == (2,)


def test_quotient_split_cartan_5():
    Cs = closure([(2, 0, 0, 1), (1, 0, 0, 2)], 5)
    fp = quotient_fingerprint(Cs, closure([], 5))
    assert fp.is_abelian and fp.abelian_invariants == (4, 4)


def test_quotient_rejects_non_normal():
    G = gl2(3)
    H = closure([(1, 1, 0, 1)], 3)
    with pytest.raises(ValidationError):
        quotient_fingerprint(G, H)


# determinant image and CRT

def test_det_image():
    assert det_image(gl2(5)).full
    assert det_image(closure([(1, 1, 0, 1)], 5)).residues == (1,)
    assert det_image(serre6()).full


def test_crt_split_gl2_6():
    s = crt_split(gl2(6))
    assert [H.order for H in s.projections] == [6, 48]
    assert s.full_fiber_product


def test_crt_split_serre6():
    s = crt_split(serre6())
    assert [H.order for H in s.projections] == [6, 48]
    assert not s.full_fiber_product


def test_crt_split_prime_power():
    s = crt_split(gl2(4))
    assert len(s.projections) == 1 and s.full_fiber_product


def test_crt_glue():
    k = crt_glue([(0, 1, 1, 0), (2, 0, 0, 2)], [2, 3])
    assert k == (2, 3, 3, 2)


# JSON

def test_json_round_trip():
    G = serre6()
    doc = json.loads(json.dumps(group_to_json(G)))
    assert doc["order"] == 144
    assert group_from_json(doc) == G


def test_json_order_mismatch():
    with pytest.raises(ValidationError):
        group_from_json({"level": 3, "generators": [[[1, 1], [0, 1]]], "order": 5})


def test_fingerprint_invariants():
    for G in (gl2(2), gl2(3), serre6(), closure([(2, 0, 0, 1), (1, 0, 0, 2)], 5)):
        fp = G.fingerprint
        assert fp.order % fp.exponent == 0
        if fp.is_abelian:
            assert math.prod(fp.abelian_invariants) == fp.order


def test_residue_matrix_reduced_and_levels():
    m = ResidueMatrix(5, 7, -1, 10, 6)
    assert m.key == (2, 4, 0, 1)
    with pytest.raises(ValidationError):
        m * ResidueMatrix.identity(3)
    assert (m * m.inverse()).key == (1, 0, 0, 1)
