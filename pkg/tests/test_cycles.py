import random
from fractions import Fraction

import pytest

from hypercube_ex.cube import Subgraph, build_qn
from hypercube_ex.cycles import (
    CycleWitness, canonical_form, census, check_counting_bound, enumerate_cycles, is_cycle_free,
)
from hypercube_ex.errors import InvalidParameterError, ResourceLimitError
from oracles import (
    cube_c4_closed_form, cube_c6_closed_form, dp_cycle_count, naive_cycles, qn_adjacency, trace_c4,
)

# frozen from the oracles (naive path extension, subset DP, closed forms)
CENSUS = {(2, 4): (1, 1), (3, 4): (6, 2), (3, 6): (16, 8), (4, 4): (24, 3), (4, 6): (128, 24)}


def test_q2_single_cycle():
    cs = enumerate_cycles(build_qn(2), 4)
    assert len(cs) == 1
    assert cs[0].vertices == (0, 1, 3, 2)


@pytest.mark.parametrize("n,L", [(3, 4), (3, 6)])
def test_small_enumeration_counts(n, L):
    assert len(enumerate_cycles(build_qn(n), L)) == CENSUS[(n, L)][0]


def test_oracles_agree_with_frozen_values():
    for (n, L), (N, _) in CENSUS.items():
        pairs = build_qn(n).pairs()
        assert len(naive_cycles(pairs, L)) == N
        assert dp_cycle_count(pairs, L) == N
        assert N == (cube_c4_closed_form(n) if L == 4 else cube_c6_closed_form(n))
        if L == 4:
            assert trace_c4(qn_adjacency(n)) == N


@pytest.mark.parametrize("key", sorted(CENSUS))
def test_census(key):
    n, L = key
    c = census(n, L)
    assert (c.total, c.x) == CENSUS[key]
    assert c.uniform and c.identity_holds()
    assert L * c.total == sum(c.per_edge.values()) == n * 2 ** (n - 1) * c.x


def test_enumeration_canonical_and_ordered():
    cs = enumerate_cycles(build_qn(4), 6)
    forms = [w.vertices for w in cs]
    assert forms == sorted(forms)
    assert all(canonical_form(f) == f for f in forms)
    assert len(set(forms)) == len(forms)


def test_witness_validation_and_support():
    for L in (4, 6, 8):
        for w in enumerate_cycles(build_qn(4), L):
            w.validate(build_qn(4))
            assert len(w.support()) <= L // 2


def test_witness_validation_rejects():
    with pytest.raises(InvalidParameterError):
        CycleWitness((0, 1, 3, 1), 2).validate()
    with pytest.raises(InvalidParameterError):
        CycleWitness((0, 1, 2, 3), 2).validate()


def test_limit_and_odd_length():
    assert len(enumerate_cycles(build_qn(3), 4, limit=2)) == 2
    with pytest.raises(InvalidParameterError):
        enumerate_cycles(build_qn(3), 5)
    with pytest.raises(InvalidParameterError):
        enumerate_cycles(build_qn(3), 2)


def test_cycle_free_examples():
    q2 = build_qn(2)
    free, w = is_cycle_free(q2, 4)
    assert not free and w.vertices == (0, 1, 3, 2)
    path = q2.without([(2, 3)])
    assert is_cycle_free(path, 4) == (True, None)


@pytest.mark.parametrize("seed", range(25))
def test_random_subgraph_against_naive(seed):
    rng = random.Random(seed)
    n = rng.choice([3, 4])
    pool = build_qn(n).pairs()
    edges = rng.sample(pool, rng.randint(6, min(24, len(pool))))
    g = Subgraph.from_pairs(n, edges)
    for L in (4, 6, 8):
        got = {frozenset(frozenset(e) for e in w.edges()) for w in enumerate_cycles(g, L)}
        assert got == naive_cycles(edges, L)


def test_budget_is_enforced():
    with pytest.raises(ResourceLimitError):
        census(6, 8, budget=1000)


def test_counting_bound_table():
    rows = check_counting_bound([2, 3, 4], 4)
    assert [r.N for r in rows] == [1, 6, 24]
    assert all(r.ratio <= 1 for r in rows)
    # N(Q_n, C_6) = 2 C(n,3) 2^n, so the ratio rises towards 1/3 and stays below it
    rows6 = check_counting_bound([3, 4, 5, 6], 6)
    ratios = [r.ratio for r in rows6]
    assert all(0 < r < Fraction(1, 3) for r in ratios)
    assert ratios == sorted(ratios)
    assert check_counting_bound([], 4) == []


def test_witness_serialization():
    w = enumerate_cycles(build_qn(2), 4)[0]
    text = w.to_edge_list()
    assert text.startswith("dim=2\n")
    assert "cycle: {} {1} {1,2} {2}" in text
