from itertools import combinations
from math import sqrt

import pytest

from hypercube_ex.cube import Subgraph, build_qn
from hypercube_ex.errors import InvalidParameterError, ResourceLimitError
from hypercube_ex.exact import ex_cube, ex_graph
from hypercube_ex.hypergraph import SimpleGraph, cycle_graph, find_embedding
from oracles import brute_ex, graph_c4_copies, has_c4, naive_cycles

C4 = cycle_graph(4)


def cube_copies(n, L):
    return [frozenset(tuple(sorted(e)) for e in c) for c in naive_cycles(build_qn(n).pairs(), L)]


def test_brute_force_values():
    # frozen below; recomputed here from plain subset enumeration
    assert brute_ex(list(combinations(range(1, 5), 2)), graph_c4_copies(4)) == 4
    assert brute_ex(list(combinations(range(1, 6), 2)), graph_c4_copies(5)) == 6
    assert brute_ex(build_qn(2).pairs(), cube_copies(2, 4)) == 3
    assert brute_ex(build_qn(3).pairs(), cube_copies(3, 4)) == 9
    assert brute_ex(build_qn(3).pairs(), cube_copies(3, 6)) == 9


@pytest.mark.parametrize("method", ["transversal", "subsets"])
@pytest.mark.parametrize("n,value", [(4, 4), (5, 6)])
def test_ex_graph_c4(method, n, value):
    res = ex_graph(n, C4, method=method)
    assert res.value == value and res.certified and res.exhausted
    assert len(res.witness) == value
    assert not has_c4(res.witness)


def test_ex_graph_single_edge():
    assert ex_graph(3, SimpleGraph([(1, 2)])).value == 0


@pytest.mark.parametrize("method", ["transversal", "subsets"])
@pytest.mark.parametrize("n,L,value", [(2, 4, 3), (3, 4, 9), (3, 6, 9)])
def test_ex_cube(method, n, L, value):
    res = ex_cube(n, L, method=method)
    assert res.value == value and res.certified
    assert len(naive_cycles(res.witness, L)) == 0


def test_ex_cube_q4_c4():
    res = ex_cube(4, 4)
    assert res.value == 24
    assert not has_c4(res.witness)


def test_monotonicity_and_classical_bound():
    vals = [ex_graph(n, C4).value for n in range(2, 8)]
    assert vals == sorted(vals)
    for n, v in zip(range(2, 8), vals):
        assert v <= 0.5 * (1 + sqrt(4 * n - 3)) * n / 2
    cube = [ex_cube(n, 4).value for n in (1, 2, 3, 4)]
    assert cube == sorted(cube)


def test_witness_contains_no_copy():
    res = ex_graph(6, cycle_graph(4))
    assert find_embedding(SimpleGraph(res.witness, range(1, 7)), C4) is None
    # one more edge anywhere creates a C_4 (maximality of the witness)
    for e in combinations(range(1, 7), 2):
        if e not in res.witness:
            assert find_embedding(SimpleGraph(res.witness + [e]), C4) is not None


def test_caps_and_errors():
    with pytest.raises(ResourceLimitError):
        ex_graph(10, C4)
    with pytest.raises(ResourceLimitError):
        ex_cube(5, 4)
    with pytest.raises(InvalidParameterError):
        ex_graph(4, SimpleGraph([]))
    with pytest.raises(InvalidParameterError):
        ex_graph(4, C4, method="magic")
