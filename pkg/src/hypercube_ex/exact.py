"""Exact extremal numbers ex(n, H) and ex(Q_n, C_2l) for small instances.

Both reduce to the same problem: given the host edges and every copy of the
forbidden graph (as an edge set), delete as few edges as possible so that
no copy survives.  ``ex = |E(host)| - min transversal``.  Two exact searches
are provided:

* ``"transversal"`` (default): branch on the edges of the first surviving
  copy, bounded below by a greedy packing of edge-disjoint surviving copies.
* ``"subsets"``: plain include/exclude over edges in canonical order with the
  bound ``current + remaining``; slow, kept as the reference path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .cube import Subgraph, build_qn, dump_edge_list
from .cycles import enumerate_cycles, is_cycle_free
from .errors import Budget, InvalidParameterError, ResourceLimitError, VerificationError, as_budget
from .hypergraph import SimpleGraph, find_embedding, iter_copies

GRAPH_CAP = 9
CUBE_CAP = 4

Edge = tuple[int, int]


@dataclass
class ExtremalResult:
    host: str
    forbidden: str
    value: int
    witness: list[Edge]
    method: str
    nodes: int
    exhausted: bool = True
    certified: bool = False
    host_edges: int = 0
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "host": self.host,
            "forbidden": self.forbidden,
            "value": self.value,
            "host_edges": self.host_edges,
            "method": self.method,
            "search_nodes": self.nodes,
            "exhausted": self.exhausted,
            "certified": self.certified,
            **self.extra,
        }


def _transversal(edges: Sequence[Edge], copies: list[frozenset], budget: Budget) -> set[Edge]:
    # incumbent starts one above |E| so the first feasible leaf is accepted
    best: list = [None, len(edges) + 1]

    def rec(deleted: set, fixed: set) -> None:
        budget.charge()
        alive = []
        for c in copies:
            if c & deleted:
                continue
            free = c - fixed
            if not free:
                return
            alive.append(free)
        if not alive:
            best[0], best[1] = set(deleted), len(deleted)
            return
        alive.sort(key=len)
        # lower bound: greedy packing of surviving copies with disjoint free edges
        used: set = set()
        lb = 0
        for free in alive:
            if not free & used:
                used |= free
                lb += 1
        if len(deleted) + lb >= best[1]:
            return
        added = []
        for e in sorted(alive[0]):
            deleted.add(e)
            rec(deleted, fixed)
            deleted.discard(e)
            fixed.add(e)
            added.append(e)
        for e in added:
            fixed.discard(e)

    rec(set(), set())
    return best[0]


def _subsets(edges: Sequence[Edge], copies: list[frozenset], budget: Budget) -> set[Edge]:
    through: dict[Edge, list[frozenset]] = {e: [] for e in edges}
    for c in copies:
        for e in c:
            through[e].append(c)
    m = len(edges)
    kept: set[Edge] = set()
    best: list[set[Edge]] = [set()]

    def rec(i: int) -> None:
        budget.charge()
        if len(kept) + (m - i) <= len(best[0]):
            return
        if i == m:
            best[0] = set(kept)
            return
        e = edges[i]
        if all(not (c - {e}) <= kept for c in through[e]):
            kept.add(e)
            rec(i + 1)
            kept.discard(e)
        rec(i + 1)

    rec(0)
    return set(edges) - best[0]


def _solve(edges: list[Edge], copies: list[frozenset], method: str, budget: Budget):
    if method == "transversal":
        deleted = _transversal(edges, copies, budget)
    elif method == "subsets":
        deleted = _subsets(edges, copies, budget)
    else:
        raise InvalidParameterError(f"unknown method {method!r}")
    return [e for e in edges if e not in deleted]


def ex_graph(n: int, pattern: SimpleGraph, cap: int = GRAPH_CAP, method: str = "transversal",
             budget: Budget | int | None = None) -> ExtremalResult:
    """Largest edge count of a ``pattern``-free graph on ``n`` labelled vertices 1..n."""
    if not pattern.edges:
        raise InvalidParameterError("pattern must have at least one edge")
    if n < 1:
        raise InvalidParameterError("n must be positive")
    if n > cap:
        raise ResourceLimitError(f"ex_graph: n={n} exceeds cap {cap}")
    budget = as_budget(budget, f"ex({n}, pattern)")
    host_edges = list(combinations(range(1, n + 1), 2))
    host = SimpleGraph(host_edges, range(1, n + 1))
    copies = iter_copies(host, pattern, budget=budget) if len(pattern.vertices) <= n else []
    witness = _solve(host_edges, copies, method, budget)
    res = ExtremalResult(
        host=f"K_{n}", forbidden=f"graph with {len(pattern.vertices)} vertices, {len(pattern.edges)} edges",
        value=len(witness), witness=witness, method=method, nodes=budget.spent,
        host_edges=len(host_edges), extra={"copies": len(copies)},
    )
    if find_embedding(SimpleGraph(witness, range(1, n + 1)), pattern) is not None:
        raise VerificationError("witness", "extremal witness contains the pattern")
    res.certified = True
    return res


def ex_cube(n: int, two_ell: int, cap: int = CUBE_CAP, method: str = "transversal",
            budget: Budget | int | None = None) -> ExtremalResult:
    """Largest edge count of a C_{two_ell}-free subgraph of Q_n."""
    if n < 1:
        raise InvalidParameterError("n must be positive")
    if n > cap:
        raise ResourceLimitError(f"ex_cube: n={n} exceeds cap {cap}")
    budget = as_budget(budget, f"ex(Q_{n}, C_{two_ell})")
    q = build_qn(n)
    edges = q.pairs()
    copies = [frozenset(w.edges()) for w in enumerate_cycles(q, two_ell, budget=budget)]
    witness = _solve(edges, copies, method, budget)
    res = ExtremalResult(
        host=f"Q_{n}", forbidden=f"C_{two_ell}", value=len(witness), witness=witness,
        method=method, nodes=budget.spent, host_edges=len(edges), extra={"copies": len(copies)},
    )
    free, _ = is_cycle_free(Subgraph.from_pairs(n, witness), two_ell)
    if not free:
        raise VerificationError("witness", "extremal witness contains the cycle")
    res.certified = True
    res.extra["witness_edge_list"] = dump_edge_list(Subgraph.from_pairs(n, witness))
    return res
