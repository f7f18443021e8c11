"""3-uniform hypergraphs: link graphs, two-lifts, partitions, and K_{2,q} extraction.

Vertex labels are integers throughout.  Edges are stored as sorted tuples.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Union

from .errors import Budget, InvalidParameterError, ResourceLimitError, VerificationError, as_budget

EMBED_CAP = 12


def _norm(edge: Iterable[int], r: int) -> tuple[int, ...]:
    e = tuple(sorted(edge))
    if len(e) != r or len(set(e)) != r:
        raise InvalidParameterError(f"{edge!r} is not a set of {r} distinct vertices")
    return e


class _Hyper:
    rank = 0

    def __init__(self, edges: Iterable[Iterable[int]] = (), vertices: Iterable[int] | None = None):
        es = frozenset(_norm(e, self.rank) for e in edges)
        covered = {v for e in es for v in e}
        vs = frozenset(covered if vertices is None else vertices)
        if not covered <= vs:
            raise InvalidParameterError("edge uses a vertex outside the vertex set")
        self.edges = es
        self.vertices = vs

    def __eq__(self, other):
        return type(other) is type(self) and self.edges == other.edges and self.vertices == other.vertices

    def __hash__(self):
        return hash((type(self).__name__, self.edges, self.vertices))

    def __repr__(self):
        return f"{type(self).__name__}(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def __len__(self):
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted(self.edges)

    def degrees(self) -> Counter:
        deg = Counter({v: 0 for v in self.vertices})
        for e in self.edges:
            deg.update(e)
        return deg

    def neighbours(self) -> dict[int, set[int]]:
        """Vertices sharing at least one edge with each vertex."""
        nb: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            for v in e:
                nb[v].update(e)
        for v in nb:
            nb[v].discard(v)
        return nb

    def relabel(self, mapping: dict[int, int]):
        return type(self)(
            (tuple(mapping[v] for v in e) for e in self.edges),
            (mapping[v] for v in self.vertices),
        )


class SimpleGraph(_Hyper):
    rank = 2


class ThreeGraph(_Hyper):
    rank = 3


Graphish = Union[SimpleGraph, ThreeGraph]


def complete_three_graph(vertices: Iterable[int]) -> ThreeGraph:
    vs = sorted(vertices)
    return ThreeGraph(combinations(vs, 3), vs)


def cycle_graph(m: int, start: int = 1) -> SimpleGraph:
    vs = list(range(start, start + m))
    return SimpleGraph(((vs[i], vs[(i + 1) % m]) for i in range(m)), vs)


def link(g: ThreeGraph, x: int) -> SimpleGraph:
    if x not in g.vertices:
        raise InvalidParameterError(f"vertex {x!r} not in the 3-graph")
    return SimpleGraph(tuple(v for v in e if v != x) for e in g.edges if x in e)


def bipartition(h: SimpleGraph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Two colour classes (smallest vertex of each component on the left), or None."""
    side: dict[int, int] = {}
    nb = h.neighbours()
    for root in sorted(h.vertices):
        if root in side:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w in nb[v]:
                if w not in side:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
    left = frozenset(v for v, s in side.items() if s == 0)
    return left, frozenset(h.vertices) - left


def lift_labels(h: SimpleGraph) -> tuple[int, int]:
    """Default fresh apex labels used by :func:`two_lift`."""
    top = max(h.vertices, default=0)
    return top + 1, top + 2


def two_lift(h: SimpleGraph, a: int | None = None, b: int | None = None) -> ThreeGraph:
    """Extend every edge of ``h`` once by ``a`` and once by ``b``."""
    if not h.edges:
        raise InvalidParameterError("two-lift of an empty graph")
    if bipartition(h) is None:
        raise InvalidParameterError("two-lift is defined for bipartite graphs only")
    da, db = lift_labels(h)
    a = da if a is None else a
    b = db if b is None else b
    if a == b or a in h.vertices or b in h.vertices:
        raise InvalidParameterError("apex labels must be distinct and fresh")
    edges = [(a, *e) for e in h.edges] + [(b, *e) for e in h.edges]
    return ThreeGraph(edges, set(h.vertices) | {a, b})


def k_partition(edges: Iterable[tuple[int, ...]], k: int, vertices: Iterable[int] | None = None,
                budget: Budget | int | None = None) -> list[frozenset[int]] | None:
    """A partition into ``k`` parts meeting every edge at most once, or None.

    Exhaustive backtracking colouring of the 2-shadow; vertices are coloured in
    increasing order and a new part is opened only in first-fit order, so the
    returned parts are canonical (ordered by their smallest element).
    """
    edges = list(edges)
    vs = sorted(set(vertices) if vertices is not None else {v for e in edges for v in e})
    nb: dict[int, set[int]] = {v: set() for v in vs}
    for e in edges:
        for u, w in combinations(e, 2):
            if u == w:
                return None
            nb[u].add(w)
            nb[w].add(u)
    budget = as_budget(budget, "partition search")
    colour: dict[int, int] = {}

    def place(i: int, used: int) -> bool:
        budget.charge()
        if i == len(vs):
            return True
        v = vs[i]
        taken = {colour[w] for w in nb[v] if w in colour}
        for c in range(min(used + 1, k)):
            if c in taken:
                continue
            colour[v] = c
            if place(i + 1, max(used, c + 1)):
                return True
            del colour[v]
        return False

    if not place(0, 0):
        return None
    parts = [frozenset(v for v in vs if colour[v] == c) for c in range(k)]
    return [p for p in parts if p] + [p for p in parts if not p]


# ---------------------------------------------------------------------------
# Embeddings


def _embedding_order(pattern: Graphish) -> list[int]:
    deg = pattern.degrees()
    nb = pattern.neighbours()
    remaining = set(pattern.vertices)
    order: list[int] = []
    while remaining:
        placed = set(order)
        v = max(remaining, key=lambda u: (len(nb[u] & placed), deg[u], -u))
        order.append(v)
        remaining.discard(v)
    return order


def iter_embeddings(host: Graphish, pattern: Graphish, cap: int = EMBED_CAP,
                    budget: Budget | int | None = None) -> Iterator[dict[int, int]]:
    """All injective maps carrying pattern edges onto host edges."""
    if type(host) is not type(pattern):
        raise InvalidParameterError("host and pattern must have the same uniformity")
    if len(pattern.vertices) > cap:
        raise ResourceLimitError(f"pattern has {len(pattern.vertices)} vertices; cap is {cap}")
    budget = as_budget(budget, "embedding search")
    order = _embedding_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    closing: list[list[tuple[int, ...]]] = [[] for _ in order]
    for e in pattern.edges:
        closing[max(pos[v] for v in e)].append(e)
    pnb = pattern.neighbours()
    hdeg = host.degrees()
    pdeg = pattern.degrees()
    hnb = host.neighbours()
    host_edges = host.edges
    pool = sorted(host.vertices, key=lambda u: (-hdeg[u], u))
    phi: dict[int, int] = {}
    used: set[int] = set()

    def rec(i: int) -> Iterator[dict[int, int]]:
        budget.charge()
        if i == len(order):
            yield dict(phi)
            return
        v = order[i]
        anchor = next((w for w in order[:i] if w in pnb[v]), None)
        cands = pool if anchor is None else sorted(hnb[phi[anchor]], key=lambda u: (-hdeg[u], u))
        for u in cands:
            if u in used or hdeg[u] < pdeg[v]:
                continue
            phi[v] = u
            if all(tuple(sorted(phi[x] for x in e)) in host_edges for e in closing[i]):
                used.add(u)
                yield from rec(i + 1)
                used.discard(u)
            del phi[v]

    yield from rec(0)


def find_embedding(host: Graphish, pattern: Graphish, cap: int = EMBED_CAP,
                   budget: Budget | int | None = None) -> dict[int, int] | None:
    return next(iter_embeddings(host, pattern, cap, budget), None)


def iter_copies(host: Graphish, pattern: Graphish, cap: int = EMBED_CAP,
                budget: Budget | int | None = None) -> list[frozenset[tuple[int, ...]]]:
    """Distinct edge sets of pattern copies in the host, sorted."""
    seen = set()
    for phi in iter_embeddings(host, pattern, cap, budget):
        seen.add(frozenset(tuple(sorted(phi[v] for v in e)) for e in pattern.edges))
    return sorted(seen, key=lambda s: sorted(s))


# ---------------------------------------------------------------------------
# K_{2,q} extraction and star counting


@dataclass
class TwoLiftWitness:
    a: int | None
    b: int | None
    pairs: tuple[tuple[int, int], ...]
    embedding: dict[int, int] | None = field(default=None)

    @property
    def q(self) -> int:
        return len(self.pairs)

    def check(self, g: ThreeGraph) -> None:
        if self.q == 0:
            return
        if self.a == self.b:
            raise VerificationError("witness", "apex vertices coincide")
        for z, w in self.pairs:
            if self.a in (z, w) or self.b in (z, w):
                raise VerificationError("witness", "apex inside a pair")
            for apex in (self.a, self.b):
                if tuple(sorted((apex, z, w))) not in g.edges:
                    raise VerificationError("witness", f"{(apex, z, w)} is not an edge")

    def as_dict(self) -> dict:
        out = {"a": self.a, "b": self.b, "pairs": [list(p) for p in self.pairs], "q": self.q}
        if self.embedding is not None:
            out["embedding"] = {str(k): v for k, v in sorted(self.embedding.items())}
        return out


def _link_pairs(g: ThreeGraph) -> dict[int, set[tuple[int, int]]]:
    out: dict[int, set[tuple[int, int]]] = {v: set() for v in g.vertices}
    for x, y, z in g.edges:
        out[x].add((y, z))
        out[y].add((x, z))
        out[z].add((x, y))
    return out


def pair_codegrees(g: ThreeGraph) -> dict[tuple[int, int], int]:
    """``|L(a) ∩ L(b)|`` for every vertex pair a < b."""
    lp = _link_pairs(g)
    return {(a, b): len(lp[a] & lp[b]) for a, b in combinations(sorted(g.vertices), 2)}


def find_largest_k2q(g: ThreeGraph) -> TwoLiftWitness:
    """Vertex pair with the most common link edges; ties go to the smallest pair."""
    if len(g.vertices) < 3:
        raise InvalidParameterError("need at least 3 vertices")
    lp = _link_pairs(g)
    best = None
    best_q = 0
    for a, b in combinations(sorted(g.vertices), 2):
        q = len(lp[a] & lp[b])
        if q > best_q:
            best, best_q = (a, b), q
    if best is None:
        return TwoLiftWitness(None, None, ())
    a, b = best
    return TwoLiftWitness(a, b, tuple(sorted(lp[a] & lp[b])))


@dataclass(frozen=True)
class StarCount:
    X: int
    lower: Fraction
    q: int
    n: int

    @property
    def upper(self) -> int:
        return self.q * comb(self.n, 2)

    @property
    def upper_q_bound_check(self) -> bool:
        return self.X <= self.upper

    @property
    def convexity_check(self) -> bool:
        return self.X >= self.lower

    def as_dict(self) -> dict:
        return {
            "X": self.X,
            "lower": str(self.lower),
            "q": self.q,
            "n": self.n,
            "q_times_C(n,2)": self.upper,
            "upper_q_bound_check": self.upper_q_bound_check,
            "convexity_check": self.convexity_check,
        }


def star_count(g: ThreeGraph) -> StarCount:
    """2-edge stars centred at vertex pairs of the incidence graph V x C(V,2).

    ``lower`` is ``|U| * C(t, 2)`` with ``t = 3|E| / |U|`` the mean pair degree
    and ``C(t, 2) = t(t-1)/2`` taken on the rational mean.
    """
    n = len(g.vertices)
    deg: Counter = Counter()
    for e in g.edges:
        deg.update(combinations(e, 2))
    X = sum(comb(d, 2) for d in deg.values())
    n_pairs = comb(n, 2)
    if n_pairs:
        t = Fraction(3 * len(g.edges), n_pairs)
        lower = n_pairs * t * (t - 1) / 2
    else:
        lower = Fraction(0)
    q = find_largest_k2q(g).q if n >= 3 else 0
    return StarCount(X, lower, q, n)


@dataclass
class Lemma4Result:
    success: bool
    witness: TwoLiftWitness
    q: int
    X: int
    threshold: int | None = None
    reason: str = ""

    def as_dict(self) -> dict:
        return {
            "success": self.success,
            "witness": self.witness.as_dict(),
            "q": self.q,
            "X": self.X,
            "threshold": self.threshold,
            "reason": self.reason,
        }


def lemma4_pipeline(g: ThreeGraph, target: SimpleGraph, threshold_cap: int = 8,
                    budget: Budget | int | None = None) -> Lemma4Result:
    """Find a two-lift of ``target`` through the densest common link family.

    On success the witness carries the apexes, the pairs used, and the map from
    ``target`` vertices into ``g``; it is checked against ``g`` before return.
    On failure the report carries q, X and, when the pair graph is small enough
    for the exact oracle, ``ex(|V(H')|, target)``.
    """
    if bipartition(target) is None:
        raise InvalidParameterError("target must be bipartite")
    k2q = find_largest_k2q(g)
    X = star_count(g).X
    if k2q.q == 0:
        return Lemma4Result(False, k2q, 0, X, reason="no two vertices share a link edge")
    host = SimpleGraph(k2q.pairs)
    phi = find_embedding(host, target, budget=budget)
    if phi is not None:
        used = tuple(sorted(tuple(sorted((phi[u], phi[v]))) for u, v in target.edges))
        witness = TwoLiftWitness(k2q.a, k2q.b, used, phi)
        witness.check(g)
        return Lemma4Result(True, witness, k2q.q, X)
    threshold = None
    if len(host.vertices) <= threshold_cap:
        from .exact import ex_graph

        threshold = ex_graph(len(host.vertices), target).value
    return Lemma4Result(
        False, k2q, k2q.q, X, threshold,
        reason=f"target not found among the {k2q.q} common pairs of ({k2q.a}, {k2q.b})",
    )


# ---------------------------------------------------------------------------
# Text formats: header "n=<count>", then one sorted edge per line.


def dump_hypergraph(g: Graphish) -> str:
    n = max(max(g.vertices, default=0), len(g.vertices))
    return "\n".join([f"n={n}"] + [" ".join(map(str, e)) for e in g.sorted_edges()]) + "\n"


def load_hypergraph(text: str, rank: int = 3) -> Graphish:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("n="):
        raise InvalidParameterError("hypergraph file must start with an 'n=<count>' header")
    n = int(lines[0][2:])
    edges = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    cls = ThreeGraph if rank == 3 else SimpleGraph
    vertices = set(range(1, n + 1)) | {v for e in edges for v in e}
    return cls(edges, vertices)
