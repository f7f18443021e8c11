"""Enumeration and counting of even cycles in subgraphs of Q_n."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .cube import Subgraph, build_qn, format_mask, is_cover, dump_edge_list
from .errors import Budget, InvalidParameterError, as_budget


def _check_length(two_ell: int) -> None:
    if not isinstance(two_ell, int) or two_ell < 4 or two_ell % 2:
        # Q_n is bipartite, so odd lengths never occur; they are rejected
        # rather than silently answered with zero.
        raise InvalidParameterError(f"cycle length must be an even integer >= 4, got {two_ell!r}")


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple[int, ...]
    dim: int

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def support(self) -> frozenset[int]:
        """Coordinates (1-based) flipped somewhere along the cycle."""
        bits = 0
        for u, v in self.edges():
            bits |= u ^ v
        return frozenset(i + 1 for i in range(self.dim) if bits >> i & 1)

    def validate(self, g: Subgraph | None = None) -> None:
        vs = self.vertices
        if len(vs) < 4 or len(vs) % 2:
            raise InvalidParameterError(f"cycle of length {len(vs)} is not an even cycle")
        if len(set(vs)) != len(vs):
            raise InvalidParameterError("cycle repeats a vertex")
        for u, v in self.edges():
            if not is_cover(u, v):
                raise InvalidParameterError(f"{format_mask(u)} and {format_mask(v)} are not adjacent")
            if g is not None and not g.has_edge(u, v):
                raise InvalidParameterError(f"edge {format_mask(u)}-{format_mask(v)} missing from graph")

    def canonical(self) -> "CycleWitness":
        return CycleWitness(canonical_form(self.vertices), self.dim)

    def render(self) -> str:
        return "cycle: " + " ".join(format_mask(v) for v in self.vertices)

    def to_edge_list(self) -> str:
        sub = Subgraph.from_pairs(self.dim, self.edges())
        return dump_edge_list(sub, [self.render()])


def canonical_form(seq: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    """Lexicographically least rotation over both orientations."""
    seq = tuple(seq)
    m = len(seq)
    best = None
    for s in (seq, seq[::-1]):
        for r in range(m):
            cand = s[r:] + s[:r]
            if best is None or cand < best:
                best = cand
    return best


def iter_cycles(g: Subgraph, two_ell: int, budget: Budget | int | None = None) -> Iterator[CycleWitness]:
    """Yield every ``two_ell``-cycle of ``g`` once, in canonical lexicographic order.

    Each cycle is found from its smallest vertex (the anchor), through vertices
    larger than the anchor only, with the second vertex smaller than the last.
    A branch is cut when the Hamming distance back to the anchor exceeds the
    number of remaining steps, which is valid in any subgraph of Q_n.
    """
    _check_length(two_ell)
    budget = as_budget(budget, f"enumeration of {two_ell}-cycles")
    adj = g.adjacency
    last = two_ell - 1
    for s in adj:
        path = [s]
        on_path = {s}

        def extend(v: int, depth: int) -> Iterator[tuple[int, ...]]:
            budget.charge()
            if depth == last:
                if s in adj[v] and path[1] < v:
                    yield tuple(path)
                return
            remaining = two_ell - depth - 1
            for w in adj[v]:
                if w <= s or w in on_path:
                    continue
                if (w ^ s).bit_count() > remaining:
                    continue
                path.append(w)
                on_path.add(w)
                yield from extend(w, depth + 1)
                path.pop()
                on_path.discard(w)

        for vs in extend(s, 0):
            yield CycleWitness(vs, g.dim)


def enumerate_cycles(
    g: Subgraph, two_ell: int, limit: int | None = None, budget: Budget | int | None = None
) -> list[CycleWitness]:
    out = []
    if limit is not None and limit <= 0:
        return out
    for w in iter_cycles(g, two_ell, budget):
        out.append(w)
        if limit is not None and len(out) >= limit:
            break
    return out


def is_cycle_free(
    g: Subgraph, two_ell: int, budget: Budget | int | None = None
) -> tuple[bool, CycleWitness | None]:
    found = enumerate_cycles(g, two_ell, limit=1, budget=budget)
    return (not found, found[0] if found else None)


@dataclass
class CycleCensus:
    n: int
    two_ell: int
    total: int
    per_edge: dict[tuple[int, int], int] = field(repr=False)

    @property
    def edge_total(self) -> int:
        """Number of (cycle, edge) incidences."""
        return sum(self.per_edge.values())

    @property
    def uniform(self) -> bool:
        return len(set(self.per_edge.values())) <= 1

    @property
    def x(self) -> int | None:
        """Common per-edge count, or None when the counts differ."""
        values = set(self.per_edge.values())
        if len(values) == 1:
            return values.pop()
        return None

    def identity_holds(self) -> bool:
        """``2l * N == n * 2**(n-1) * x`` with every per-edge count equal to x."""
        x = self.x
        if x is None:
            return False
        return self.two_ell * self.total == self.n * 2 ** (self.n - 1) * x == self.edge_total


def census(n: int, two_ell: int, budget: Budget | int | None = None) -> CycleCensus:
    """Full cycle count in Q_n plus the number of cycles through each edge.

    Feasible envelope under the default budget: n <= 6 for 2l <= 6 and
    n <= 5 for 2l = 8; larger requests hit the work budget and raise
    ResourceLimitError.
    """
    _check_length(two_ell)
    g = build_qn(n)
    budget = as_budget(budget, f"census of C_{two_ell} in Q_{n}")
    per_edge: Counter = Counter({e: 0 for e in g})
    total = 0
    for w in iter_cycles(g, two_ell, budget):
        total += 1
        per_edge.update(w.edges())
    return CycleCensus(n, two_ell, total, dict(per_edge))


@dataclass(frozen=True)
class BoundRow:
    n: int
    two_ell: int
    N: int
    x: int | None
    ratio: Fraction

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "two_ell": self.two_ell,
            "N": self.N,
            "x": self.x,
            "ratio": float(self.ratio),
        }


def check_counting_bound(
    n_range: list[int], two_ell: int, budget: Budget | int | None = None
) -> list[BoundRow]:
    """Rows of ``N(Q_n, C_2l) / (n**l * 2**n)`` for each n."""
    _check_length(two_ell)
    ell = two_ell // 2
    rows = []
    for n in n_range:
        c = census(n, two_ell, budget)
        rows.append(BoundRow(n, two_ell, c.total, c.x, Fraction(c.total, n**ell * 2**n)))
    return rows
