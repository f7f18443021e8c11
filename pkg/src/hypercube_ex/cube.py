"""Hypercube Q_n: subset vertices, covering-pair edges, layers and subgraphs.

A vertex is a subset of ``{1..n}`` stored as an n-bit mask (element ``i`` is
bit ``i-1``).  Edges are stored canonically as ``(lo, hi)`` mask pairs with
``lo`` the smaller set, and packed into a sorted ``uint64`` array so that the
full cube stays cheap up to ``MAX_DIM``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .errors import InvalidParameterError

MAX_DIM = 24


def _check_dim(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidParameterError(f"dimension must be an integer, got {n!r}")
    if not 1 <= n <= MAX_DIM:
        raise InvalidParameterError(f"dimension n={n} outside supported range 1..{MAX_DIM}")


def mask_of(subset: Iterable[int], dim: int) -> int:
    mask = 0
    for x in subset:
        if not 1 <= x <= dim:
            raise InvalidParameterError(f"element {x} not in [1..{dim}]")
        mask |= 1 << (x - 1)
    return mask


def subset_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def format_mask(mask: int) -> str:
    return "{" + ",".join(map(str, subset_of(mask))) + "}"


def parse_mask(text: str, dim: int) -> int:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise InvalidParameterError(f"malformed vertex {text!r}")
    body = text[1:-1].strip()
    if not body:
        return 0
    return mask_of((int(tok) for tok in body.split(",")), dim)


def is_cover(lo: int, hi: int) -> bool:
    """True when ``hi`` is ``lo`` plus exactly one element."""
    diff = lo ^ hi
    return lo & hi == lo and diff != 0 and diff & (diff - 1) == 0


@dataclass(frozen=True, order=True)
class Vertex:
    mask: int
    dim: int

    def __post_init__(self):
        _check_dim(self.dim)
        if not 0 <= self.mask < (1 << self.dim):
            raise InvalidParameterError(f"mask {self.mask} out of range for n={self.dim}")

    @classmethod
    def of(cls, subset: Iterable[int], dim: int) -> "Vertex":
        return cls(mask_of(subset, dim), dim)

    @property
    def subset(self) -> frozenset[int]:
        return frozenset(subset_of(self.mask))

    @property
    def layer(self) -> int:
        return self.mask.bit_count()

    def __str__(self) -> str:
        return format_mask(self.mask)


@dataclass(frozen=True, order=True)
class CubeEdge:
    lo: Vertex
    hi: Vertex

    def __post_init__(self):
        if self.lo.dim != self.hi.dim:
            raise InvalidParameterError("edge endpoints live in different cubes")
        if not is_cover(self.lo.mask, self.hi.mask):
            raise InvalidParameterError(f"{self.lo}-{self.hi} is not a covering pair")

    @classmethod
    def between(cls, u: Vertex, v: Vertex) -> "CubeEdge":
        return cls(u, v) if u.mask < v.mask else cls(v, u)

    def __str__(self) -> str:
        return f"{self.lo}-{self.hi}"


def are_adjacent(u: Vertex, v: Vertex) -> bool:
    if u.dim != v.dim:
        raise InvalidParameterError(f"vertices from Q_{u.dim} and Q_{v.dim}")
    return is_cover(u.mask, v.mask) or is_cover(v.mask, u.mask)


def layer(n: int, k: int) -> set[Vertex]:
    _check_dim(n)
    if not 0 <= k <= n:
        raise InvalidParameterError(f"layer k={k} outside 0..{n}")
    return {Vertex.of(c, n) for c in combinations(range(1, n + 1), k)}


class Subgraph:
    """Immutable edge set inside Q_n.

    Edges are packed as ``(lo << dim) | hi``; iteration yields ``(lo, hi)``
    mask pairs in increasing code order, which is the canonical edge order used
    throughout the package.
    """

    def __init__(self, dim: int, codes: np.ndarray):
        self.dim = dim
        codes = np.asarray(codes, dtype=np.uint64)
        codes.setflags(write=False)
        self.codes = codes

    @classmethod
    def from_pairs(cls, dim: int, pairs: Iterable[tuple[int, int]]) -> "Subgraph":
        """Build from mask pairs in either orientation; rejects non-covering pairs."""
        _check_dim(dim)
        arr = np.array(list(pairs), dtype=np.int64).reshape(-1, 2)
        if len(arr) == 0:
            return cls(dim, np.empty(0, dtype=np.uint64))
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        if lo.min() < 0 or hi.max() >= (1 << dim):
            raise InvalidParameterError(f"vertex mask out of range for Q_{dim}")
        diff = lo ^ hi
        ok = ((lo & hi) == lo) & (diff != 0) & ((diff & (diff - 1)) == 0)
        if not ok.all():
            bad = int(np.flatnonzero(~ok)[0])
            raise InvalidParameterError(
                f"{format_mask(int(lo[bad]))}-{format_mask(int(hi[bad]))} is not an edge of Q_{dim}"
            )
        codes = (lo.astype(np.uint64) << np.uint64(dim)) | hi.astype(np.uint64)
        return cls(dim, np.unique(codes))

    @classmethod
    def from_edges(cls, dim: int, edges: Iterable[CubeEdge]) -> "Subgraph":
        pairs = []
        for e in edges:
            if e.lo.dim != dim:
                raise InvalidParameterError(f"edge {e} is not in Q_{dim}")
            pairs.append((e.lo.mask, e.hi.mask))
        return cls.from_pairs(dim, pairs)

    def __len__(self) -> int:
        return int(self.codes.size)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        mask = (1 << self.dim) - 1
        for c in self.codes.tolist():
            yield c >> self.dim, c & mask

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgraph)
            and self.dim == other.dim
            and np.array_equal(self.codes, other.codes)
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.codes.tobytes()))

    def __repr__(self) -> str:
        return f"Subgraph(dim={self.dim}, edges={len(self)})"

    def pairs(self) -> list[tuple[int, int]]:
        return list(self)

    def cube_edges(self) -> list[CubeEdge]:
        return [CubeEdge(Vertex(lo, self.dim), Vertex(hi, self.dim)) for lo, hi in self]

    @cached_property
    def _pair_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._pair_set

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {}
        for lo, hi in self:
            adj.setdefault(lo, []).append(hi)
            adj.setdefault(hi, []).append(lo)
        return {v: tuple(sorted(ns)) for v, ns in sorted(adj.items())}

    def vertices(self) -> list[int]:
        return list(self.adjacency)

    def degree(self, v: int) -> int:
        return len(self.adjacency.get(v, ()))

    def without(self, pairs: Iterable[tuple[int, int]]) -> "Subgraph":
        drop = Subgraph.from_pairs(self.dim, pairs).codes
        return Subgraph(self.dim, np.setdiff1d(self.codes, drop, assume_unique=True))

    def union(self, other: "Subgraph") -> "Subgraph":
        if other.dim != self.dim:
            raise InvalidParameterError("cannot merge subgraphs of different cubes")
        return Subgraph(self.dim, np.union1d(self.codes, other.codes))


def build_qn(n: int) -> Subgraph:
    """The full hypercube; ``n * 2**(n-1)`` edges."""
    _check_dim(n)
    v = np.arange(1 << n, dtype=np.uint64)
    parts = []
    for i in range(n):
        bit = np.uint64(1 << i)
        lo = v[(v & bit) == 0]
        parts.append((lo << np.uint64(n)) | (lo | bit))
    return Subgraph(n, np.sort(np.concatenate(parts)))


def edge_count_qn(n: int) -> int:
    return n * 2 ** (n - 1)


# Edge-list text interchange: "dim=<n>" then one "{..}-{..}" per line.

def dump_edge_list(g: Subgraph, extra_lines: Iterable[str] = ()) -> str:
    lines = [f"dim={g.dim}"]
    lines += [f"{format_mask(lo)}-{format_mask(hi)}" for lo, hi in g]
    lines += list(extra_lines)
    return "\n".join(lines) + "\n"


def load_edge_list(text: str) -> Subgraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("dim="):
        raise InvalidParameterError("edge list must start with a 'dim=<n>' header")
    dim = int(lines[0][4:])
    _check_dim(dim)
    pairs = []
    for ln in lines[1:]:
        if ln.startswith("cycle:"):
            continue
        left, sep, right = ln.partition("}-{")
        if not sep:
            raise InvalidParameterError(f"malformed edge line {ln!r}")
        pairs.append((parse_mask(left + "}", dim), parse_mask("{" + right, dim)))
    return Subgraph.from_pairs(dim, pairs)
