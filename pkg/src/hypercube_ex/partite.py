"""Layer 2/3 embedding of C_2l (odd l >= 7) and its 3-partite representation.

With ``l = 2k + 1`` the layer-3 vertices of the cycle are, in order,

    a x1 y1, a x2 y1, a x2 y2, ..., a x_{k-1} y_{k-2}, a x_{k-1} y_{k-1},
    b x_{k-1} y_{k-1}, b x_{k-1} y0, b x1 y0, b x1 y1

(2k - 3 triples through ``a`` and 4 through ``b``).  The layer-2 vertices are
the intersections of cyclically consecutive triples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cube import MAX_DIM, Subgraph, mask_of, subset_of
from .cycles import CycleWitness, canonical_form, enumerate_cycles
from .errors import InvalidParameterError, VerificationError
from .hypergraph import SimpleGraph, ThreeGraph, k_partition, link, two_lift

Triple = tuple[int, int, int]
Pair = tuple[int, int]


@dataclass(frozen=True)
class GroundLabels:
    a: int
    b: int
    xs: tuple[int, ...]  # x_1 .. x_{k-1}
    ys: tuple[int, ...]  # y_0 .. y_{k-1}

    @property
    def k(self) -> int:
        return len(self.ys)

    def all(self) -> tuple[int, ...]:
        return (self.a, self.b, *self.xs, *self.ys)

    def x(self, i: int) -> int:
        return self.xs[i - 1]

    def y(self, j: int) -> int:
        return self.ys[j]

    @classmethod
    def default(cls, ell: int) -> "GroundLabels":
        k = (ell - 1) // 2
        return cls(1, 2, tuple(2 + i for i in range(1, k)), tuple(k + 2 + j for j in range(k)))

    def relabel(self, mapping: dict[int, int]) -> "GroundLabels":
        return GroundLabels(
            mapping[self.a], mapping[self.b],
            tuple(mapping[x] for x in self.xs), tuple(mapping[y] for y in self.ys),
        )

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "xs": list(self.xs), "ys": list(self.ys)}


def _check_ell(ell: int) -> int:
    if not isinstance(ell, int) or ell < 7 or ell % 2 == 0:
        raise InvalidParameterError(f"ell must be an odd integer >= 7, got {ell!r}")
    return (ell - 1) // 2


def _triple(*xs: int) -> Triple:
    return tuple(sorted(xs))  # type: ignore[return-value]


def a_sequence(labels: GroundLabels) -> list[Triple]:
    k = labels.k
    a, b, x, y = labels.a, labels.b, labels.x, labels.y
    seq = []
    for i in range(1, k):
        seq.append(_triple(a, x(i), y(i)))
        if i < k - 1:
            seq.append(_triple(a, x(i + 1), y(i)))
    seq += [
        _triple(b, x(k - 1), y(k - 1)),
        _triple(b, x(k - 1), y(0)),
        _triple(b, x(1), y(0)),
        _triple(b, x(1), y(1)),
    ]
    return seq


def consecutive_intersections(a_seq: list[Triple]) -> list[Pair]:
    m = len(a_seq)
    return [tuple(sorted(set(a_seq[i]) & set(a_seq[(i + 1) % m]))) for i in range(m)]


@dataclass(frozen=True)
class Representation:
    ell: int
    n: int
    labels: GroundLabels
    a_seq: tuple[Triple, ...]
    b_seq: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return (self.ell - 1) // 2

    @property
    def hgraph(self) -> ThreeGraph:
        return ThreeGraph(self.a_seq)

    def cycle_masks(self) -> tuple[int, ...]:
        out = []
        for t, p in zip(self.a_seq, self.b_seq):
            out += [mask_of(t, self.n), mask_of(p, self.n)]
        return tuple(out)

    def as_dict(self) -> dict:
        return {
            "ell": self.ell,
            "n": self.n,
            "labels": self.labels.as_dict(),
            "a_seq": [list(t) for t in self.a_seq],
            "b_seq": [list(p) for p in self.b_seq],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Representation":
        try:
            lab = d["labels"]
            labels = GroundLabels(int(lab["a"]), int(lab["b"]), tuple(lab["xs"]), tuple(lab["ys"]))
            return cls(
                int(d["ell"]), int(d["n"]), labels,
                tuple(tuple(t) for t in d["a_seq"]), tuple(tuple(p) for p in d["b_seq"]),
            )
        except (KeyError, TypeError) as exc:
            raise InvalidParameterError(f"malformed representation: {exc}") from exc


def build_representation(ell: int, n: int | None = None, labels: GroundLabels | None = None) -> Representation:
    k = _check_ell(ell)
    n = ell if n is None else n
    if n < ell:
        raise InvalidParameterError(f"n={n} is smaller than ell={ell}")
    if n > MAX_DIM:
        raise InvalidParameterError(f"n={n} exceeds the cube cap {MAX_DIM}")
    labels = GroundLabels.default(ell) if labels is None else labels
    ground = labels.all()
    if len(labels.xs) != k - 1 or len(labels.ys) != k:
        raise InvalidParameterError(f"labels need {k - 1} x's and {k} y's for ell={ell}")
    if len(set(ground)) != len(ground):
        raise InvalidParameterError("labels are not injective")
    if not all(1 <= v <= n for v in ground):
        raise InvalidParameterError(f"labels must lie in 1..{n}")
    a_seq = a_sequence(labels)
    return Representation(ell, n, labels, tuple(a_seq), tuple(consecutive_intersections(a_seq)))


# ---------------------------------------------------------------------------
# verification


def _is_path(g: SimpleGraph) -> bool:
    if not g.edges:
        return False
    deg = g.degrees()
    if max(deg.values()) > 2 or len(g.edges) != len(g.vertices) - 1:
        return False
    return _connected(g)


def _connected(g: SimpleGraph) -> bool:
    nb = g.neighbours()
    if not nb:
        return True
    start = min(nb)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in nb[v] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == len(nb)


def cycle_with_pendant(g: SimpleGraph) -> tuple[int, int] | None:
    """``(cycle_length, pendant_edges)`` if ``g`` is a connected unicyclic graph, else None."""
    if not _connected(g) or len(g.edges) != len(g.vertices):
        return None
    edges = set(g.edges)
    stripped = 0
    while True:
        deg = SimpleGraph(edges).degrees()
        leaves = [v for v, d in deg.items() if d == 1]
        if not leaves:
            break
        edges = {e for e in edges if leaves[0] not in e}
        stripped += 1
    core = SimpleGraph(edges)
    if any(d != 2 for d in core.degrees().values()):
        return None
    return len(core.edges), stripped


@dataclass
class ClauseResult:
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"clause": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    ell: int
    clauses: list[ClauseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    @property
    def first_failure(self) -> ClauseResult | None:
        return next((c for c in self.clauses if not c.passed), None)

    def as_dict(self) -> dict:
        return {"ell": self.ell, "passed": self.passed, "clauses": [c.as_dict() for c in self.clauses]}


def _clause_cycle(rep: Representation) -> ClauseResult:
    name = "i-cycle"
    if len(rep.a_seq) != rep.ell or len(rep.b_seq) != rep.ell:
        return ClauseResult(name, False, "sequence lengths differ from ell")
    for i, (t, p) in enumerate(zip(rep.a_seq, rep.b_seq)):
        nxt = rep.a_seq[(i + 1) % rep.ell]
        if len(set(t)) != 3 or len(set(p)) != 2:
            return ClauseResult(name, False, f"position {i}: wrong vertex sizes")
        if not (set(p) <= set(t) and set(p) <= set(nxt)):
            return ClauseResult(name, False, f"position {i}: {p} not inside {t} and {nxt}")
    try:
        masks = rep.cycle_masks()
        w = CycleWitness(masks, rep.n)
        w.validate()
    except InvalidParameterError as exc:
        return ClauseResult(name, False, str(exc))
    layers = {m.bit_count() for m in masks}
    if layers != {2, 3}:
        return ClauseResult(name, False, f"cycle visits layers {sorted(layers)}")
    sub = Subgraph.from_pairs(rep.n, w.edges())
    found = enumerate_cycles(sub, 2 * rep.ell)
    if len(found) != 1 or found[0].vertices != canonical_form(masks):
        return ClauseResult(name, False, "cycle engine does not certify the cycle")
    return ClauseResult(name, True, f"{2 * rep.ell}-cycle in layers 2 and 3, {len(sub)} edges")


def _clause_partite(rep: Representation) -> ClauseResult:
    name = "ii-three-partite"
    lab = rep.labels
    parts = [frozenset((lab.a, lab.b)), frozenset(lab.xs), frozenset(lab.ys)]
    for t in rep.a_seq:
        if sorted(sum(1 for v in t if v in p) for p in parts) != [1, 1, 1]:
            return ClauseResult(name, False, f"edge {t} does not meet every part once")
    if k_partition(rep.a_seq, 3) is None:
        return ClauseResult(name, False, "no 3-partition exists")
    return ClauseResult(name, True, "parts {a,b}, {x_i}, {y_j}")


def _links(rep: Representation) -> tuple[SimpleGraph, SimpleGraph]:
    h = rep.hgraph
    if rep.labels.a not in h.vertices or rep.labels.b not in h.vertices:
        raise VerificationError("iii-link-paths", "apex missing from the 3-graph")
    return link(h, rep.labels.a), link(h, rep.labels.b)


def _clause_paths(rep: Representation) -> ClauseResult:
    name = "iii-link-paths"
    la, lb = _links(rep)
    want = 2 * rep.k - 3
    if not (_is_path(la) and len(la.edges) == want):
        return ClauseResult(name, False, f"L(a) is not a path with {want} edges")
    if not (_is_path(lb) and len(lb.edges) == 4):
        return ClauseResult(name, False, "L(b) is not a path with 4 edges")
    return ClauseResult(name, True, f"L(a) path with {want} edges, L(b) path with 4 edges")


def _clause_shared(rep: Representation) -> ClauseResult:
    name = "iv-shared"
    la, lb = _links(rep)
    lab = rep.labels
    k = rep.k
    ends = {lab.x(1), lab.y(1), lab.x(k - 1), lab.y(k - 1)}
    shared_edges = {tuple(sorted((lab.x(1), lab.y(1)))), tuple(sorted((lab.x(k - 1), lab.y(k - 1))))}
    if set(la.vertices) & set(lb.vertices) != ends:
        return ClauseResult(name, False, "links share the wrong vertices")
    if set(la.edges) & set(lb.edges) != shared_edges:
        return ClauseResult(name, False, "links share the wrong edges")
    return ClauseResult(name, True, "shared vertices x1,y1,x_{k-1},y_{k-1}; edges x1y1, x_{k-1}y_{k-1}")


def _union(rep: Representation) -> SimpleGraph:
    la, lb = _links(rep)
    return SimpleGraph(la.edges | lb.edges)


def _clause_union(rep: Representation) -> ClauseResult:
    name = "v-cycle-plus-pendant"
    shape = cycle_with_pendant(_union(rep))
    if shape != (rep.ell - 3, 1):
        return ClauseResult(name, False, f"union has shape {shape}, expected ({rep.ell - 3}, 1)")
    return ClauseResult(name, True, f"C_{rep.ell - 3} plus one pendant edge")


def _clause_lift(rep: Representation) -> ClauseResult:
    name = "vi-in-two-lift"
    lifted = two_lift(_union(rep), rep.labels.a, rep.labels.b)
    missing = rep.hgraph.edges - lifted.edges
    if missing:
        return ClauseResult(name, False, f"edges outside the two-lift: {sorted(missing)}")
    return ClauseResult(
        name, True, f"{len(rep.hgraph.edges)} of {len(lifted.edges)} two-lift edges used"
    )


CLAUSES = (
    ("i-cycle", _clause_cycle),
    ("ii-three-partite", _clause_partite),
    ("iii-link-paths", _clause_paths),
    ("iv-shared", _clause_shared),
    ("v-cycle-plus-pendant", _clause_union),
    ("vi-in-two-lift", _clause_lift),
)


def verify_representation(rep: Representation, raise_on_failure: bool = True) -> VerificationReport:
    """Run all six checks in order; optionally raise naming the first failure."""
    report = VerificationReport(rep.ell)
    for name, clause in CLAUSES:
        try:
            report.clauses.append(clause(rep))
        except (VerificationError, InvalidParameterError) as exc:
            report.clauses.append(ClauseResult(name, False, str(exc)))
    bad = report.first_failure
    if bad is not None and raise_on_failure:
        err = VerificationError(bad.name, bad.detail)
        err.report = report
        raise err
    return report


# ---------------------------------------------------------------------------
# general k-partite representation check


@dataclass
class KPartiteResult:
    ok: bool
    k: int
    edges: list[tuple[int, ...]]
    parts: list[list[int]] | None
    reason: str = ""

    def as_dict(self) -> dict:
        return {"ok": self.ok, "k": self.k, "edges": [list(e) for e in self.edges],
                "parts": self.parts, "reason": self.reason}


def check_kpartite_representation(h: Subgraph, k: int) -> KPartiteResult:
    """The k-graph formed by the layer-k vertices of ``h`` and a k-partition of its vertices.

    The partition covers the vertices of the k-graph (elements of [n] used by
    some layer-k vertex); the search is exhaustive.
    """
    if k < 2:
        raise InvalidParameterError("k must be at least 2")
    verts = h.vertices()
    off = [v for v in verts if v.bit_count() not in (k - 1, k)]
    if off:
        raise InvalidParameterError(
            f"{len(off)} vertices outside layers {k - 1} and {k}, e.g. {subset_of(off[0])}"
        )
    edges = sorted(subset_of(v) for v in verts if v.bit_count() == k)
    if not edges:
        return KPartiteResult(False, k, [], None, "no vertices in layer k")
    parts = k_partition(edges, k)
    if parts is None:
        return KPartiteResult(False, k, edges, None, "exhausted every partition: none meets each edge once")
    return KPartiteResult(True, k, edges, [sorted(p) for p in parts])


def relabelled(rep: Representation, mapping: dict[int, int], n: int) -> Representation:
    return build_representation(rep.ell, n, rep.labels.relabel(mapping))


def cube_subgraph(rep: Representation) -> Subgraph:
    return Subgraph.from_pairs(rep.n, CycleWitness(rep.cycle_masks(), rep.n).edges())
