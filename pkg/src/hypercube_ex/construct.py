"""Random edge colouring of Q_n and the deletion-method C_2l-free subgraph.

Randomness comes from numpy's PCG64 seeded through ``SeedSequence(seed,
spawn_key=(trial,))``, so each (seed, trial) pair owns an independent,
platform-stable stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cube import Subgraph, build_qn, edge_count_qn
from .cycles import census, enumerate_cycles, is_cycle_free
from .errors import Budget, InvalidParameterError, ResourceLimitError, as_budget


def rng_for(seed: int, trial: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def coloring_exponent(ell: int) -> Fraction:
    """Exponent ``a = (l-1)/(2l-1)`` in ``p = c n^-a``."""
    return Fraction(ell - 1, 2 * ell - 1)


@dataclass(frozen=True)
class ColoringParams:
    n: int
    ell: int
    c: float
    a: Fraction
    p: float
    num_colors: int
    seed: int

    @property
    def two_ell(self) -> int:
        return 2 * self.ell

    def as_dict(self) -> dict:
        return {
            "n": self.n, "ell": self.ell, "c": self.c, "a": str(self.a),
            "p": self.p, "num_colors": self.num_colors, "seed": self.seed,
        }


def make_params(n: int, ell: int, c: float, seed: int = 0, num_colors: int | None = None) -> ColoringParams:
    """``p = c n^-a`` and ``num_colors = max(1, floor(1/p + 1/2))`` unless given."""
    if n < 2:
        raise InvalidParameterError("n must be at least 2")
    if ell < 2:
        raise InvalidParameterError("ell must be at least 2")
    if not c > 0:
        raise InvalidParameterError("c must be positive")
    a = coloring_exponent(ell)
    p = c * n ** (-float(a))
    if p > 1:
        raise InvalidParameterError(f"p = {p:.4f} > 1; lower c for n={n}")
    if num_colors is None:
        num_colors = max(1, math.floor(1 / p + 0.5))
    elif num_colors < 1:
        raise InvalidParameterError("num_colors must be at least 1")
    return ColoringParams(n, ell, float(c), a, p, int(num_colors), int(seed))


def lower_bound_scale(n: int, ell: int) -> float:
    """``n^(1/2 + 1/(4l-2)) * 2^n``."""
    return n ** (0.5 + 1 / (4 * ell - 2)) * 2.0**n


@dataclass
class ConstructionResult:
    params: ColoringParams
    kept_edges: Subgraph
    largest_color: int
    edges_before_deletion: int
    deletions: int
    mono_cycles_found: int
    certified: bool

    @property
    def density_ratio(self) -> float:
        return len(self.kept_edges) / lower_bound_scale(self.params.n, self.params.ell)

    def as_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "largest_color": self.largest_color,
            "edges_before_deletion": self.edges_before_deletion,
            "mono_cycles_found": self.mono_cycles_found,
            "deletions": self.deletions,
            "kept_edges": len(self.kept_edges),
            "certified": self.certified,
            "density_ratio": self.density_ratio,
            "p_times_edges": self.params.p * edge_count_qn(self.params.n),
        }


def color_edges(params: ColoringParams, trial: int = 0) -> np.ndarray:
    """One colour per edge of Q_n, in canonical edge order."""
    rng = rng_for(params.seed, trial)
    return rng.integers(0, params.num_colors, size=edge_count_qn(params.n))


def run_construction(params: ColoringParams, budget: Budget | int | None = None) -> ConstructionResult:
    """Largest colour class, then delete the smallest edge of each surviving cycle.

    Cycles are scanned in canonical order; a cycle already broken by an
    earlier deletion is skipped, which is the same as re-enumerating after each
    deletion and always taking the first remaining cycle.
    """
    budget = as_budget(budget, f"construction n={params.n}, 2l={params.two_ell}")
    q = build_qn(params.n)
    colors = color_edges(params)
    counts = np.bincount(colors, minlength=params.num_colors)
    best = int(np.argmax(counts))
    cls = Subgraph(params.n, q.codes[colors == best])
    cycles = enumerate_cycles(cls, params.two_ell, budget=budget)
    removed: set[tuple[int, int]] = set()
    for w in cycles:
        es = w.edges()
        if removed.isdisjoint(es):
            removed.add(min(es))
    kept = cls.without(removed) if removed else cls
    free, _ = is_cycle_free(kept, params.two_ell, budget=budget)
    return ConstructionResult(
        params=params,
        kept_edges=kept,
        largest_color=best,
        edges_before_deletion=len(cls),
        deletions=len(removed),
        mono_cycles_found=len(cycles),
        certified=free,
    )


@dataclass(frozen=True)
class LLLReport:
    P_bound: float
    x: float
    x_mode: str
    D_bound: float
    condition: float
    satisfied: bool

    def as_dict(self) -> dict:
        return {
            "P_bound": self.P_bound, "x": self.x, "x_mode": self.x_mode,
            "D_bound": self.D_bound, "condition": self.condition, "satisfied": self.satisfied,
        }


def cycles_per_edge(n: int, two_ell: int, budget: Budget | int | None = None) -> tuple[float, str]:
    """Cycles through one edge of Q_n: exact from the census, else ``n^(l-1)`` (flagged)."""
    try:
        c = census(n, two_ell, budget)
    except ResourceLimitError:
        return float(n ** (two_ell // 2 - 1)), "estimate"
    return float(Fraction(c.total * two_ell, edge_count_qn(n))), "exact"


def lll_report(params: ColoringParams, budget: Budget | int | None = 2_000_000) -> LLLReport:
    """Local-lemma condition ``P (D + 1) e < 1`` with ``P = p^(2l-1)``, ``D = 2l x``.

    Only the truth value of the sufficient condition at these finite
    parameters is reported.
    """
    x, mode = cycles_per_edge(params.n, params.two_ell, budget)
    P = params.p ** (params.two_ell - 1)
    D = params.two_ell * x
    cond = P * (D + 1) * math.e
    return LLLReport(P, x, mode, D, cond, cond < 1)


@dataclass(frozen=True)
class MonoStats:
    trials: int
    mean: float
    stderr: float
    expected: float
    p_power_bound: float
    N: int

    @property
    def z(self) -> float:
        if self.stderr == 0:
            return 0.0 if self.mean == self.expected else math.inf
        return (self.mean - self.expected) / self.stderr

    def as_dict(self) -> dict:
        return {
            "trials": self.trials, "mean": self.mean, "stderr": self.stderr,
            "expected": self.expected, "p_power_bound": self.p_power_bound, "N": self.N, "z": self.z,
        }


def mono_cycle_stats(params: ColoringParams, trials: int, budget: Budget | int | None = None) -> MonoStats:
    """Observed monochromatic cycles per colouring against ``N * num_colors^-(2l-1)``."""
    if trials < 1:
        raise InvalidParameterError("trials must be at least 1")
    q = build_qn(params.n)
    index = {e: i for i, e in enumerate(q)}
    cycles = enumerate_cycles(q, params.two_ell, budget=budget)
    idx = np.array([[index[e] for e in w.edges()] for w in cycles], dtype=np.int64).reshape(len(cycles), -1)
    counts = np.empty(trials, dtype=np.int64)
    for t in range(trials):
        col = color_edges(params, t)
        if len(cycles):
            cc = col[idx]
            counts[t] = int(np.count_nonzero((cc == cc[:, :1]).all(axis=1)))
        else:
            counts[t] = 0
    N = len(cycles)
    mean = float(counts.mean())
    stderr = float(counts.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    expected = N * float(Fraction(1, params.num_colors ** (params.two_ell - 1)))
    return MonoStats(trials, mean, stderr, expected, N * params.p ** (params.two_ell - 1), N)
