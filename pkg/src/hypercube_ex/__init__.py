"""Extremal even-cycle problems in the hypercube: constructions, counts and oracles."""

__version__ = "0.1.0"

from .bounds import theorem1_exponent, theorem1_pipeline, literature_exponents, lower_bound_exponent
from .construct import lll_report, make_params, mono_cycle_stats, run_construction
from .cube import CubeEdge, Subgraph, Vertex, are_adjacent, build_qn, layer
from .cycles import CycleWitness, census, check_counting_bound, enumerate_cycles, is_cycle_free
from .errors import InvalidParameterError, ResourceLimitError, VerificationError
from .exact import ex_cube, ex_graph
from .hypergraph import (
    SimpleGraph, ThreeGraph, TwoLiftWitness, find_embedding, find_largest_k2q, lemma4_pipeline,
    link, star_count, two_lift,
)
from .partite import (
    GroundLabels, Representation, build_representation, check_kpartite_representation,
    verify_representation,
)
