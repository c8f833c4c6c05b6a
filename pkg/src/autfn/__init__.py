"""Exact computations in Aut(F_n), its finite quotients, and finite group
actions on triangulated spheres and acyclic complexes."""

__version__ = "0.1.0"

from .freegroup import Word, format_word, parse_word, reduce, substitute
from .aut import (
    Endo,
    Gen,
    compose,
    conjugate,
    commutator,
    equal,
    evaluate,
    identity,
    inverse,
    named,
    order,
    parse_endo,
    parse_gen_word,
    power,
)
from .linear import (
    IntMatrix,
    ModPMatrix,
    abelianize,
    det,
    elementary,
    elementary_abelian_rank,
    enumerate_group,
    is_simple,
    normal_closure,
    special_linear,
)
from .algebraverify import build_checks, build_sn, build_swn, build_t, build_wn, generate, run_relation_suite
from .graph import LabelledGraph, Symmetry, graph_induced, t_graph, t_rotation
from .simplicial import (
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivide,
    fixed_subcomplex,
    from_maximal,
    regularize,
)
from .homology import betti, sphere_dim
from .smith import (
    SpaceKind,
    borel_check,
    effective_bound,
    involution_pair_check,
    involution_pair_scan,
    no_free_rank2_check,
    rigidity_oracle,
    smith_fixed_check,
)

__all__ = [
    "__version__",
    "Word",
    "format_word",
    "parse_word",
    "reduce",
    "substitute",
    "Endo",
    "Gen",
    "compose",
    "conjugate",
    "commutator",
    "equal",
    "evaluate",
    "identity",
    "inverse",
    "named",
    "order",
    "parse_endo",
    "parse_gen_word",
    "power",
    "IntMatrix",
    "ModPMatrix",
    "abelianize",
    "det",
    "elementary",
    "elementary_abelian_rank",
    "enumerate_group",
    "is_simple",
    "normal_closure",
    "special_linear",
    "build_checks",
    "build_sn",
    "build_swn",
    "build_t",
    "build_wn",
    "generate",
    "run_relation_suite",
    "LabelledGraph",
    "Symmetry",
    "graph_induced",
    "t_graph",
    "t_rotation",
    "SimplicialComplex",
    "SimplicialMap",
    "barycentric_subdivide",
    "fixed_subcomplex",
    "from_maximal",
    "regularize",
    "betti",
    "sphere_dim",
    "SpaceKind",
    "borel_check",
    "effective_bound",
    "involution_pair_check",
    "involution_pair_scan",
    "no_free_rank2_check",
    "rigidity_oracle",
    "smith_fixed_check",
]
