"""Polar and differential syzygies of algebras generated by degree-2 monomials.

The generators are read as the edges and loops of a graph.  The package
decides polarizability, normality and linear presentation from the graph and
checks every decision against exact linear algebra on fine-graded slices.
"""

from .graph_core import (
    IncohesiveError,
    InvariantError,
    LoopGraph,
    Monomial2,
    MonomialSet,
    ParseError,
    algebra_dimension,
    as_graph,
    edge_graph,
    graph_diameter,
    is_bipartite,
    is_cohesive,
    is_linearly_presented,
    parse_monomial_set,
    pinch,
)
from .walks import (
    Walk,
    WalkError,
    build_skeleton,
    classify_non_split,
    decompose,
    enumerate_closed_walks,
    enumerate_non_split_walks,
    is_decomposable,
    is_split,
    make_walk,
    skeleton_non_split,
    split_decomposition,
)
from .bowtie import (
    BowTie,
    enumerate_bowties,
    is_normal,
    is_polarizable,
    odd_cycle_condition,
)
from .syzygy import (
    generators_P,
    generators_Z,
    generic_rank,
    m_factor,
    p_binomial,
    t_vector,
    z_vector,
)
from .oracle import generation_check, linear_presentation_oracle, mu_Z, polarizable_oracle

__version__ = "0.1.0"
