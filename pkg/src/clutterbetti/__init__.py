"""Exact graded Betti numbers of circuit ideals of uniform clutters."""

from __future__ import annotations

from .betti import (
    BettiTable,
    betti_hochster,
    clear_cache,
    depth_of_quotient,
    has_linear_resolution,
    indeg,
    is_cohen_macaulay,
    projdim,
    regularity,
    render_diagram,
    verify_shape_bounds,
)
from .classify import (
    ClassificationReport,
    Decomposition,
    classify,
    decompose,
    is_almost_tree,
    is_chordal_graph,
    is_clique,
    is_minimal_to_linearity,
    is_obstruction,
    is_orientable,
    is_pseudo_manifold,
)
from .clutter import (
    Clutter,
    complement,
    induced,
    is_forest,
    is_tree,
    maximal_clutter,
    parse_clutter,
    peel_core,
    strongly_connected,
    submaximal_circuits,
)
from .complex import (
    SimplicialComplex,
    boundary_matrix,
    clique_complex,
    generated_complex,
    induced_subcomplex,
    reduced_homology_dims,
)
from .errors import (
    CapacityExceeded,
    ClutterBettiError,
    FixtureValidationFailed,
    InconsistentInput,
    InvalidClutter,
    InvalidGlue,
    NonIntegralBetti,
    NotPseudoManifold,
    ParseError,
    UnsupportedShape,
    ZeroIdeal,
)
from .formulas import cycle_betti, herzog_kuhl_variant, homology_difference_identity, minimal_resolution_formula
from .generators import (
    GlueSpec,
    almost_tree_ten,
    cross_polytope_boundary,
    cycle,
    generalized_chordal,
    glue,
    rp2_six,
    torus_seven,
    two_bipyramids,
)
from .linalg import GF2, GF3, QQ, ExactMatrix, FieldSpec, rank

__version__ = "0.1.0"
