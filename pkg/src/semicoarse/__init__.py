"""Finite roofed semi-coarse spaces: constructions, discrete homotopy and
clique-complex homology."""

__version__ = "0.1.0"

from .core import (
    CementedSemiUniform,
    Graph,
    PointCloud,
    Space,
    VertexMap,
    bornologous_witness,
    coarse_completion,
    coarse_completion_steps,
    complete_space,
    components,
    constant_map,
    cycle_space,
    discrete_space,
    disjoint_union,
    from_distance_matrix,
    from_graph,
    from_graph_object,
    from_point_cloud,
    from_semi_uniform,
    identity_map,
    is_bornologous,
    is_coarse,
    new_space,
    product,
    quotient,
    quotient_onto,
    set_product_extension,
    subspace,
    to_graph,
    to_semi_uniform,
)
from .errors import BudgetExhausted, InputError, PreconditionError, SemiCoarseError
from .homology import (
    HomologyGroup,
    betti_numbers,
    build_complex,
    homology,
    induced_map,
    ordered_chain_oracle,
    prism_homotopy,
)
from .homotopy import (
    LEFT,
    RIGHT,
    Block,
    Cube,
    CubeMap,
    Homotopy,
    block_move,
    clamp,
    coarse_triviality_check,
    homotopic_search,
    inverse_path,
    lift_path,
    one_step_related,
    pi1_cyclic,
    plate_move,
    reachable_maps,
    star,
    unidirectional_reduce,
    verify_homotopy,
    winding,
)
from .snf import IntegerMatrix, invariant_factors, smith_normal_form
