"""graphbraid: discretized configuration spaces of finite graphs.

The package builds the cube complexes of n pairwise-separated tokens on a
multigraph (ordered or unordered), checks and repairs the subdivision
conditions under which those complexes model the full configuration space,
computes exact integer homology through Smith normal form, and constructs
the standard-vertex retraction combinatorics and explicit witness loops.
"""

from .graphs import (
    Graph,
    EssentialPath,
    Violation,
    SufficiencyReport,
    GraphFormatError,
    parse_graph,
    graph_text,
    graph_hash,
    essential_vertices,
    essential_path_decomposition,
    girth,
    girth_with_witness,
    check_sufficient,
    subdivide_edge,
    sufficiently_subdivide,
)
from .generators import (
    cycle_graph,
    path_graph,
    star_graph,
    complete_graph,
    complete_bipartite,
    p_graph,
    subdivided_y,
    h_tree,
)
from .intmatrix import SparseIntMatrix
from .complexes import (
    KIND_VERTEX,
    KIND_EDGE,
    CubeComplex,
    CellCapExceededError,
    SurfaceReport,
    build_complex,
    f_vector,
    maximal_cell_vector,
    euler_characteristic,
    boundary_matrix,
    component_count,
    surface_report,
    edgepath_chain,
)
from .homology import (
    InvariantFactors,
    HomologySummary,
    CycleClass,
    smith_normal_form,
    homology,
    cycle_homology_class,
)
from .retraction import (
    VertexPoint,
    EdgePoint,
    GraphPoint,
    VertexComponent,
    ArcComponent,
    Decomposition,
    Combinatorics,
    EdgePath,
    Case1Witness,
    OnDeltaSphereError,
    NoCombinatoricsError,
    NotSufficientlySubdividedError,
    NotSingleCrossingError,
    InvalidPathError,
    WitnessConstructionError,
    CycleTooShortError,
    decompose,
    combinatorics,
    standard_vertex,
    standard_vertex_of,
    standard_move,
    standardize_path,
    rotation_loop,
    case2_witness_loop,
    case1_dance_loop,
    point_from_json,
    point_to_json,
    configuration_from_json,
    configuration_to_json,
    edgepath_to_json,
    edgepath_from_json,
)

__version__ = "0.1.0"
