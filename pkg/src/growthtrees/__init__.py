"""Growth trees by iterated edge subdivision and star insertion.

Exact geodesic-distance sums and mean first-passage times from closed
forms, verified against independent oracles: all-pairs BFS enumeration,
exact rational hitting-time solves, the Laplacian pseudoinverse, and
Monte Carlo random walks.
"""

from .errors import (
    DegenerateTree,
    EdgeListNotATree,
    FormulaNonIntegral,
    GrowthTreesError,
    IndexOutOfRange,
    InsufficientPoints,
    NoEdges,
    NonPositiveValue,
    ParameterOutOfRange,
    SingularMatrix,
    SizeLimitExceeded,
    SourceOutOfRange,
)
from .formulas import (
    CaseBreakdown,
    GeodesicReport,
    SeedSummary,
    geodesic_report,
    ntm_st,
    ntm_st_selfsimilar,
    path_st,
    path_st_enumeration,
    scaling_exponents,
    star_fractal_s1,
    star_fractal_s1_cases,
    star_fractal_st,
    subdivision_s1,
    subdivision_st,
    tgraph_st,
)
from .growth import (
    SUBDIVISION,
    GrowthOp,
    apply_once,
    grow,
    predict_counts,
    star_fractal,
)
from .mfpt import MfptReport, dimensions, fit_exponent, mfpt_closed, mfpt_report
from .tree import (
    Tree,
    average_geodesic,
    bfs_distances,
    diameter,
    from_edge_list,
    geodesic_sum,
    path_tree,
    random_labeled_tree,
    read_edge_list,
    single_edge,
    star_tree,
    validate,
    write_edge_list,
)
from .walks import (
    FptEstimate,
    WalkConfig,
    effective_resistance,
    hitting_time_exact,
    hitting_times_to_target,
    laplacian_pseudoinverse_fpt,
    mfpt_exact_solve,
    monte_carlo_fpt,
    monte_carlo_mfpt,
)

__version__ = "0.1.0"
