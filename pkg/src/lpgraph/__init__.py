"""LP graph basis, LP graph transform, graph correlation density field and smooth graphons."""

from ._backend import BACKEND
from .basis import LPBasis, build_basis, discrete_legendre, eval_S, t1
from .diagnostics import (
    Correlogram,
    TestResult,
    correlogram,
    lpinfor_test,
    sample_null,
    standardized_coefficient_distribution,
)
from .field import (
    DensityField,
    Grid,
    Selection,
    empirical_field,
    evaluate_grid,
    integrate_squared,
    reconstruct_field,
    select_components,
)
from .generators import GeneratorSpec, bipartite, erdos_renyi, expected_graph, sbm
from .graph import (
    DegenerateMarginalError,
    Graph,
    GraphError,
    JointPMF,
    Marginal,
    ParseError,
    joint_pmf,
    marginals,
    order_by_degree,
    parse_adjacency_csv,
    parse_edge_list,
    quantile,
)
from .graphon import (
    GraphonEstimate,
    SmoothedMarginal,
    block_means,
    estimate_graphon,
    evaluate_graphon_grid,
    marginal_lp_coefficients,
    smooth_marginal,
)
from .transform import LPMatrix, lp_coefficients, lp_transform, lpinfor

__version__ = "0.1.0"
