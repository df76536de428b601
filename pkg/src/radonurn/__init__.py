"""Approximate centerpoints by iterated Radon points, and their applications."""
from .bodies import Ball, ConvexPolygon, Ellipsoid, Nowhere, Polytope, Slab, parse_body
from .centernet import (
    CenterNetParams,
    UniversalCenterSet,
    build_weak_eps_net,
    deepest_candidate,
    universal_centerpoints,
    verify_center_net,
)
from .centerpoint import (
    CenterpointParams,
    CenterpointResult,
    SampleSizeWarning,
    approx_centerpoint,
    approx_centerpoint_raw,
    quality_target,
)
from .convex_opt import LowerBoundResult, lower_bound_min
from .datasets import generate
from .depth import DepthResult, is_alpha_centerpoint, tukey_depth, tukey_depth_exact, tukey_depth_sampled
from .errors import (
    BoundViolation,
    DegenerateInput,
    DimensionMismatch,
    DomainError,
    IterationBudgetExceeded,
    OracleContractViolation,
    RadonUrnError,
    SizeGuard,
    UnsupportedDimension,
)
from .funcnet import FuncNet, FuncNetParams, QueryTranscript, build_funcnet, query_funcnet
from .geometry import Halfspace, RadonPartition, halfspace_count, load_points, radon_point, save_points
from .urn import (
    UrnConfig,
    UrnTrace,
    WalkTrace,
    geometric_sum_tail,
    p_two_red,
    simulate_urn,
    simulate_walk,
    verify_tail_bound,
)

__version__ = "0.1.0"
