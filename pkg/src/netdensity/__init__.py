"""Asymptotic density and statistical convergence of nets over directed sets."""

from .directed import (
    DIV,
    DIV1,
    NAT,
    AxiomReport,
    DirectedSet,
    Divisibility,
    DivisibilityExcludingOne,
    Element,
    Grid,
    InvalidElementError,
    Naturals,
    Product,
    ResourceLimitError,
    TruncationPolicy,
    default_policy,
    enumerate_frontier,
    parse_family,
    up_set_within,
    validate_axioms,
)
from .density import (
    Analytic,
    DensityReport,
    ExistsFlag,
    SetPredicate,
    condition_star,
    density,
    liminf_estimate,
    limsup_estimate,
    product_density_check,
    ratio,
    union_complement_ratios,
)
from .expr import EvalError, ExprError, ExprSyntaxError, ExprTypeError, UnknownIdentifier, eval_expr, parse_expr, pretty
from .nets import (
    MaxNorm,
    Net,
    add_nets,
    cauchy_product_checks,
    constant_net,
    convergent_implies_cauchy,
    detect_limit,
    exceptional_set,
    map_net,
    pair_net,
    pairwise_cauchy_density,
    project_verdict,
    scalar_net,
    scale_nets,
    stat_cauchy,
    stat_converges_to,
    uc_map_cauchy,
    uniqueness_check,
    zip_net,
)
from .netspace import BalancedNeighborhood, classify, gauge, gauge_scaling_property, in_N_U

__version__ = "0.1.0"
