"""Minimum scan cover with angular costs: solvers, bounds, and oracles."""

from .bounds import (
    BoundReport,
    chromatic_lower_bound,
    compute_bounds,
    cut_cover_extract,
    cut_cover_violations,
    greedy_coloring,
    star_sequential_bound,
)
from .errors import ScanCoverError
from .generators import (
    gen_geodesic_star,
    gen_nae_gadget,
    gen_orthant_star,
    gen_random,
    gen_turan_1d,
    parse_formula,
)
from .line1d import (
    BitSchedule,
    bitschedule_to_schedule,
    solve_bipartite_1d,
    solve_complete_1d,
    steps_for_colors,
    vectors_from_coloring,
)
from .model import (
    Instance,
    angular_cost,
    as_abstract,
    check_metric,
    instance_hash,
    load_instance,
    make_instance,
    save_instance,
)
from .oracle import (
    discrete_step_oracle,
    exact_1d,
    exact_chromatic,
    exact_order_search,
    nae3sat_check,
)
from .planar2d import (
    bipartite_rotation,
    complete_recursive_split,
    detect_separating_line,
    kcolor_decompose,
    lambda_cone,
    sector_approx,
)
from .schedule import (
    ScanSchedule,
    Trajectory,
    load_schedule,
    save_schedule,
    schedule_from_order,
    trajectory_from_schedule,
    validate_schedule,
    validate_trajectory,
)
from .trees import (
    CyclicOrder,
    arboricity_approx,
    cyclic_order,
    forest_decompose,
    star_order,
    tree_approx,
)

__version__ = "0.1.0"

__all__ = [
    "BitSchedule",
    "BoundReport",
    "CyclicOrder",
    "Instance",
    "ScanCoverError",
    "ScanSchedule",
    "Trajectory",
    "angular_cost",
    "arboricity_approx",
    "as_abstract",
    "bipartite_rotation",
    "bitschedule_to_schedule",
    "check_metric",
    "chromatic_lower_bound",
    "complete_recursive_split",
    "compute_bounds",
    "cut_cover_extract",
    "cut_cover_violations",
    "cyclic_order",
    "detect_separating_line",
    "discrete_step_oracle",
    "exact_1d",
    "exact_chromatic",
    "exact_order_search",
    "forest_decompose",
    "gen_geodesic_star",
    "gen_nae_gadget",
    "gen_orthant_star",
    "gen_random",
    "gen_turan_1d",
    "greedy_coloring",
    "instance_hash",
    "kcolor_decompose",
    "lambda_cone",
    "load_instance",
    "load_schedule",
    "make_instance",
    "nae3sat_check",
    "parse_formula",
    "save_instance",
    "save_schedule",
    "schedule_from_order",
    "sector_approx",
    "solve_bipartite_1d",
    "solve_complete_1d",
    "star_order",
    "star_sequential_bound",
    "steps_for_colors",
    "trajectory_from_schedule",
    "tree_approx",
    "validate_schedule",
    "validate_trajectory",
    "vectors_from_coloring",
]
