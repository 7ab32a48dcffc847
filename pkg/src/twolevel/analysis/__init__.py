from .checks import (
    CriticalBid,
    DeviationGrid,
    ViolationKind,
    ViolationReport,
    check_critical_bid,
    check_equal_treatment,
    check_outcome_properties,
    check_truthful,
    critical_bid,
    probe_consumer_sovereignty,
    utility,
)
from .generators import (
    Mcg64,
    concentrated_outcome,
    gen_appendix_a,
    gen_lb_pair,
    gen_random,
    gen_unit_identical,
)
from .oracles import approximation_ratio, harmonic, opt_welfare, optimal_assignment, welfare

__all__ = [
    "CriticalBid", "DeviationGrid", "Mcg64", "ViolationKind", "ViolationReport",
    "approximation_ratio", "check_critical_bid", "check_equal_treatment",
    "check_outcome_properties", "check_truthful", "concentrated_outcome", "critical_bid",
    "gen_appendix_a", "gen_lb_pair", "gen_random", "gen_unit_identical", "harmonic",
    "opt_welfare", "optimal_assignment", "probe_consumer_sovereignty", "utility", "welfare",
]
