"""Rate-memory lower bounds, GF(2) scheme simulation, and entropy-inequality
checks for (K, L, N) multi-access coded caching networks."""

from .bounds import (
    BoundCurve,
    BoundPoint,
    DominanceReport,
    FAMILY_IDS,
    Rational,
    best_lower_bound,
    cutset_bound,
    default_memory_grid,
    hkd2_lemma3_bound,
    hkd_lemma2_bound,
    improved_bound,
    sweep_curve,
    uncoded_threshold_gap,
    uniform_grid,
    verify_dominance,
)
from .entropy import (
    JointPmf,
    check_conditional_window,
    check_sliding_window,
    marginal_entropy,
    run_conditional_window_batch,
    run_sliding_window_batch,
    window_entropy_sum,
)
from .params import MaccParams
from .schemes import (
    CacheContents,
    FileLibrary,
    Scheme,
    SubpacketizationError,
    Transmission,
    VerificationReport,
    access_window,
    all_demand_vectors,
    cyclic_index,
    scheme_appendix_b,
    scheme_full_access_corner_323,
    scheme_zero_memory,
    verify_scheme,
)
from .tradeoff import (
    ACHIEVABLE_POINTS_323,
    lower_convex_envelope,
    memory_share,
    optimal_tradeoff_323,
)

__version__ = "0.1.0"

__all__ = [
    "ACHIEVABLE_POINTS_323",
    "BoundCurve",
    "BoundPoint",
    "CacheContents",
    "DominanceReport",
    "FAMILY_IDS",
    "FileLibrary",
    "JointPmf",
    "MaccParams",
    "Rational",
    "Scheme",
    "SubpacketizationError",
    "Transmission",
    "VerificationReport",
    "access_window",
    "all_demand_vectors",
    "best_lower_bound",
    "check_conditional_window",
    "check_sliding_window",
    "cutset_bound",
    "cyclic_index",
    "default_memory_grid",
    "hkd2_lemma3_bound",
    "hkd_lemma2_bound",
    "improved_bound",
    "lower_convex_envelope",
    "marginal_entropy",
    "memory_share",
    "optimal_tradeoff_323",
    "run_conditional_window_batch",
    "run_sliding_window_batch",
    "scheme_appendix_b",
    "scheme_full_access_corner_323",
    "scheme_zero_memory",
    "sweep_curve",
    "uncoded_threshold_gap",
    "uniform_grid",
    "verify_dominance",
    "verify_scheme",
    "window_entropy_sum",
]
