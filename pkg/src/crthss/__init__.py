"""CRT-based hierarchical secret sharing over the integers.

Two schemes share one parameter machinery: disjunctive (some level's
cumulative threshold suffices) and conjunctive (every level's threshold is
required), both built from coprime modulus ladders, per-level lifts of the
secret, and public one-way-function masks. The analysis module measures, by
exact counting, how much an unauthorized set learns.
"""

from . import errors
from .analysis import (
    AdversaryView,
    EtaReport,
    CountGrouping,
    PosteriorReport,
    RateReport,
    adversary_view,
    bound_rate_at_least,
    enumerate_posterior,
    eta_single_layer,
    flat_view,
    information_rate,
    count_grouping,
    limit_ratio,
    rate_at_least,
    scan_posterior_counts,
    worst_case_unauthorized,
)
from .asmuth_bloom import AbDeal, ab_reconstruct, ab_split
from .chss import ChssDealResult, chss_deal, chss_is_authorized, chss_reconstruct
from .crt import Congruence, CrtSolution, crt_basis, crt_solve, ext_gcd, mod_inverse
from .dhss import (
    DealResult,
    PublicBundle,
    Share,
    dhss_authorized_level,
    dhss_deal,
    dhss_reconstruct,
)
from .oneway import OwfFamily, eval_owf
from .params import (
    CompactSequence,
    Hierarchy,
    SchemeParams,
    ValidationReport,
    check_ab_constraint,
    compact_width,
    generate_compact_sequence,
    integer_root,
    is_prime,
    validate_compact,
    validate_dealable,
    validate_hierarchy,
    validate_params,
    validate_sequence_structure,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
