"""linvote: approval-committee voting rules, proportionality axioms, their
linear realizations, likelihood analysis, and exact learners."""

__version__ = "0.1.0"

from .core import (
    APPROVAL,
    RANKING,
    UTILITY,
    DomainError,
    Histogram,
    Profile,
    ProfileFormatError,
    Space,
    enumerate_committees,
    histogram,
    parse_profile,
    serialize_profile,
)
from .rules import (
    AbcsScoring,
    CsrScoring,
    GabcsScoring,
    OwaWeights,
    PositionalVector,
    ThieleVector,
    av_vector,
    borda_vector,
    cc_vector,
    committee_score,
    gabcs_winners,
    owa_winners,
    pav_vector,
    plurality_vector,
    rank_rule_winners,
    reverse_sequential_winners,
    sequential_winners,
    veto_vector,
)
from .axioms import (
    AXIOM_KINDS,
    ApproxCoreParams,
    ApproxGstParams,
    GstAxiom,
    approx_core_satisfies,
    approx_gst_satisfies,
    axiom_set,
    brute_force_satisfies,
    gst_satisfies,
)

__all__ = [name for name in dir() if not name.startswith("_")]
