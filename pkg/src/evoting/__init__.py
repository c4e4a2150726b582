"""Threshold-share e-voting: bit-block ballots, (k,n) sharing, homomorphic tally."""

from .commissioner import (
    ConsistencyReport,
    ElectionConfig,
    TallyResult,
    select_centers,
    setup_election,
    tally,
    verify_consistency,
)
from .encoding import BlockLayout, decode_tally, encode_vote, make_layout, validate_ballot
from .field import FieldElement, next_prime_above, poly_eval
from .shamir import Share, ThresholdParams, add_share_vectors, interpolate_poly, reconstruct, split

__all__ = [
    "BlockLayout",
    "ConsistencyReport",
    "ElectionConfig",
    "FieldElement",
    "Share",
    "TallyResult",
    "ThresholdParams",
    "add_share_vectors",
    "decode_tally",
    "encode_vote",
    "interpolate_poly",
    "make_layout",
    "next_prime_above",
    "poly_eval",
    "reconstruct",
    "select_centers",
    "setup_election",
    "split",
    "tally",
    "validate_ballot",
    "verify_consistency",
]
