"""Bit-block ballot encoding and tally decoding.

Each candidate owns a w-bit block inside one field element; casting a ballot
sets that block to 1.  Because 2^w > m (the voter bound), summing up to m
ballots never carries across block boundaries, so the blocks of the summed
value are exactly the per-candidate counts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BlockOverflow, CandidateOutOfRange, LayoutTooWide, SumOutOfRange
from .field import FieldElement

MAX_TOTAL_WIDTH = 62


@dataclass(frozen=True, slots=True)
class BlockLayout:
    candidate_count: int
    voter_bound: int
    block_width: int

    @property
    def total_width(self) -> int:
        return self.candidate_count * self.block_width


def make_layout(c: int, m: int) -> BlockLayout:
    """Derive the block layout for c candidates and at most m voters."""
    if c < 1 or m < 1:
        raise ValueError(f"need c >= 1 and m >= 1, got c={c}, m={m}")
    # w = 1 + ceil(log2 m) for m >= 2; one bit suffices for a single voter.
    w = 1 if m == 1 else 1 + (m - 1).bit_length()
    if c * w > MAX_TOTAL_WIDTH:
        raise LayoutTooWide(f"c*w = {c * w} exceeds {MAX_TOTAL_WIDTH} bits")
    return BlockLayout(candidate_count=c, voter_bound=m, block_width=w)


def encode_vote(candidate_index: int, layout: BlockLayout, p: int) -> FieldElement:
    """Encode a ballot for candidate j (1-based) as a field element."""
    if not 1 <= candidate_index <= layout.candidate_count:
        raise CandidateOutOfRange(
            f"candidate {candidate_index} not in [1, {layout.candidate_count}]"
        )
    return FieldElement(1 << ((candidate_index - 1) * layout.block_width), p)


def decode_tally(total: FieldElement, layout: BlockLayout) -> list[int]:
    """Split the summed encoding into per-candidate counts.

    Raises BlockOverflow when a block exceeds the voter bound, which can only
    happen with corrupted or invalid input shares.
    """
    v = total.value
    if v >= 1 << layout.total_width:
        raise SumOutOfRange(f"sum {v} needs more than {layout.total_width} bits")
    mask = (1 << layout.block_width) - 1
    counts = []
    for j in range(layout.candidate_count):
        count = (v >> (j * layout.block_width)) & mask
        if count > layout.voter_bound:
            raise BlockOverflow(
                f"candidate {j + 1} block holds {count} > voter bound {layout.voter_bound}"
            )
        counts.append(count)
    return counts


def validate_ballot(v: FieldElement, layout: BlockLayout) -> bool:
    """True iff exactly one block equals 1 and every other block is 0."""
    value = v.value
    if value >= 1 << layout.total_width:
        return False
    mask = (1 << layout.block_width) - 1
    ones = 0
    for j in range(layout.candidate_count):
        block = (value >> (j * layout.block_width)) & mask
        if block == 1:
            ones += 1
        elif block != 0:
            return False
    return ones == 1
