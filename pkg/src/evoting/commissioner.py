"""Election commissioner: setup, center selection, tallying, verification.

Tallying interpolates the k partial sums reported by collection centers; by
linearity of the sharing the constant term is the sum of every encoded
ballot, and decoding its bit blocks yields per-candidate counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .encoding import BlockLayout, decode_tally, make_layout
from .errors import (
    CountMismatch,
    InsufficientShares,
    InvalidParams,
    NotEnoughCenters,
    PrimeTooSmall,
)
from .field import FieldElement, next_prime_above, poly_eval, validate_prime
from .shamir import Share, ThresholdParams, interpolate_poly, reconstruct

# At most this many k-subsets are checked during verification; complete
# coverage at desk scale, a bounded random sample beyond it.
DEFAULT_SUBSET_BUDGET = 252


@dataclass(frozen=True)
class ElectionConfig:
    election_id: str
    candidates: tuple[tuple[str, str], ...]  # (name, symbol)
    m: int
    params: ThresholdParams
    layout: BlockLayout
    prime: int

    @property
    def c(self) -> int:
        return len(self.candidates)


@dataclass(frozen=True)
class TallyResult:
    constant_term: int
    polynomial: tuple[int, ...]
    counts: tuple[int, ...]
    centers_used: tuple[int, ...]
    total_ballots: int
    winner_index: int  # 1-based, first of the tied leaders
    tied: bool


@dataclass(frozen=True)
class ConsistencyReport:
    subsets_checked: tuple[tuple[int, ...], ...]
    values: tuple[int, ...]  # constant term per subset
    unanimous: bool
    disagreeing_subsets: tuple[tuple[int, ...], ...]
    suspected_centers: tuple[int, ...]


def setup_election(candidates, m: int, k: int, n_cc: int,
                   prime: int | None = None,
                   election_id: str = "election") -> ElectionConfig:
    """Build a full election configuration with derived layout and prime."""
    cand = tuple((str(name), str(symbol)) for name, symbol in candidates)
    if not cand:
        raise InvalidParams("need at least one candidate")
    layout = make_layout(len(cand), m)
    params = ThresholdParams(k=k, n_cc=n_cc)
    floor = 1 << layout.total_width
    if prime is None:
        prime = next_prime_above(floor)
    else:
        validate_prime(prime)
        if prime <= floor:
            raise PrimeTooSmall(f"prime {prime} must exceed 2^{layout.total_width}")
    if n_cc >= prime:
        raise InvalidParams(f"n_cc={n_cc} must be < p={prime}")
    return ElectionConfig(election_id=election_id, candidates=cand, m=m,
                          params=params, layout=layout, prime=prime)


def select_centers(config: ElectionConfig, available: list[int], rng=None) -> list[int]:
    """Uniform k-subset of the available center ids, without replacement."""
    k = config.params.k
    if len(available) < k:
        raise NotEnoughCenters(f"need {k} centers, {len(available)} available")
    if rng is None:
        rng = random.SystemRandom()
    return sorted(rng.sample(list(available), k))


def _as_shares(config: ElectionConfig, points) -> list[Share]:
    return [Share(x, FieldElement(s, config.prime)) for x, s, _ in points]


def tally(config: ElectionConfig, partial_sums: list[tuple[int, int, int]]) -> TallyResult:
    """Tally from >= k (x, partial_sum, ballot_count) reports.

    All participating centers must agree on ballot_count: interpolating sums
    over different ballot sets produces silent garbage otherwise.
    """
    k = config.params.k
    if len(partial_sums) < k:
        raise InsufficientShares(f"need {k} partial sums, got {len(partial_sums)}")
    counts_seen = {cnt for _, _, cnt in partial_sums}
    if len(counts_seen) != 1:
        raise CountMismatch(f"centers disagree on ballot count: {sorted(counts_seen)}")
    total_ballots = counts_seen.pop()

    used = partial_sums[:k]
    shares = _as_shares(config, used)
    poly = interpolate_poly(shares)
    constant = poly[0]
    counts = decode_tally(constant, config.layout)

    best = max(counts)
    leaders = [j for j, cnt in enumerate(counts) if cnt == best]
    return TallyResult(
        constant_term=constant.value,
        polynomial=tuple(c.value for c in poly),
        counts=tuple(counts),
        centers_used=tuple(x for x, _, _ in used),
        total_ballots=total_ballots,
        winner_index=leaders[0] + 1,
        tied=len(leaders) > 1,
    )


def verify_consistency(config: ElectionConfig,
                       partial_sums: list[tuple[int, int, int]],
                       subset_budget: int | None = None,
                       rng=None) -> ConsistencyReport:
    """Reconstruct the constant term over many k-subsets and compare.

    Agreement over every k-subset is equivalent to all points lying on one
    degree-<=(k-1) polynomial; a single corrupted center shows up as exactly
    the subsets containing it disagreeing with the rest.
    """
    k = config.params.k
    shares = _as_shares(config, partial_sums)
    xs = [s.x for s in shares]
    all_subsets = list(combinations(range(len(shares)), k))
    budget = subset_budget
    if budget is None:
        budget = DEFAULT_SUBSET_BUDGET
    if len(all_subsets) > budget:
        if rng is None:
            rng = random.SystemRandom()
        all_subsets = rng.sample(all_subsets, budget)

    subsets: list[tuple[int, ...]] = []
    values: list[int] = []
    coverages: list[int] = []
    best_idx = 0
    def coverage(poly) -> int:
        return sum(1 for s in shares
                   if poly_eval(poly, FieldElement(s.x, config.prime)) == s.y)

    polys = []
    for i, idxs in enumerate(all_subsets):
        poly = interpolate_poly([shares[j] for j in idxs])
        polys.append(poly)
        values.append(poly[0].value)
        coverages.append(coverage(poly))
        subsets.append(tuple(xs[j] for j in idxs))
        if coverages[i] > coverages[best_idx]:
            best_idx = i

    # The polynomial explaining the most reported points defines the
    # consensus; points off it are the suspects.  With one corrupted center
    # and n_cc >= k+2 the honest polynomial covers n-1 points while any
    # subset touching the bad point covers only k, so the maximum is unique
    # and the bad center is isolated exactly.  At n_cc = k+1 every k-subset
    # ties, so corruption is detected (not unanimous) but not localized.
    best_cov = coverages[best_idx]
    best_polys = {tuple(c.value for c in poly)
                  for poly, cov in zip(polys, coverages) if cov == best_cov}
    suspected: tuple[int, ...] = ()
    if len(best_polys) == 1:
        best_poly = polys[best_idx]
        suspected = tuple(
            s.x for s in shares
            if poly_eval(best_poly, FieldElement(s.x, config.prime)) != s.y
        )
    consensus = values[best_idx]
    disagreeing = [s for s, v in zip(subsets, values) if v != consensus]

    return ConsistencyReport(
        subsets_checked=tuple(subsets),
        values=tuple(values),
        unanimous=best_cov == len(shares) and not disagreeing,
        disagreeing_subsets=tuple(disagreeing),
        suspected_centers=suspected,
    )


# --- setup-file serialization (key = value lines plus candidate lines) -----

def config_to_text(config: ElectionConfig) -> str:
    lines = [
        f"election_id = {config.election_id}",
        f"m = {config.m}",
        f"k = {config.params.k}",
        f"n_cc = {config.params.n_cc}",
        f"prime = {config.prime}",
        f"block_width = {config.layout.block_width}",
    ]
    for name, symbol in config.candidates:
        lines.append(f"candidate = {name} | {symbol}")
    return "\n".join(lines) + "\n"


def config_from_text(text: str) -> ElectionConfig:
    fields: dict[str, str] = {}
    candidates: list[tuple[str, str]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "candidate":
            name, _, symbol = value.partition("|")
            candidates.append((name.strip(), symbol.strip()))
        else:
            fields[key] = value
    config = setup_election(
        candidates,
        m=int(fields["m"]),
        k=int(fields["k"]),
        n_cc=int(fields["n_cc"]),
        prime=int(fields["prime"]) if "prime" in fields else None,
        election_id=fields.get("election_id", "election"),
    )
    if "block_width" in fields and int(fields["block_width"]) != config.layout.block_width:
        raise InvalidParams(
            f"declared block_width {fields['block_width']} does not match "
            f"derived width {config.layout.block_width}"
        )
    return config


def load_config(path: str | Path) -> ElectionConfig:
    return config_from_text(Path(path).read_text(encoding="utf-8"))


def save_config(config: ElectionConfig, path: str | Path) -> None:
    Path(path).write_text(config_to_text(config), encoding="utf-8")
