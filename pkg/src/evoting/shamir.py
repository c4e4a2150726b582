"""(k, n) threshold sharing with pointwise share addition.

Shares are evaluations of a random degree-(k-1) polynomial at x = 1..n.
Adding share vectors position-wise shares the sum of the secrets, which is
what lets collection centers tally without ever seeing a ballot.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass

from .errors import (
    DuplicateX,
    InsufficientShares,
    InvalidParams,
    MismatchedX,
    ShapeMismatch,
)
from .field import FieldElement, poly_eval


@dataclass(frozen=True, slots=True)
class ThresholdParams:
    k: int
    n_cc: int

    def __post_init__(self):
        # k = 1 would let a single center read every ballot.
        if self.k < 2 or self.n_cc < self.k:
            raise InvalidParams(f"need 2 <= k <= n_cc, got k={self.k}, n_cc={self.n_cc}")


@dataclass(frozen=True, slots=True)
class Share:
    x: int
    y: FieldElement

    def __post_init__(self):
        if self.x < 1:
            raise InvalidParams("share x must be >= 1 (x=0 would expose the secret)")


def shares_from_coefficients(coeffs: list[FieldElement], n_cc: int) -> list[Share]:
    """Evaluate a fixed polynomial at x = 1..n_cc.

    Only for tests and the deterministic worked example; real ballots must go
    through split() so the blinding coefficients are fresh and uniform.
    """
    p = coeffs[0].p
    return [Share(j, poly_eval(coeffs, FieldElement(j, p))) for j in range(1, n_cc + 1)]


def split(secret: FieldElement, params: ThresholdParams, rng=None) -> list[Share]:
    """Share a secret: constant term = secret, k-1 uniform random coefficients."""
    if params.n_cc >= secret.p:
        raise InvalidParams(f"n_cc={params.n_cc} must be < p={secret.p}")
    if rng is None:
        rng = secrets.SystemRandom()
    coeffs = [secret] + [
        FieldElement(rng.randrange(secret.p), secret.p) for _ in range(params.k - 1)
    ]
    return shares_from_coefficients(coeffs, params.n_cc)


def _check_distinct(shares: list[Share]) -> None:
    xs = [s.x for s in shares]
    if len(set(xs)) != len(xs):
        raise DuplicateX(f"duplicate x in {xs}")


def reconstruct(shares: list[Share], k: int) -> FieldElement:
    """Constant term via Lagrange interpolation at 0, using exactly the first
    k shares given (subset choice stays with the caller so that disagreement
    between subsets is detectable, never averaged away)."""
    if k < 2:
        raise InsufficientShares("threshold must be >= 2")
    if len(shares) < k:
        raise InsufficientShares(f"need {k} shares, got {len(shares)}")
    used = shares[:k]
    _check_distinct(used)
    p = used[0].y.p
    total = FieldElement(0, p)
    for i, si in enumerate(used):
        num = FieldElement(1, p)
        den = FieldElement(1, p)
        for j, sj in enumerate(used):
            if i == j:
                continue
            num = num * FieldElement(-sj.x, p)
            den = den * FieldElement(si.x - sj.x, p)
        total = total + si.y * num * den.inv()
    return total


def interpolate_poly(shares: list[Share]) -> list[FieldElement]:
    """Full coefficient vector of the unique degree-<=(k-1) polynomial through
    the given k points (Lagrange basis, expanded)."""
    _check_distinct(shares)
    p = shares[0].y.p
    k = len(shares)
    coeffs = [FieldElement(0, p)] * k
    for i, si in enumerate(shares):
        # basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        basis = [FieldElement(1, p)]
        den = FieldElement(1, p)
        for j, sj in enumerate(shares):
            if i == j:
                continue
            # multiply basis by (x - x_j)
            nxt = [FieldElement(0, p)] * (len(basis) + 1)
            for t, c in enumerate(basis):
                nxt[t + 1] = nxt[t + 1] + c
                nxt[t] = nxt[t] + c * FieldElement(-sj.x, p)
            basis = nxt
            den = den * FieldElement(si.x - sj.x, p)
        scale = si.y * den.inv()
        for t in range(len(basis)):
            coeffs[t] = coeffs[t] + basis[t] * scale
    return coeffs


def add_share_vectors(a: list[Share], b: list[Share]) -> list[Share]:
    """Position-wise share addition: the additive homomorphism."""
    if len(a) != len(b):
        raise ShapeMismatch(f"lengths {len(a)} vs {len(b)}")
    out = []
    for sa, sb in zip(a, b):
        if sa.x != sb.x:
            raise MismatchedX(f"x={sa.x} vs x={sb.x}")
        out.append(Share(sa.x, sa.y + sb.y))
    return out
