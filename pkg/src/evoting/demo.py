"""Deterministic known-answer scenario: 3 candidates, 5 ballots, (3,5) scheme.

Every intermediate value below was derived by hand from the (3,5) sharing of
the ballot sequence 1, 3, 1, 2, 1 over GF(9973) with the fixed blinding
coefficients given.  run_demo() replays the whole pipeline against them and
raises on the first mismatch, so it doubles as a self-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import commissioner
from .encoding import encode_vote
from .field import FieldElement
from .shamir import shares_from_coefficients

PRIME = 9973
BALLOTS = (1, 3, 1, 2, 1)  # candidate index per voter, in casting order
# blinding coefficients (degree 1 and 2) per ballot
COEFFS = ((46, 44), (21, 50), (13, 56), (63, 34), (95, 71))
CANDIDATES = (("Candidate1", "*"), ("Candidate2", "#"), ("Candidate3", "+"))

EXPECTED_SECRETS = (1, 256, 1, 16, 1)
EXPECTED_SHARES = (
    (91, 269, 535, 889, 1331),
    (327, 498, 769, 1140, 1611),
    (70, 251, 544, 949, 1466),
    (113, 278, 511, 812, 1181),
    (167, 475, 925, 1517, 2251),
)
EXPECTED_COLUMN_SUMS = (768, 1771, 3284, 5307, 7840)
EXPECTED_POLYNOMIAL = (275, 238, 255)
EXPECTED_COUNTS = (3, 1, 1)


@dataclass(frozen=True)
class DemoResult:
    shares: tuple[tuple[int, ...], ...]  # shares[i][j-1] = share of ballot i at center j
    column_sums: tuple[int, ...]
    tally: commissioner.TallyResult
    verify: commissioner.ConsistencyReport


def run_demo() -> DemoResult:
    config = commissioner.setup_election(CANDIDATES, m=8, k=3, n_cc=5,
                                         prime=PRIME, election_id="demo")
    n = config.params.n_cc

    all_shares: list[tuple[int, ...]] = []
    sums = [FieldElement(0, PRIME)] * n
    for i, (cand, blind) in enumerate(zip(BALLOTS, COEFFS)):
        secret = encode_vote(cand, config.layout, PRIME)
        if secret.value != EXPECTED_SECRETS[i]:
            raise AssertionError(
                f"ballot {i + 1}: encoded {secret.value}, expected {EXPECTED_SECRETS[i]}")
        coeffs = [secret] + [FieldElement(r, PRIME) for r in blind]
        shares = shares_from_coefficients(coeffs, n)
        row = tuple(s.y.value for s in shares)
        if row != EXPECTED_SHARES[i]:
            raise AssertionError(f"ballot {i + 1}: shares {row} != {EXPECTED_SHARES[i]}")
        all_shares.append(row)
        sums = [acc + s.y for acc, s in zip(sums, shares)]

    column_sums = tuple(s.value for s in sums)
    if column_sums != EXPECTED_COLUMN_SUMS:
        raise AssertionError(f"column sums {column_sums} != {EXPECTED_COLUMN_SUMS}")

    points = [(j + 1, column_sums[j], len(BALLOTS)) for j in range(n)]
    result = commissioner.tally(config, points[:3])
    if result.polynomial != EXPECTED_POLYNOMIAL:
        raise AssertionError(f"polynomial {result.polynomial} != {EXPECTED_POLYNOMIAL}")
    if result.counts != EXPECTED_COUNTS:
        raise AssertionError(f"counts {result.counts} != {EXPECTED_COUNTS}")

    report = commissioner.verify_consistency(config, points)
    if not report.unanimous:
        raise AssertionError("consistency check not unanimous")

    return DemoResult(shares=tuple(all_shares), column_sums=column_sums,
                      tally=result, verify=report)


def format_grid(result: DemoResult) -> str:
    """Fixed-width share grid; byte-stable for golden-file comparison."""
    n = len(result.column_sums)
    lines = ["Voter   " + " ".join(f"CC{j + 1}".ljust(9) for j in range(n)).rstrip()]
    for i, row in enumerate(result.shares):
        cells = " ".join(f"({j + 1},{y})".ljust(9) for j, y in enumerate(row))
        lines.append(f"Voter{i + 1}  {cells}".rstrip())
    sums = " ".join(str(s).ljust(9) for s in result.column_sums)
    lines.append(f"Sum     {sums}".rstrip())
    return "\n".join(lines) + "\n"
