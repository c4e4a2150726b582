import random
from itertools import combinations

import pytest

from evoting.errors import (
    DuplicateX,
    InsufficientShares,
    InvalidParams,
    MismatchedX,
    ShapeMismatch,
)
from evoting.field import FieldElement
from evoting.shamir import (
    Share,
    ThresholdParams,
    add_share_vectors,
    interpolate_poly,
    reconstruct,
    shares_from_coefficients,
    split,
)

P = 9973


def fe(v, p=P):
    return FieldElement(v, p)


def shares(points, p=P):
    return [Share(x, fe(y, p)) for x, y in points]


# coefficient rows recovered by interpolating the published share table
TABLE_COEFFS = [
    (1, 46, 44),
    (256, 21, 50),
    (1, 13, 56),
    (16, 63, 34),
    (1, 95, 71),
]
TABLE_SHARES = [
    [(1, 91), (2, 269), (3, 535), (4, 889), (5, 1331)],
    [(1, 327), (2, 498), (3, 769), (4, 1140), (5, 1611)],
    [(1, 70), (2, 251), (3, 544), (4, 949), (5, 1466)],
    [(1, 113), (2, 278), (3, 511), (4, 812), (5, 1181)],
    [(1, 167), (2, 475), (3, 925), (4, 1517), (5, 2251)],
]


class TestSplit:
    @pytest.mark.parametrize("row", range(5))
    def test_published_rows(self, row):
        got = shares_from_coefficients([fe(c) for c in TABLE_COEFFS[row]], 5)
        assert [(s.x, s.y.value) for s in got] == TABLE_SHARES[row]

    def test_constant_polynomial(self):
        got = shares_from_coefficients([fe(42), fe(0), fe(0)], 5)
        assert all(s.y.value == 42 for s in got)

    def test_split_structure(self):
        params = ThresholdParams(k=3, n_cc=5)
        got = split(fe(17), params, rng=random.Random(1))
        assert [s.x for s in got] == [1, 2, 3, 4, 5]
        assert reconstruct(got, 3).value == 17

    def test_invalid_params(self):
        with pytest.raises(InvalidParams):
            ThresholdParams(k=1, n_cc=5)
        with pytest.raises(InvalidParams):
            ThresholdParams(k=4, n_cc=3)
        with pytest.raises(InvalidParams):
            split(FieldElement(1, 7), ThresholdParams(k=2, n_cc=7), rng=random.Random(1))

    def test_share_x_positive(self):
        with pytest.raises(InvalidParams):
            Share(0, fe(5))


class TestReconstruct:
    def test_published_row(self):
        assert reconstruct(shares([(1, 91), (2, 269), (3, 535)]), 3).value == 1

    def test_threshold_policy(self):
        with pytest.raises(InsufficientShares):
            reconstruct(shares([(1, 5)]), 1)

    def test_not_enough_shares(self):
        with pytest.raises(InsufficientShares):
            reconstruct(shares([(1, 91), (2, 269)]), 3)

    def test_duplicate_x(self):
        with pytest.raises(DuplicateX):
            reconstruct(shares([(1, 91), (1, 92), (3, 535)]), 3)

    def test_sum_polynomial_alternate_subset(self):
        # points from evaluating 275 + 238x + 255x^2 at x = 1, 2, 4
        pts = [(x, (275 + 238 * x + 255 * x * x) % P) for x in (1, 2, 4)]
        assert pts == [(1, 768), (2, 1771), (4, 5307)]
        assert reconstruct(shares(pts), 3).value == 275

    def test_uses_exactly_first_k(self):
        # extra (possibly corrupt) shares beyond the first k must be ignored
        pts = shares([(1, 768), (2, 1771), (3, 3284), (4, 9999)])
        assert reconstruct(pts, 3).value == 275


class TestInterpolatePoly:
    def test_column_sum_points(self):
        pts = shares([(1, 768), (2, 1771), (3, 3284)])
        assert [c.value for c in interpolate_poly(pts)] == [275, 238, 255]

    def test_single_point(self):
        assert [c.value for c in interpolate_poly(shares([(1, 99)]))] == [99]

    def test_published_row(self):
        pts = shares([(1, 91), (2, 269), (3, 535)])
        assert [c.value for c in interpolate_poly(pts)] == [1, 46, 44]

    def test_roundtrip_through_eval(self):
        from evoting.field import poly_eval

        rng = random.Random(9)
        for _ in range(50):
            k = rng.randrange(2, 6)
            coeffs = [fe(rng.randrange(P)) for _ in range(k)]
            pts = shares_from_coefficients(coeffs, k + 2)
            got = interpolate_poly(pts[:k])
            assert [c.value for c in got] == [c.value for c in coeffs]
            for s in pts:
                assert poly_eval(got, fe(s.x)).value == s.y.value


class TestAddShareVectors:
    def test_published_rows_added(self):
        a = shares(TABLE_SHARES[0])
        b = shares(TABLE_SHARES[1])
        summed = add_share_vectors(a, b)
        assert (summed[0].x, summed[0].y.value) == (1, 418)

    def test_identity(self):
        a = shares(TABLE_SHARES[3])
        zero = shares([(x, 0) for x, _ in TABLE_SHARES[3]])
        assert add_share_vectors(a, zero) == a

    def test_all_rows_sum_to_column_sums(self):
        acc = shares(TABLE_SHARES[0])
        for row in TABLE_SHARES[1:]:
            acc = add_share_vectors(acc, shares(row))
        assert [(s.x, s.y.value) for s in acc] == [
            (1, 768), (2, 1771), (3, 3284), (4, 5307), (5, 7840)
        ]
        assert reconstruct(acc, 3).value == 275

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            add_share_vectors(shares([(1, 1)]), shares([(1, 1), (2, 2)]))

    def test_mismatched_x(self):
        with pytest.raises(MismatchedX):
            add_share_vectors(shares([(1, 1), (2, 2)]), shares([(1, 1), (3, 3)]))


class TestProperties:
    def test_any_k_subset_reconstructs(self):
        rng = random.Random(21)
        for _ in range(200):
            n = rng.randrange(2, 8)
            k = rng.randrange(2, n + 1)
            secret = fe(rng.randrange(P))
            all_shares = split(secret, ThresholdParams(k=k, n_cc=n), rng=rng)
            for subset in combinations(all_shares, k):
                assert reconstruct(list(subset), k) == secret

    def test_homomorphism(self):
        rng = random.Random(22)
        params = ThresholdParams(k=3, n_cc=5)
        for _ in range(100):
            batch = [fe(rng.randrange(P)) for _ in range(rng.randrange(1, 10))]
            acc = split(batch[0], params, rng=rng)
            for s in batch[1:]:
                acc = add_share_vectors(acc, split(s, params, rng=rng))
            expected = sum(s.value for s in batch) % P
            assert reconstruct(acc, 3).value == expected

    def test_perfect_secrecy_tiny_field(self):
        # GF(7), k=2: for each secret, the single-share distribution at each
        # x is exactly uniform, so one share reveals nothing about the secret
        p = 7
        for x in (1, 2, 3):
            tables = {}
            for secret in range(p):
                counts = [0] * p
                for r in range(p):
                    y = (secret + r * x) % p
                    counts[y] += 1
                tables[secret] = counts
            for secret, counts in tables.items():
                assert counts == [1] * p
