import random
import threading

import pytest

from evoting.center import CollectionCenter
from evoting.errors import CorruptLog, WrongCenter
from evoting.field import FieldElement
from evoting.shamir import Share

P = 9973
CC1_COLUMN = [91, 327, 70, 113, 167]  # published shares at center 1


def fe(v):
    return FieldElement(v, P)


def fill_center1(center):
    for seq, y in enumerate(CC1_COLUMN, start=1):
        center.accept_share(seq, Share(1, fe(y)))


class TestAcceptShare:
    def test_first_share(self):
        cc = CollectionCenter(1, P, "e1")
        cc.accept_share(1, Share(1, fe(91)))
        x, s, count = cc.summary()
        assert (x, s.value, count) == (1, 91, 1)

    def test_full_column(self):
        cc = CollectionCenter(1, P, "e1")
        fill_center1(cc)
        _, s, count = cc.summary()
        assert (s.value, count) == (768, 5)

    def test_replay_is_idempotent(self):
        cc = CollectionCenter(1, P, "e1")
        fill_center1(cc)
        cc.accept_share(1, Share(1, fe(91)))  # redelivery: silent success
        _, s, count = cc.summary()
        assert (s.value, count) == (768, 5)

    def test_wrong_center(self):
        cc = CollectionCenter(1, P, "e1")
        with pytest.raises(WrongCenter):
            cc.accept_share(1, Share(2, fe(91)))

    def test_out_of_order_accepted(self):
        cc = CollectionCenter(1, P, "e1")
        for seq in (3, 1, 2):
            cc.accept_share(seq, Share(1, fe(CC1_COLUMN[seq - 1])))
        _, s, count = cc.summary()
        assert (s.value, count) == (91 + 327 + 70, 3)


class TestSummary:
    def test_empty(self):
        cc = CollectionCenter(4, P, "e1")
        x, s, count = cc.summary()
        assert (x, s.value, count) == (4, 0, 0)

    def test_center_two_column(self):
        cc = CollectionCenter(2, P, "e1")
        for seq, y in enumerate([269, 498, 251, 278, 475], start=1):
            cc.accept_share(seq, Share(2, fe(y)))
        assert cc.summary()[1].value == 1771

    def test_center_four_column(self):
        cc = CollectionCenter(4, P, "e1")
        for seq, y in enumerate([889, 1140, 949, 812, 1517], start=1):
            cc.accept_share(seq, Share(4, fe(y)))
        x, s, count = cc.summary()
        assert (x, s.value, count) == (4, 5307, 5)


class TestRecovery:
    def test_replay_column(self, tmp_path):
        path = tmp_path / "cc1.log"
        cc = CollectionCenter(1, P, "e1", log_path=path)
        fill_center1(cc)
        cc.close()
        recovered = CollectionCenter.recover(path)
        _, s, count = recovered.summary()
        assert (s.value, count) == (768, 5)
        assert recovered.election_id == "e1"

    def test_empty_log(self, tmp_path):
        path = tmp_path / "cc3.log"
        CollectionCenter(3, P, "e1", log_path=path).close()
        recovered = CollectionCenter.recover(path)
        x, s, count = recovered.summary()
        assert (x, s.value, count) == (3, 0, 0)

    def test_duplicate_seq_detected(self, tmp_path):
        path = tmp_path / "cc1.log"
        path.write_text("e1 1 9973\n1 1 91\n1 1 91\n")
        with pytest.raises(CorruptLog) as exc:
            CollectionCenter.recover(path)
        assert exc.value.record_index == 2

    def test_malformed_record(self, tmp_path):
        path = tmp_path / "cc1.log"
        path.write_text("e1 1 9973\n1 1\n")
        with pytest.raises(CorruptLog):
            CollectionCenter.recover(path)

    def test_wrong_center_record(self, tmp_path):
        path = tmp_path / "cc1.log"
        path.write_text("e1 1 9973\n1 2 91\n")
        with pytest.raises(CorruptLog):
            CollectionCenter.recover(path)

    def test_recovered_center_keeps_accepting(self, tmp_path):
        path = tmp_path / "cc1.log"
        cc = CollectionCenter(1, P, "e1", log_path=path)
        cc.accept_share(1, Share(1, fe(91)))
        cc.close()
        recovered = CollectionCenter.recover(path)
        recovered.accept_share(2, Share(1, fe(327)))
        recovered.close()
        again = CollectionCenter.recover(path)
        _, s, count = again.summary()
        assert (s.value, count) == (418, 2)

    def test_random_interleavings_replay_identically(self, tmp_path):
        rng = random.Random(17)
        for trial in range(20):
            path = tmp_path / f"cc_{trial}.log"
            cc = CollectionCenter(1, P, "trial", log_path=path)
            seqs = list(range(1, rng.randrange(1, 30)))
            rng.shuffle(seqs)
            for seq in seqs:
                y = rng.randrange(P)
                cc.accept_share(seq, Share(1, fe(y)))
                if rng.random() < 0.3:  # occasional redelivery
                    cc.accept_share(seq, Share(1, fe(y)))
            expected = cc.summary()
            cc.close()
            got = CollectionCenter.recover(path).summary()
            assert got == expected


class TestConcurrency:
    def test_parallel_writers_distinct_seqs(self):
        cc = CollectionCenter(1, P, "e1")
        ys = [random.Random(3).randrange(P) for _ in range(200)]

        def worker(offset):
            for i in range(offset, 200, 4):
                cc.accept_share(i + 1, Share(1, fe(ys[i])))

        threads = [threading.Thread(target=worker, args=(off,)) for off in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        _, s, count = cc.summary()
        assert count == 200
        assert s.value == sum(ys) % P
