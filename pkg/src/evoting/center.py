"""Collection-center node: durable share log plus running partial sum.

The on-disk log is append-only, one record per accepted share.  Format
(documented in FORMATS.md):

    header line:  <election_id> <center_id> <p>
    record line:  <ballot_seq> <x> <y>

All fields are decimal integers except election_id, which must contain no
whitespace.  Replaying the log reconstructs the partial sum exactly, so a
center that crashes after an acknowledged append loses nothing.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path

from .errors import CorruptLog, DuplicateBallot, WrongCenter
from .field import FieldElement
from .shamir import Share


class CollectionCenter:
    """Single-writer share store for center j.

    accept_share calls are serialized by a lock; summary() takes the same
    lock so readers never observe a torn (sum, count) pair.
    """

    def __init__(self, center_id: int, prime: int, election_id: str,
                 log_path: str | Path | None = None):
        if center_id < 1:
            raise ValueError(f"center id must be >= 1, got {center_id}")
        if any(ch.isspace() for ch in election_id) or not election_id:
            raise ValueError("election_id must be non-empty with no whitespace")
        self.center_id = center_id
        self.prime = prime
        self.election_id = election_id
        self.partial_sum = FieldElement(0, prime)
        self.ballot_count = 0
        self._seen: set[int] = set()
        self._lock = threading.Lock()
        self._log_path = Path(log_path) if log_path is not None else None
        self._fh = None
        if self._log_path is not None:
            fresh = not self._log_path.exists() or self._log_path.stat().st_size == 0
            self._fh = open(self._log_path, "a", encoding="ascii")
            if fresh:
                self._fh.write(f"{election_id} {center_id} {prime}\n")
                self._fh.flush()
                os.fsync(self._fh.fileno())

    def accept_share(self, ballot_seq: int, share: Share) -> None:
        """Append one share; durable before this returns.

        Redelivery of an already-stored ballot_seq is a silent success, so
        at-least-once delivery gives exactly-once counting.
        """
        if share.x != self.center_id:
            raise WrongCenter(f"share for x={share.x} sent to center {self.center_id}")
        with self._lock:
            if ballot_seq in self._seen:
                return
            if self._fh is not None:
                self._fh.write(f"{ballot_seq} {share.x} {share.y.value}\n")
                self._fh.flush()
                os.fsync(self._fh.fileno())
            self._seen.add(ballot_seq)
            self.partial_sum = self.partial_sum + share.y
            self.ballot_count += 1

    def summary(self) -> tuple[int, FieldElement, int]:
        """(x, partial sum, ballot count) — no per-ballot data crosses this."""
        with self._lock:
            return (self.center_id, self.partial_sum, self.ballot_count)

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    @classmethod
    def recover(cls, log_path: str | Path) -> "CollectionCenter":
        """Rebuild a center from its log by replaying every record."""
        log_path = Path(log_path)
        lines = log_path.read_text(encoding="ascii").splitlines()
        if not lines:
            raise CorruptLog("empty log file: missing header", record_index=0)
        head = lines[0].split()
        if len(head) != 3:
            raise CorruptLog(f"malformed header: {lines[0]!r}", record_index=0)
        election_id = head[0]
        try:
            center_id, prime = int(head[1]), int(head[2])
        except ValueError:
            raise CorruptLog(f"malformed header: {lines[0]!r}", record_index=0) from None

        center = cls.__new__(cls)
        center.center_id = center_id
        center.prime = prime
        center.election_id = election_id
        center.partial_sum = FieldElement(0, prime)
        center.ballot_count = 0
        center._seen = set()
        center._lock = threading.Lock()
        center._log_path = log_path
        center._fh = None

        for idx, line in enumerate(lines[1:], start=1):
            parts = line.split()
            if len(parts) != 3:
                raise CorruptLog(f"malformed record: {line!r}", record_index=idx)
            try:
                seq, x, y = (int(v) for v in parts)
            except ValueError:
                raise CorruptLog(f"non-integer field: {line!r}", record_index=idx) from None
            if x != center_id:
                raise CorruptLog(f"record for x={x} in center {center_id} log",
                                 record_index=idx)
            if seq in center._seen:
                raise CorruptLog(f"duplicate ballot_seq {seq}", record_index=idx)
            if not 0 <= y < prime:
                raise CorruptLog(f"share value {y} outside field", record_index=idx)
            center._seen.add(seq)
            center.partial_sum = center.partial_sum + FieldElement(y, prime)
            center.ballot_count += 1

        # reopen for appends so recovery is transparent to callers
        center._fh = open(log_path, "a", encoding="ascii")
        return center
