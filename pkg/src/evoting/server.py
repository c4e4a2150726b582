"""Communication server: HTTP/JSON facade over the whole pipeline.

Field values travel as decimal strings on the wire; p can be close to 2^63
and some JSON parsers silently lose precision above 2^53.

Collection centers sit behind a small client abstraction so the same code
path serves in-process centers (default) and centers running as separate
processes that speak the JSON protocol in center_service.py.
"""

from __future__ import annotations

import threading
import time
from pathlib import Path
from typing import Protocol

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import commissioner
from .center import CollectionCenter
from .encoding import encode_vote
from .errors import (
    BlockOverflow,
    CandidateOutOfRange,
    CountMismatch,
    EvotingError,
)
from .shamir import Share, shares_from_coefficients, split


class CenterClient(Protocol):
    """Transport-independent view of one collection center."""

    center_id: int

    def accept_share(self, ballot_seq: int, x: int, y: int) -> None: ...

    def summary(self) -> tuple[int, int, int]: ...


class CenterUnreachable(EvotingError):
    pass


class LocalCenterClient:
    def __init__(self, center: CollectionCenter):
        self.center = center
        self.center_id = center.center_id

    def accept_share(self, ballot_seq: int, x: int, y: int) -> None:
        from .field import FieldElement
        self.center.accept_share(ballot_seq, Share(x, FieldElement(y, self.center.prime)))

    def summary(self) -> tuple[int, int, int]:
        x, s, count = self.center.summary()
        return (x, s.value, count)


class HttpCenterClient:
    """Talks to a center_service.py instance over HTTP/JSON."""

    def __init__(self, center_id: int, base_url: str, client=None):
        import httpx
        self.center_id = center_id
        self._client = client or httpx.Client(base_url=base_url, timeout=5.0)

    def accept_share(self, ballot_seq: int, x: int, y: int) -> None:
        try:
            resp = self._client.post(
                "/shares", json={"ballot_seq": ballot_seq, "x": x, "y": str(y)}
            )
        except Exception as exc:
            raise CenterUnreachable(str(exc)) from exc
        if resp.status_code != 200:
            raise CenterUnreachable(f"center {self.center_id}: HTTP {resp.status_code}")

    def summary(self) -> tuple[int, int, int]:
        try:
            resp = self._client.get("/summary")
        except Exception as exc:
            raise CenterUnreachable(str(exc)) from exc
        if resp.status_code != 200:
            raise CenterUnreachable(f"center {self.center_id}: HTTP {resp.status_code}")
        body = resp.json()
        return (body["x"], int(body["partial_sum"]), body["count"])


class ElectionState:
    """One active election: config, center clients, ballot sequencing."""

    def __init__(self, config: commissioner.ElectionConfig,
                 centers: list[CenterClient], delivery_retries: int = 3,
                 retry_delay: float = 0.01):
        self.config = config
        self.centers = {c.center_id: c for c in centers}
        self.delivery_retries = delivery_retries
        self.retry_delay = retry_delay
        self._seq_lock = threading.Lock()
        self._issued = 0
        # ballots whose fan-out did not fully complete; shares only, no
        # plaintext. Rolled forward on later requests so every center
        # converges to the same ballot count at quiescence.
        self._pending: list[tuple[int, list[Share]]] = []
        self._pending_lock = threading.Lock()

    def allocate_seq(self) -> int:
        with self._seq_lock:
            if self._issued >= self.config.m:
                raise _BallotLimit()
            self._issued += 1
            return self._issued

    def deliver(self, seq: int, shares: list[Share]) -> list[Share]:
        """Send share j to center j with bounded retries.

        Returns the shares that could not be delivered (idempotent redelivery
        makes retrying the whole list safe).
        """
        failed = []
        for share in shares:
            client = self.centers[share.x]
            for attempt in range(self.delivery_retries):
                try:
                    client.accept_share(seq, share.x, share.y.value)
                    break
                except CenterUnreachable:
                    if attempt + 1 == self.delivery_retries:
                        failed.append(share)
                    else:
                        time.sleep(self.retry_delay)
        return failed

    def flush_pending(self) -> None:
        with self._pending_lock:
            still = []
            for seq, shares in self._pending:
                failed = self.deliver(seq, shares)
                if failed:
                    still.append((seq, failed))
            self._pending = still

    def add_pending(self, seq: int, shares: list[Share]) -> None:
        with self._pending_lock:
            self._pending.append((seq, shares))

    @property
    def has_pending(self) -> bool:
        with self._pending_lock:
            return bool(self._pending)


class _BallotLimit(Exception):
    pass


# --- request/response models ------------------------------------------------

class CandidateIn(BaseModel):
    name: str
    symbol: str = ""


class SetupIn(BaseModel):
    election_id: str = "election"
    candidates: list[CandidateIn] = Field(min_length=1)
    m: int
    k: int
    n_cc: int
    prime: str | None = None


class BallotIn(BaseModel):
    candidate_index: int
    # blinding coefficients as decimal strings; only honored when the app was
    # created with allow_fixed_coefficients (known-answer runs), because fixed
    # coefficients forfeit share secrecy
    blind_coefficients: list[str] | None = None


class TallyIn(BaseModel):
    centers: list[int] | None = None


def create_app(data_dir: str | Path | None = None,
               center_urls: list[str] | None = None,
               allow_fixed_coefficients: bool = False) -> FastAPI:
    """Build the service.

    With a data_dir, in-process center share logs are durable files under it;
    without, centers are memory-only (tests, demos).  With center_urls, the
    service instead talks to already-running center_service.py processes, one
    URL per center id in order.
    """
    app = FastAPI(title="share-based voting service")
    app.state.election = None
    app.state.data_dir = Path(data_dir) if data_dir is not None else None
    app.state.center_urls = center_urls
    app.state.allow_fixed_coefficients = allow_fixed_coefficients

    def election() -> ElectionState:
        if app.state.election is None:
            raise HTTPException(status_code=404, detail="no active election")
        return app.state.election

    @app.post("/election", status_code=201)
    def setup(body: SetupIn):
        if app.state.election is not None:
            raise HTTPException(status_code=409, detail="election already active")
        try:
            config = commissioner.setup_election(
                [(c.name, c.symbol) for c in body.candidates],
                m=body.m, k=body.k, n_cc=body.n_cc,
                prime=int(body.prime) if body.prime is not None else None,
                election_id=body.election_id,
            )
        except (EvotingError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        centers: list[CenterClient] = []
        if app.state.center_urls is not None:
            if len(app.state.center_urls) != config.params.n_cc:
                raise HTTPException(status_code=422,
                                    detail="need one center URL per center")
            for j, url in enumerate(app.state.center_urls, start=1):
                centers.append(HttpCenterClient(j, url))
        else:
            for j in range(1, config.params.n_cc + 1):
                path = None
                if app.state.data_dir is not None:
                    app.state.data_dir.mkdir(parents=True, exist_ok=True)
                    path = app.state.data_dir / f"cc{j}.log"
                centers.append(LocalCenterClient(
                    CollectionCenter(j, config.prime, config.election_id, log_path=path)
                ))
        app.state.election = ElectionState(config, centers)
        if app.state.data_dir is not None:
            commissioner.save_config(config, app.state.data_dir / "election.cfg")
        return _descriptor(config)

    @app.get("/election")
    def describe():
        return _descriptor(election().config)

    @app.post("/votes")
    def cast(body: BallotIn):
        state = election()
        config = state.config
        if not 1 <= body.candidate_index <= config.c:
            raise HTTPException(status_code=422,
                               detail=f"candidate_index must be in [1, {config.c}]")
        state.flush_pending()
        try:
            seq = state.allocate_seq()
        except _BallotLimit:
            raise HTTPException(status_code=409, detail="ballot limit reached")
        try:
            secret = encode_vote(body.candidate_index, config.layout, config.prime)
        except CandidateOutOfRange as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        if body.blind_coefficients is not None:
            if not app.state.allow_fixed_coefficients:
                raise HTTPException(status_code=422,
                                    detail="fixed coefficients are disabled")
            if len(body.blind_coefficients) != config.params.k - 1:
                raise HTTPException(status_code=422,
                                    detail=f"need {config.params.k - 1} coefficients")
            from .field import FieldElement
            coeffs = [secret] + [FieldElement(int(c), config.prime)
                                 for c in body.blind_coefficients]
            shares = shares_from_coefficients(coeffs, config.params.n_cc)
        else:
            shares = split(secret, config.params)
        # the plaintext ballot and polynomial go out of scope here; only
        # shares survive past this point
        del secret
        failed = state.deliver(seq, shares)
        if failed:
            state.add_pending(seq, failed)
            raise HTTPException(
                status_code=503,
                detail="one or more collection centers unreachable; ballot not counted",
            )
        return {"ballot_seq": seq, "centers_acked": config.params.n_cc}

    @app.get("/cc/{j}/summary")
    def center_summary(j: int):
        state = election()
        if j not in state.centers:
            raise HTTPException(status_code=404, detail=f"no center {j}")
        x, s, count = state.centers[j].summary()
        return {"x": x, "partial_sum": str(s), "count": count}

    @app.post("/tally")
    def run_tally(body: TallyIn | None = None):
        state = election()
        config = state.config
        state.flush_pending()
        if body is not None and body.centers:
            chosen = body.centers
            if any(j not in state.centers for j in chosen):
                raise HTTPException(status_code=422, detail="unknown center in list")
        else:
            chosen = commissioner.select_centers(config, list(state.centers))
        sums = [state.centers[j].summary() for j in chosen]
        try:
            result = commissioner.tally(config, [(x, s, cnt) for x, s, cnt in sums])
        except CountMismatch as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except BlockOverflow as exc:
            raise HTTPException(status_code=500,
                               detail=f"corrupt partial sums: {exc}")
        except EvotingError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {
            "constant_term": str(result.constant_term),
            "polynomial": [str(c) for c in result.polynomial],
            "counts": list(result.counts),
            "centers_used": list(result.centers_used),
            "total_ballots": result.total_ballots,
            "winner_index": result.winner_index,
            "tied": result.tied,
            "candidates": [name for name, _ in config.candidates],
        }

    @app.get("/verify")
    def run_verify():
        state = election()
        state.flush_pending()
        sums = [state.centers[j].summary() for j in sorted(state.centers)]
        report = commissioner.verify_consistency(state.config, sums)
        return {
            "subsets_checked": [list(s) for s in report.subsets_checked],
            "values": [str(v) for v in report.values],
            "unanimous": report.unanimous,
            "disagreeing_subsets": [list(s) for s in report.disagreeing_subsets],
            "suspected_centers": list(report.suspected_centers),
        }

    return app


def _descriptor(config: commissioner.ElectionConfig) -> dict:
    # p, k, n_cc and m are public parameters; secrecy rests on the shares,
    # never on hiding the field
    return {
        "election_id": config.election_id,
        "candidates": [{"name": n, "symbol": s} for n, s in config.candidates],
        "c": config.c,
        "m": config.m,
        "k": config.params.k,
        "n_cc": config.params.n_cc,
        "prime": str(config.prime),
        "block_width": config.layout.block_width,
        "total_width": config.layout.total_width,
    }
