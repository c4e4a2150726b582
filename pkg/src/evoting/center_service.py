"""Standalone HTTP wrapper for one collection center.

Speaks the same JSON protocol HttpCenterClient expects, so a center can run
as its own process on loopback (or anywhere) instead of in-process.
"""

from __future__ import annotations

from fastapi import FastAPI
from pydantic import BaseModel

from .center import CollectionCenter
from .field import FieldElement
from .shamir import Share


class ShareIn(BaseModel):
    ballot_seq: int
    x: int
    y: str  # decimal string, same convention as the main service


def create_center_app(center: CollectionCenter) -> FastAPI:
    app = FastAPI(title=f"collection center {center.center_id}")
    app.state.center = center

    @app.post("/shares")
    def accept(body: ShareIn):
        center.accept_share(body.ballot_seq, Share(body.x, FieldElement(int(body.y), center.prime)))
        return {"ok": True}

    @app.get("/summary")
    def summary():
        x, s, count = center.summary()
        return {"x": x, "partial_sum": str(s.value), "count": count}

    return app


def main() -> None:  # pragma: no cover - thin process entry point
    import argparse

    import uvicorn

    parser = argparse.ArgumentParser(description="run one collection center")
    parser.add_argument("--center-id", type=int, required=True)
    parser.add_argument("--prime", type=int, required=True)
    parser.add_argument("--election-id", default="election")
    parser.add_argument("--log-path", default=None)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, required=True)
    args = parser.parse_args()

    center = CollectionCenter(args.center_id, args.prime, args.election_id,
                              log_path=args.log_path)
    uvicorn.run(create_center_app(center), host=args.host, port=args.port,
                access_log=False)


if __name__ == "__main__":  # pragma: no cover
    main()
