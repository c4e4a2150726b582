"""Operator CLI: set up elections, cast ballot loads, tally, verify, demo."""

from __future__ import annotations

import concurrent.futures
import json
import sys
from pathlib import Path

import click
import httpx

from . import commissioner, demo
from .errors import EvotingError


@click.group()
def main():
    """Threshold-share voting toolkit."""


def _fail(message: str, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps({"error": message}))
    else:
        click.echo(f"error: {message}", err=True)
    sys.exit(1)


@main.command()
@click.argument("config_file", type=click.Path(path_type=Path))
@click.option("--url", default=None, help="service to initialize with this election")
@click.option("--json", "as_json", is_flag=True)
def setup(config_file: Path, url: str | None, as_json: bool):
    """Parse a setup file, derive layout and prime, rewrite the full config."""
    try:
        config = commissioner.load_config(config_file)
    except (EvotingError, ValueError, KeyError) as exc:
        _fail(f"invalid setup file: {exc}", as_json)
    commissioner.save_config(config, config_file)
    if url is not None:
        resp = httpx.post(f"{url}/election", json={
            "election_id": config.election_id,
            "candidates": [{"name": n, "symbol": s} for n, s in config.candidates],
            "m": config.m,
            "k": config.params.k,
            "n_cc": config.params.n_cc,
            "prime": str(config.prime),
        })
        if resp.status_code != 201:
            _fail(f"service rejected setup: {resp.status_code} {resp.text}", as_json)
    if as_json:
        click.echo(json.dumps({
            "election_id": config.election_id,
            "c": config.c,
            "m": config.m,
            "k": config.params.k,
            "n_cc": config.params.n_cc,
            "block_width": config.layout.block_width,
            "total_width": config.layout.total_width,
            "prime": str(config.prime),
        }))
    else:
        click.echo(f"w={config.layout.block_width}, total={config.layout.total_width} bits")
        click.echo(f"prime p = {config.prime}")


@main.command()
@click.option("--config", "config_file", type=click.Path(path_type=Path), default=None)
@click.option("--host", default="127.0.0.1", envvar="EVOTING_BIND")
@click.option("--port", default=8000, type=int)
@click.option("--data-dir", type=click.Path(path_type=Path), default=None,
              help="directory for durable center share logs")
@click.option("--center-url", "center_urls", multiple=True,
              help="use external center services (one URL per center, in order)")
@click.option("--unsafe-fixed-coeffs", is_flag=True,
              help="accept caller-fixed blinding coefficients (insecure; test runs only)")
def serve(config_file, host, port, data_dir, center_urls, unsafe_fixed_coeffs):
    """Run the voting service."""
    import uvicorn

    from .server import create_app

    app = create_app(data_dir=data_dir,
                     center_urls=list(center_urls) or None,
                     allow_fixed_coefficients=unsafe_fixed_coeffs)
    if config_file is not None:
        config = commissioner.load_config(config_file)
        with httpx.Client(transport=httpx.ASGITransport(app=app),
                          base_url="http://local") as client:
            resp = client.post("/election", json={
                "election_id": config.election_id,
                "candidates": [{"name": n, "symbol": s} for n, s in config.candidates],
                "m": config.m,
                "k": config.params.k,
                "n_cc": config.params.n_cc,
                "prime": str(config.prime),
            })
            if resp.status_code != 201:
                _fail(f"setup failed: {resp.text}", False)
    uvicorn.run(app, host=host, port=port, access_log=False)


@main.command()
@click.argument("candidate", type=int, required=False)
@click.option("--script", default=None, help="comma-separated candidate indices")
@click.option("--url", default="http://127.0.0.1:8000")
@click.option("--parallel", default=1, type=int, help="concurrent casting workers")
@click.option("--unsafe-fixed-coeffs", default=None,
              help="semicolon-separated coefficient lists, one per ballot (insecure)")
@click.option("--json", "as_json", is_flag=True)
def vote(candidate, script, url, parallel, unsafe_fixed_coeffs, as_json):
    """Cast one ballot, or a scripted sequence of ballots."""
    if candidate is None and script is None:
        _fail("give a candidate index or --script", as_json)
    indices = [candidate] if candidate is not None else [
        int(tok) for tok in script.split(",") if tok.strip()
    ]
    coeff_lists: list[list[str] | None] = [None] * len(indices)
    if unsafe_fixed_coeffs is not None:
        groups = [g for g in unsafe_fixed_coeffs.split(";") if g.strip()]
        if len(groups) != len(indices):
            _fail("need one coefficient group per ballot", as_json)
        coeff_lists = [[c.strip() for c in g.split(",")] for g in groups]

    def cast(args):
        idx, coeffs = args
        body = {"candidate_index": idx}
        if coeffs is not None:
            body["blind_coefficients"] = coeffs
        resp = httpx.post(f"{url}/votes", json=body, timeout=30.0)
        return resp.status_code, resp.json()

    results = []
    if parallel > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(cast, zip(indices, coeff_lists)))
    else:
        for pair in zip(indices, coeff_lists):
            status, body = cast(pair)
            results.append((status, body))
            if status == 409:  # ballot limit: later casts will fail too
                break

    acked = [body["ballot_seq"] for status, body in results if status == 200]
    errors = [(status, body.get("detail", "")) for status, body in results if status != 200]
    if as_json:
        click.echo(json.dumps({"acked": acked, "errors": errors}))
    else:
        click.echo(f"{len(acked)} ballots acknowledged")
        for status, detail in errors:
            click.echo(f"rejected ({status}): {detail}", err=True)
    if errors:
        sys.exit(1)


@main.command()
@click.option("--centers", default=None, help="comma-separated center ids")
@click.option("--url", default="http://127.0.0.1:8000")
@click.option("--json", "as_json", is_flag=True)
def tally(centers, url, as_json):
    """Reconstruct and decode the election result."""
    body = {}
    if centers:
        body["centers"] = [int(tok) for tok in centers.split(",") if tok.strip()]
    resp = httpx.post(f"{url}/tally", json=body, timeout=30.0)
    if resp.status_code != 200:
        _fail(f"tally failed ({resp.status_code}): {resp.json().get('detail')}", as_json)
    result = resp.json()
    if as_json:
        click.echo(json.dumps(result))
    else:
        for name, count in zip(result["candidates"], result["counts"]):
            click.echo(f"{name}={count}")
        winner = result["candidates"][result["winner_index"] - 1]
        click.echo(("tie, first leader " if result["tied"] else "winner ") + winner)
        click.echo(f"centers used: {result['centers_used']}")


@main.command()
@click.option("--url", default="http://127.0.0.1:8000")
@click.option("--json", "as_json", is_flag=True)
def verify(url, as_json):
    """Cross-check the tally over many k-subsets of centers."""
    resp = httpx.get(f"{url}/verify", timeout=30.0)
    if resp.status_code != 200:
        _fail(f"verify failed ({resp.status_code})", as_json)
    report = resp.json()
    if as_json:
        click.echo(json.dumps(report))
    elif report["unanimous"]:
        click.echo(f"unanimous over {len(report['subsets_checked'])} subsets")
    else:
        click.echo(f"DISAGREEMENT in {len(report['disagreeing_subsets'])} subsets")
        click.echo(f"suspected centers: {report['suspected_centers']}")
        sys.exit(1)


@main.command()
@click.option("--json", "as_json", is_flag=True)
def demo_run(as_json):
    """Replay the fixed known-answer election and print the share grid."""
    try:
        result = demo.run_demo()
    except AssertionError as exc:
        _fail(str(exc), as_json)
    if as_json:
        click.echo(json.dumps({
            "shares": [list(r) for r in result.shares],
            "column_sums": list(result.column_sums),
            "polynomial": list(result.tally.polynomial),
            "counts": list(result.tally.counts),
            "unanimous": result.verify.unanimous,
        }))
    else:
        click.echo(demo.format_grid(result), nl=False)
        click.echo(f"polynomial: {list(result.tally.polynomial)}")
        click.echo(f"counts: {list(result.tally.counts)}")
        click.echo(f"verify: unanimous over {len(result.verify.subsets_checked)} subsets")


# expose as "demo" without shadowing the demo module import
main.commands["demo"] = main.commands.pop("demo-run")
demo_run.name = "demo"


if __name__ == "__main__":  # pragma: no cover
    main()
