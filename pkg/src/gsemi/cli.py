"""Command line for the semigroup toolkit.

Every subcommand is a thin client of the JSON API in gsemi.service: by
default the app is mounted in-process (no socket), and --server retargets
the same requests at a running instance.

Exit codes: 0 success, 1 mathematical failure or violation, 2 I/O or
parse error.
"""

from __future__ import annotations

import json
import sys
import warnings
from typing import Optional

import click
import httpx

with warnings.catch_warnings():
    # starlette warns about the httpx fallback; httpx2 is not available here
    warnings.filterwarnings("ignore", message=".*httpx2.*")
    from fastapi.testclient import TestClient

from gsemi.service.app import create_app
from gsemi.service.schemas import CurveDoc


def _client(server: Optional[str]):
    if server:
        return httpx.Client(base_url=server.rstrip("/"), timeout=600.0)
    return TestClient(create_app(), raise_server_exceptions=False)


def _read_doc(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        click.echo(f"cannot read {path}: {exc}", err=True)
        sys.exit(2)
    except json.JSONDecodeError as exc:
        click.echo(f"malformed JSON in {path}: {exc}", err=True)
        sys.exit(2)
    if not isinstance(doc, dict):
        click.echo(f"malformed document in {path}: expected a JSON object", err=True)
        sys.exit(2)
    return doc


def _checked(resp) -> dict:
    if resp.status_code == 200:
        return resp.json()
    if resp.status_code == 400:
        detail = resp.json().get("detail")
        msg = detail.get("error") if isinstance(detail, dict) else str(detail)
        click.echo(f"error: {msg}", err=True)
        sys.exit(1)
    if resp.status_code == 422:
        click.echo(f"malformed request: {resp.text}", err=True)
        sys.exit(2)
    click.echo(f"server error {resp.status_code}: {resp.text}", err=True)
    sys.exit(2)


def _dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(doc: dict, out: Optional[str]) -> None:
    text = _dumps(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


_server_opt = click.option("--server", default=None, metavar="URL",
                           help="Use a running service instead of in-process.")
_mode_opt = click.option("--order-mode", default="lt-neq",
                         type=click.Choice(["lt-neq", "lt-all"]),
                         help="Reading of strict vector comparison.")
_out_opt = click.option("-o", "--output", default=None, metavar="PATH",
                        help="Write the JSON report to PATH instead of stdout.")


@click.group()
@click.version_option(package_name="gsemi")
def main() -> None:
    """Good semigroups of N^s: validation, invariants, chains, ingest."""


@main.command()
@click.argument("path", type=click.Path())
@_out_opt
@_server_opt
def validate(path: str, output: Optional[str], server: Optional[str]) -> None:
    """Check the good-semigroup axioms; exit 0 iff all hold."""
    doc = _read_doc(path)
    body = _checked(_client(server).post("/api/validate", json=doc))
    _emit(body, output)
    sys.exit(0 if body["valid"] else 1)


@main.command()
@click.argument("path", type=click.Path())
@_mode_opt
@_out_opt
@_server_opt
def invariants(path: str, order_mode: str, output: Optional[str],
               server: Optional[str]) -> None:
    """Singularity indices and symmetry classification."""
    doc = _read_doc(path)
    body = _checked(_client(server).post(
        "/api/invariants", json=doc, params={"order_mode": order_mode}))
    _emit(body, output)


@main.command()
@click.argument("path", type=click.Path())
@_mode_opt
@_out_opt
@_server_opt
def noether(path: str, order_mode: str, output: Optional[str],
            server: Optional[str]) -> None:
    """Certified chain search in the doubled canonical ideal; exit 0 iff found."""
    doc = _read_doc(path)
    body = _checked(_client(server).post(
        "/api/noether", json=doc, params={"order_mode": order_mode}))
    _emit(body, output)
    sys.exit(0 if body["found"] else 1)


@main.command()
@click.argument("path", type=click.Path())
@click.option("-o", "--output", default=None, metavar="PATH",
              help="Write the detected semigroup document to PATH.")
@click.option("--max-depth", default=None, type=int,
              help="Cap on monomial degree during saturation.")
@click.option("--max-trunc", default=None, type=int,
              help="Cap on the truncation window (also capped by GSL_MAX_TRUNC).")
@click.option("--json", "as_json", is_flag=True,
              help="Print the full response (semigroup + provenance) to stdout.")
@_server_opt
def ingest(path: str, output: Optional[str], max_depth: Optional[int],
           max_trunc: Optional[int], as_json: bool, server: Optional[str]) -> None:
    """Compute the value semigroup of a parametrized curve."""
    doc = _read_doc(path)
    payload = {"curve": doc, "options": {}}
    if max_depth is not None:
        payload["options"]["max_depth"] = max_depth
    if max_trunc is not None:
        payload["options"]["max_trunc"] = max_trunc
    body = _checked(_client(server).post("/api/ingest", json=payload))
    if output:
        with open(output, "w") as fh:
            fh.write(_dumps(body["semigroup"]))
    if as_json or not output:
        click.echo(_dumps(body), nl=False)
    else:
        prov = body["provenance"]
        click.echo(
            f"wrote {output}  delta={body['delta']} "
            f"trunc={prov['truncation']} rounds={prov['rounds']}"
        )


_TABLE_COLS = [
    ("name", "name"), ("s", "branches"), ("alpha", "alpha"), ("beta", "beta"),
    ("gamma", "gamma"), ("m", "m"), ("r", "r"), ("n", "n"),
    ("gor", "gorenstein"), ("kunz", "kunz"), ("eta", "eta"), ("mu", "mu"),
    ("delta", "delta"), ("chain", "chain_length"), ("recipe", "recipe_applicable"),
    ("dp", "dp_success"), ("ms", "runtime_ms"), ("status", "status"),
]


def _cell(row: dict, key: str) -> str:
    v = row.get(key)
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.0f}"
    if isinstance(v, list):
        return "(" + ",".join(str(x) for x in v) + ")"
    return str(v)


def _table(rows: list[dict]) -> str:
    grid = [[h for h, _ in _TABLE_COLS]]
    for row in rows:
        grid.append([_cell(row, key) for _, key in _TABLE_COLS])
    widths = [max(len(line[i]) for line in grid) for i in range(len(_TABLE_COLS))]
    out = []
    for line in grid:
        out.append("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip())
    return "\n".join(out)


@main.command()
@click.argument("directory", type=click.Path())
@click.option("--strict", is_flag=True,
              help="Exit 1 if any row is not ok or misses its full chain.")
@click.option("--max-trunc", default=None, type=int,
              help="Cap on the truncation window for every item.")
@click.option("--json", "as_json", is_flag=True,
              help="Print canonical JSON instead of the text table.")
@_mode_opt
@_out_opt
@_server_opt
def corpus(directory: str, strict: bool, max_trunc: Optional[int], as_json: bool,
           order_mode: str, output: Optional[str], server: Optional[str]) -> None:
    """Batch-run ingest + invariants + chain search over a directory of curves."""
    import glob
    import os

    paths = sorted(glob.glob(os.path.join(directory, "*.json")))
    local_rows: list[dict] = []
    items = []
    for p in paths:
        name = os.path.basename(p)
        try:
            with open(p) as fh:
                doc = json.load(fh)
            CurveDoc.model_validate(doc)
        except (OSError, json.JSONDecodeError, ValueError) as exc:
            local_rows.append({"name": name, "status": "invalid", "detail": str(exc)})
            continue
        items.append({"name": name, "curve": doc})

    payload: dict = {"items": items, "order_mode": order_mode}
    if max_trunc is not None:
        payload["max_trunc"] = max_trunc
    body = _checked(_client(server).post("/api/corpus", json=payload))

    rows = body["rows"] + local_rows
    rows.sort(key=lambda r: r["name"])
    counts = {
        "items": len(rows),
        "ok": sum(1 for r in rows if r.get("status") == "ok"),
        "invalid": sum(1 for r in rows if r.get("status") == "invalid"),
        "error": sum(1 for r in rows if r.get("status") == "error"),
        "dp_success": sum(1 for r in rows if r.get("dp_success")),
        "recipe_applicable": sum(1 for r in rows if r.get("recipe_applicable")),
    }

    # timing is reported in the table only, so the JSON stays run-stable
    canonical_rows = [{k: v for k, v in r.items() if k != "runtime_ms"} for r in rows]
    summary = {"order_mode": body["order_mode"], "rows": canonical_rows,
               "counts": counts}

    if output:
        with open(output, "w") as fh:
            fh.write(_dumps(summary))
    if as_json:
        click.echo(_dumps(summary), nl=False)
    else:
        click.echo(_table(rows))
        click.echo(
            f"{counts['items']} items: {counts['ok']} ok, "
            f"{counts['invalid']} invalid, {counts['error']} error; "
            f"full chain on {counts['dp_success']}"
        )

    red = counts["invalid"] + counts["error"] > 0 or counts["dp_success"] < counts["ok"]
    sys.exit(1 if strict and red else 0)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host: str, port: int) -> None:
    """Run the JSON API as a standalone server."""
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
