"""FastAPI application over the core library.

Error contract, mirrored by the CLI exit codes:
  400 domain failure (invalid semigroup, non-stabilizing ingest, ...)
  422 malformed payload (pydantic shape errors)
"""

from __future__ import annotations

import os
import time
from typing import Optional

from fastapi import FastAPI, HTTPException

from gsemi import __version__
from gsemi.ideals import classify, distance, ambient_ideal, as_ideal
from gsemi.ingest import CurvePresentation, IngestError, compute_value_semigroup
from gsemi.lattice import OrderMode
from gsemi.noether import noether_check, verify_certificate
from gsemi.semigroup import GoodSemigroup, indices
from gsemi.service.schemas import (
    CorpusRequest,
    CorpusResponse,
    CorpusRow,
    IngestRequest,
    IngestResponse,
    InvariantsResponse,
    NoetherResponse,
    SemigroupDoc,
    ValidationResponse,
)

ENV_MAX_TRUNC = "GSL_MAX_TRUNC"


def _domain_error(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"kind": "domain", "error": message})


def _load_semigroup(doc: SemigroupDoc) -> GoodSemigroup:
    try:
        return GoodSemigroup.from_dict(doc.to_core_dict())
    except ValueError as exc:
        raise _domain_error(str(exc)) from exc


def _require_valid(S: GoodSemigroup) -> None:
    report = S.validate()
    if not report.valid:
        codes = ", ".join(v.code for v in report.violations)
        raise _domain_error(f"input semigroup is not valid: {codes}")


def _mode(order_mode: str) -> OrderMode:
    try:
        return OrderMode(order_mode)
    except ValueError as exc:
        raise _domain_error(f"unknown order mode {order_mode!r}") from exc


def _trunc_ceiling(requested: Optional[int]) -> int:
    """Requested bound capped by the GSL_MAX_TRUNC environment ceiling."""
    limit = requested if requested is not None else 256
    env = os.environ.get(ENV_MAX_TRUNC)
    if env is not None:
        try:
            ceiling = int(env)
        except ValueError as exc:
            raise _domain_error(f"bad {ENV_MAX_TRUNC} value {env!r}") from exc
        limit = min(limit, ceiling)
    return limit


def create_app() -> FastAPI:
    app = FastAPI(title="gsemi", version=__version__)

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/api/validate", response_model=ValidationResponse)
    def validate(doc: SemigroupDoc) -> ValidationResponse:
        S = _load_semigroup(doc)
        report = S.validate()
        return ValidationResponse(
            valid=report.valid,
            violations=[
                {"code": v.code, "message": v.message, "witness": v.witness}
                for v in report.violations
            ],
            branches=S.branches,
            name=S.name,
        )

    @app.post("/api/invariants", response_model=InvariantsResponse)
    def invariants(doc: SemigroupDoc, order_mode: str = "lt-neq") -> InvariantsResponse:
        S = _load_semigroup(doc)
        _require_valid(S)
        mode = _mode(order_mode)
        try:
            idx = indices(S, mode)
            cls = classify(S)
        except ValueError as exc:
            raise _domain_error(str(exc)) from exc
        return InvariantsResponse(
            name=S.name,
            branches=S.branches,
            conductor=list(S.conductor),
            order_mode=mode.value,
            indices=idx.to_dict(),
            classification=cls.to_dict(),
        )

    @app.post("/api/noether", response_model=NoetherResponse)
    def noether(doc: SemigroupDoc, order_mode: str = "lt-neq") -> NoetherResponse:
        S = _load_semigroup(doc)
        _require_valid(S)
        mode = _mode(order_mode)
        try:
            rep = noether_check(S, mode)
        except ValueError as exc:
            raise _domain_error(str(exc)) from exc
        body = rep.to_dict()
        return NoetherResponse(
            name=S.name,
            order_mode=body["order_mode"],
            target_length=body["target_length"],
            found=body["full_chain_found"],
            full_chain=body["full_chain"],
            part1_chain=body["part1_chain"],
            recipe_applicable=body["recipe_applicable"],
            diagnostics=body["diagnostics"],
        )

    @app.post("/api/ingest", response_model=IngestResponse)
    def ingest(req: IngestRequest) -> IngestResponse:
        try:
            curve = CurvePresentation.from_dict(req.curve.to_core_dict())
            result = compute_value_semigroup(
                curve,
                max_trunc=_trunc_ceiling(req.options.max_trunc),
                start_trunc=req.options.start_trunc,
                max_depth=req.options.max_depth,
            )
        except IngestError as exc:
            raise _domain_error(str(exc)) from exc
        return IngestResponse(
            semigroup=result.semigroup.to_dict(),
            provenance=result.provenance(),
            delta=result.delta_ring,
        )

    @app.post("/api/corpus", response_model=CorpusResponse)
    def corpus(req: CorpusRequest) -> CorpusResponse:
        mode = _mode(req.order_mode)
        rows = [_corpus_row(item.name, item.curve.to_core_dict(), mode, req.max_trunc)
                for item in req.items]
        counts = {
            "items": len(rows),
            "ok": sum(1 for r in rows if r.status == "ok"),
            "invalid": sum(1 for r in rows if r.status == "invalid"),
            "error": sum(1 for r in rows if r.status == "error"),
            "dp_success": sum(1 for r in rows if r.dp_success),
            "recipe_applicable": sum(1 for r in rows if r.recipe_applicable),
        }
        return CorpusResponse(order_mode=mode.value, rows=rows, counts=counts)

    return app


def _corpus_row(
    name: str, curve_doc: dict, mode: OrderMode, max_trunc: Optional[int]
) -> CorpusRow:
    t0 = time.perf_counter()
    try:
        curve = CurvePresentation.from_dict(curve_doc)
        result = compute_value_semigroup(curve, max_trunc=_trunc_ceiling(max_trunc))
        S = result.semigroup
        idx = indices(S, mode)
        cls = classify(S)
        rep = noether_check(S, mode)
        dp_ok = rep.full_chain is not None and not verify_certificate(
            S, rep.full_chain, mode
        )
        delta_sg = distance(ambient_ideal(S.branches), as_ideal(S))
    except (IngestError, ValueError) as exc:
        return CorpusRow(
            name=name,
            status="invalid",
            detail=str(exc),
            runtime_ms=(time.perf_counter() - t0) * 1000.0,
        )
    except Exception as exc:  # pragma: no cover - defensive
        return CorpusRow(
            name=name,
            status="error",
            detail=f"{type(exc).__name__}: {exc}",
            runtime_ms=(time.perf_counter() - t0) * 1000.0,
        )
    return CorpusRow(
        name=name,
        status="ok",
        branches=S.branches,
        alpha=list(idx.alpha),
        beta=list(S.conductor),
        gamma=list(idx.gamma),
        m=idx.m,
        r=idx.r,
        n=idx.n,
        gorenstein=cls.gorenstein,
        kunz=cls.kunz,
        eta=cls.eta,
        mu=cls.mu,
        delta=delta_sg,
        chain_length=len(rep.full_chain.points) if rep.full_chain else None,
        recipe_applicable=rep.recipe_applicable,
        dp_success=dp_ok,
        runtime_ms=(time.perf_counter() - t0) * 1000.0,
    )
