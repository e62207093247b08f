"""HTTP service: stateless /analyze plus /health.

The service embeds no model.  Raw text is proxied to a sidecar adapter's
/attend endpoint, which returns a schema-v1 attention record; inlined
records skip the adapter entirely.  All configuration is immutable after
startup and requests share no state, so concurrent handling is safe.

Configuration resolution: explicit flags beat environment variables
(MUTED_ADAPTER_URL, MUTED_PORT, MUTED_MAX_CHARS) beat defaults.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import httpx
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .attention_core import CoreValidationError, ExtractionConfig
from .interchange import SCHEMA_VERSION, RecordValidationError, record_from_obj
from .pipeline import analyze, record_id
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    ClassifierVerdict,
    HealthResponse,
    PhaseTimings,
    RoleSpans,
)

DEFAULT_PORT = 8045
DEFAULT_MAX_CHARS = 2000


@dataclass(frozen=True, slots=True)
class ServiceConfig:
    adapter_url: str | None = None
    port: int = DEFAULT_PORT
    max_chars: int = DEFAULT_MAX_CHARS
    adapter_timeout_s: float = 30.0
    ui_dir: str | None = None


def config_from_env(
    adapter_url: str | None = None,
    port: int | None = None,
    max_chars: int | None = None,
    ui_dir: str | None = None,
) -> ServiceConfig:
    """Resolve configuration; explicit arguments win over environment."""
    return ServiceConfig(
        adapter_url=adapter_url or os.environ.get("MUTED_ADAPTER_URL") or None,
        port=port if port is not None else int(os.environ.get("MUTED_PORT", DEFAULT_PORT)),
        max_chars=max_chars
        if max_chars is not None
        else int(os.environ.get("MUTED_MAX_CHARS", DEFAULT_MAX_CHARS)),
        ui_dir=ui_dir or os.environ.get("MUTED_UI_DIR") or None,
    )


def _error(status: int, error: str, detail: str | None = None) -> JSONResponse:
    body: dict = {"error": error}
    if detail:
        body["detail"] = detail
    return JSONResponse(status_code=status, content=body)


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or config_from_env()
    app = FastAPI(title="muted", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def on_bad_request(request: Request, exc: RequestValidationError):
        return _error(400, "invalid_request", str(exc.errors()[:3]))

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", schema_version=SCHEMA_VERSION)

    @app.post("/analyze", response_model=AnalyzeResponse)
    def analyze_endpoint(req: AnalyzeRequest):
        if (req.text is None) == (req.record is None):
            return _error(400, "invalid_request", "provide exactly one of 'text' or 'record'")

        if req.text is not None:
            if len(req.text) > config.max_chars:
                return _error(
                    413,
                    "text_too_long",
                    f"text has {len(req.text)} characters, limit is {config.max_chars}",
                )
            record_obj = _fetch_record_from_adapter(config, req.text, req.language)
            if isinstance(record_obj, JSONResponse):
                return record_obj
        else:
            record_obj = req.record

        try:
            record = record_from_obj(record_obj, strict=True)
        except RecordValidationError as e:
            return _error(400, "invalid_record", str(e))

        try:
            cfg = ExtractionConfig(threshold=req.threshold, mode=req.mode)
            result = analyze(record, cfg, req.expand_modifiers, req.palette)
        except (CoreValidationError, ValueError) as e:
            return _error(400, "invalid_input", str(e))

        roles = (
            None
            if result.pair is None
            else RoleSpans(
                target=list(result.pair.target_char_spans),
                argument=list(result.pair.argument_char_spans),
            )
        )
        return AnalyzeResponse(
            schema_version=SCHEMA_VERSION,
            record_id=record_id(record),
            classifier=ClassifierVerdict(
                label=record.classifier_label, score=record.classifier_score
            ),
            word_scores=[(w, s) for w, s in result.pred.word_scores],
            selected_words=sorted(result.pred.selected_words),
            char_spans=list(result.pred.char_spans),
            roles=roles,
            heatmap_html=result.heatmap_html,
            roles_html=result.roles_html,
            elapsed=PhaseTimings(
                span_prediction=result.span_prediction_s,
                attention_map=result.attention_map_s,
                role_visuals=result.role_visuals_s,
                total=result.total_s,
            ),
        )

    if config.ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app


def _fetch_record_from_adapter(config: ServiceConfig, text: str, language: str):
    """POST the text to the adapter's /attend; JSONResponse on failure."""
    if not config.adapter_url:
        return _error(
            502,
            "adapter_unreachable",
            "no adapter configured (set MUTED_ADAPTER_URL or --adapter-url)",
        )
    url = config.adapter_url.rstrip("/") + "/attend"
    try:
        resp = httpx.post(
            url,
            json={"text": text, "language": language},
            timeout=config.adapter_timeout_s,
        )
    except httpx.HTTPError as e:
        return _error(502, "adapter_unreachable", f"{url}: {e.__class__.__name__}")
    if resp.status_code != 200:
        return _error(
            502, "adapter_unreachable", f"{url} answered {resp.status_code}"
        )
    try:
        return resp.json()
    except ValueError:
        return _error(502, "adapter_unreachable", f"{url} returned non-JSON body")


def run_server(config: ServiceConfig, host: str = "127.0.0.1") -> None:
    import uvicorn

    uvicorn.run(create_app(config), host=host, port=config.port)
