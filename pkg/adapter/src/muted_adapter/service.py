"""HTTP front for the adapter: POST /attend and GET /health.

Requests are handled concurrently but inference is serialized inside
AttendService; per-request data stays on the request.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .export import SCHEMA_VERSION, AttendService
from .model import TextTooLongError

DEFAULT_PORT = 8046


class AttendRequest(BaseModel):
    text: str = Field(min_length=1)
    language: str = "en"


def service_from_env(
    model_spec: str | None = None,
    parser_spec: str | None = None,
    max_chars: int | None = None,
) -> AttendService:
    return AttendService(
        model_spec=model_spec or os.environ.get("ADAPTER_MODEL") or None,
        parser_spec=parser_spec or os.environ.get("ADAPTER_PARSER") or None,
        max_chars=max_chars
        if max_chars is not None
        else int(os.environ.get("ADAPTER_MAX_CHARS", 2000)),
    )


def create_app(service: AttendService | None = None) -> FastAPI:
    service = service or service_from_env()
    app = FastAPI(title="muted-adapter", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def on_bad_request(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "invalid_input", "detail": str(exc.errors()[:3])},
        )

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "schema_version": SCHEMA_VERSION,
            "model": service.backend.name,
            "parser": type(service.parser).__name__ if service.parser else None,
        }

    @app.post("/attend")
    def attend(req: AttendRequest):
        try:
            return service.attend(req.text, req.language)
        except TextTooLongError as e:
            return JSONResponse(status_code=413, content={"error": "text_too_long", "detail": str(e)})
        except ValueError as e:
            return JSONResponse(status_code=400, content={"error": "invalid_input", "detail": str(e)})

    return app


def run_server(service: AttendService, host: str = "127.0.0.1", port: int | None = None) -> None:
    import uvicorn

    port = port if port is not None else int(os.environ.get("ADAPTER_PORT", DEFAULT_PORT))
    uvicorn.run(create_app(service), host=host, port=port)
