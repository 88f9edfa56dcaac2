"""HTTP service layer. ``uvicorn arctanpi.service:app`` serves it."""

from .app import app

__all__ = ["app"]
