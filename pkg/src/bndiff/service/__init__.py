"""HTTP session service exposing the full inference-diff pipeline."""

from .app import app, create_app

__all__ = ["app", "create_app"]
