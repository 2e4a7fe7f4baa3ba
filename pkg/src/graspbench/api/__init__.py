"""Metric service API."""

from .routes import router
from .server import create_app

__all__ = ["create_app", "router"]
