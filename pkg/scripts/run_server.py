#!/usr/bin/env python3
"""Serve the metric API with uvicorn using the GRASPBENCH_* settings."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

import uvicorn

from src.graspbench.cli import configure_logging
from src.graspbench.config.settings import get_settings


def main() -> None:
    settings = get_settings()
    configure_logging(settings.log_level)
    uvicorn.run(
        "src.graspbench.api.server:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=settings.api_reload,
        log_level=settings.log_level,
    )


if __name__ == "__main__":
    main()
