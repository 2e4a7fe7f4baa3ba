"""Resolved per-run configuration, recorded next to every command's outputs."""

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError

from ..exceptions import ConfigError
from ..utils.validators import ParameterValidator
from .settings import Settings

RUN_CONFIG_FILE = "run_config.json"


class RunMetadata(BaseModel):
    """Holds the only non-reproducible fields of a run record."""

    created_at: str
    version: str


class RunConfig(BaseModel):
    """Everything a command ran with, after resolving env, flags and config file."""

    command: str
    seed: int
    workers: int
    split_mode: Optional[str] = None
    augment_spec: Optional[str] = None
    jaccard_mode: str
    angle_inclusive: bool
    loss_lambda: float
    loss_lambda2: float
    l1_variant: str
    options: Dict[str, Any] = Field(default_factory=dict, description="Command inputs, outputs and flags")
    settings: Dict[str, Any] = Field(default_factory=dict)
    metadata: RunMetadata


def _json_value(value: Any) -> Any:
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, tuple):
        return [_json_value(v) for v in value]
    return value


def load_config_file(path: Optional[str]) -> Dict[str, Any]:
    """Read a ``--config`` JSON object; an absent path gives no overrides."""
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ConfigError(f"Cannot read config file {path}: {exc}", {"path": str(path)}) from exc
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must hold a JSON object", {"path": str(path)})
    return data


def resolve_run_config(
    command: str,
    settings: Settings,
    flags: Dict[str, Any],
    config_path: Optional[str] = None,
) -> Tuple[RunConfig, Settings]:
    """
    Merge configuration sources, later ones winning.

    Order: ``settings`` (environment and ``.env``), then command-line flags
    that were set, then the ``--config`` file. Keys naming a settings field
    update the settings; all other keys become command options.

    Returns:
        The run record and the resolved settings

    Raises:
        ConfigError: If the merged settings do not validate
    """
    merged: Dict[str, Any] = {**ParameterValidator.clean_overrides(flags), **load_config_file(config_path)}
    fields = set(Settings.model_fields)
    setting_updates = {k: v for k, v in merged.items() if k in fields}
    options = {k: _json_value(v) for k, v in sorted(merged.items()) if k not in fields}

    try:
        resolved = Settings(**{**settings.model_dump(), **setting_updates})
    except ValidationError as exc:
        raise ConfigError(f"Invalid configuration: {exc}", {"command": command}) from exc

    from .. import __version__

    record = RunConfig(
        command=command,
        seed=resolved.seed,
        workers=resolved.workers,
        split_mode=options.get("split_mode"),
        augment_spec=options.get("augment_spec"),
        jaccard_mode=resolved.jaccard_mode,
        angle_inclusive=resolved.angle_inclusive,
        loss_lambda=resolved.loss_lambda,
        loss_lambda2=resolved.loss_lambda2,
        l1_variant=resolved.l1_variant,
        options=options,
        settings=resolved.model_dump(mode="json"),
        metadata=RunMetadata(
            created_at=datetime.now(timezone.utc).isoformat(),
            version=__version__,
        ),
    )
    return record, resolved


def write_run_config(config: RunConfig, out_dir: Path) -> Path:
    """Write ``run_config.json`` into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / RUN_CONFIG_FILE
    path.write_text(config.model_dump_json(indent=2) + "\n")
    return path
