"""Configuration settings for graspbench."""

from pathlib import Path
from typing import Optional, Tuple

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from ``GRASPBENCH_*`` environment variables and ``.env``."""

    # Data
    dataset_root: Optional[Path] = Field(None, description="Default dataset directory")
    seed: int = Field(0, ge=0, description="Seed for splits, augmentation and synthetic data")
    workers: int = Field(1, ge=1, description="Worker pool size for per-file work")
    annotation_tolerance: float = Field(
        1e-6, gt=0, description="Relative tolerance of the rectangle check on annotations"
    )

    # Metric
    jaccard_mode: str = Field("rotated", description="rotated or axis_aligned")
    angle_threshold: float = Field(30.0, gt=0, le=90, description="Angle difference limit (degrees)")
    angle_inclusive: bool = Field(True, description="Whether the angle limit itself passes")
    jaccard_threshold: float = Field(0.25, ge=0, lt=1, description="Jaccard index must exceed this")
    top_k: int = Field(1, ge=1, description="Predictions scored per sample")

    # Losses
    loss_lambda: float = Field(1.0, ge=0, description="Proposal regression weight")
    loss_lambda2: float = Field(1.0, ge=0, description="Configuration regression weight")
    l1_variant: str = Field("l1", description="l1 or smooth_l1")
    normalize_cls: bool = Field(False, description="Average classification terms over the batch")
    anchor_scales: Tuple[float, float, float] = Field((32.0, 64.0, 128.0))
    anchor_aspects: Tuple[float, float, float] = Field((0.5, 1.0, 2.0))

    # Baseline predictor
    pca_width_factor: float = Field(1.2, gt=0, description="Opening as a multiple of the minor extent")
    pca_height_factor: float = Field(0.6, gt=0, description="Plate size as a multiple of the major extent")

    # API and logging
    api_host: str = Field("127.0.0.1", description="API host address")
    api_port: int = Field(8000, ge=1024, le=65535, description="API port")
    api_reload: bool = Field(False, description="Enable auto-reload for development")
    log_level: str = Field("info", description="Logging level")

    # Visualisation
    plot_dpi: int = Field(100, gt=0, description="Overlay resolution (DPI)")

    model_config = SettingsConfigDict(
        env_prefix="GRASPBENCH_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    @field_validator("jaccard_mode")
    @classmethod
    def validate_jaccard_mode(cls, v: str) -> str:
        """Validate jaccard mode."""
        valid_choices = ["rotated", "axis_aligned"]
        if v.lower() not in valid_choices:
            raise ValueError(f"Invalid jaccard mode. Must be one of: {valid_choices}")
        return v.lower()

    @field_validator("l1_variant")
    @classmethod
    def validate_l1_variant(cls, v: str) -> str:
        """Validate regression loss variant."""
        valid_choices = ["l1", "smooth_l1"]
        if v.lower() not in valid_choices:
            raise ValueError(f"Invalid l1 variant. Must be one of: {valid_choices}")
        return v.lower()

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate logging level name."""
        valid_choices = ["debug", "info", "warning", "error", "critical"]
        if v.lower() not in valid_choices:
            raise ValueError(f"Invalid log level. Must be one of: {valid_choices}")
        return v.lower()

    @field_validator("anchor_scales", "anchor_aspects")
    @classmethod
    def validate_positive_triplet(cls, v: Tuple[float, float, float]) -> Tuple[float, float, float]:
        """Anchor scales and aspects must be positive."""
        if any(value <= 0 for value in v):
            raise ValueError(f"Anchor scales and aspects must be positive, got {v}")
        return v


def get_settings() -> Settings:
    """Get application settings."""
    return Settings()
