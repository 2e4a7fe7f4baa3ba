"""Validation utilities for arrays and run parameters."""

from typing import Any, Dict

import numpy as np

from ..exceptions import BadRange, ConfigError, InvalidSample, ShapeMismatch


class ArrayValidator:
    """Validator for image-like arrays."""

    @staticmethod
    def validate_rgb(rgb: np.ndarray) -> None:
        """
        Validate an RGB image.

        Args:
            rgb: Candidate H x W x 3 byte image

        Raises:
            InvalidSample: If the array is not H x W x 3 uint8
        """
        if rgb.ndim != 3 or rgb.shape[2] != 3:
            raise InvalidSample(f"RGB image must be H x W x 3, got shape {rgb.shape}")
        if rgb.dtype != np.uint8:
            raise InvalidSample(f"RGB image must be uint8, got {rgb.dtype}")

    @staticmethod
    def validate_same_size(rgb: np.ndarray, other: np.ndarray, name: str) -> None:
        """
        Validate that a per-pixel map shares the image's H x W.

        Raises:
            ShapeMismatch: If the leading two dimensions differ
        """
        if other.ndim != 2 or other.shape != rgb.shape[:2]:
            raise ShapeMismatch(
                f"{name} shape {other.shape} does not match image {rgb.shape[:2]}",
                {"image": list(rgb.shape[:2]), name: list(other.shape)},
            )

    @staticmethod
    def validate_range(low: float, high: float) -> None:
        """
        Validate a normalisation range.

        Raises:
            BadRange: If ``low >= high`` or either end is not finite
        """
        if not (np.isfinite(low) and np.isfinite(high)) or low >= high:
            raise BadRange(
                f"Range must satisfy low < high, got ({low}, {high})",
                {"low": low, "high": high},
            )


class ParameterValidator:
    """Validator for command parameters."""

    @staticmethod
    def validate_positive(value: float, name: str) -> None:
        """Raise ``ConfigError`` unless ``value`` is positive."""
        if value <= 0:
            raise ConfigError(f"{name} must be positive, got {value}", {name: value})

    @staticmethod
    def validate_non_negative(value: float, name: str) -> None:
        """Raise ``ConfigError`` if ``value`` is negative."""
        if value < 0:
            raise ConfigError(f"{name} must be non-negative, got {value}", {name: value})

    @staticmethod
    def clean_overrides(params: Dict[str, Any]) -> Dict[str, Any]:
        """
        Drop unset (None) overrides.

        Args:
            params: Candidate overrides, e.g. parsed CLI flags

        Returns:
            Only the keys that were actually set
        """
        return {key: value for key, value in params.items() if value is not None}

