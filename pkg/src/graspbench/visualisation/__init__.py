"""Visualisation module for grasp overlays."""

from .plotter import GraspPlotter

__all__ = ["GraspPlotter"]
