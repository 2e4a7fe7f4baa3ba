"""Pytest configuration and shared fixtures."""

import pytest
import sys
import os
from typing import Generator, List

import numpy as np
from fastapi.testclient import TestClient

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.graspbench.config.settings import Settings
from src.graspbench.data.sample import Sample
from src.graspbench.data.synthetic import make_bar_scenes
from src.graspbench.geometry import GraspPose5D, pose_to_quad


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line("markers", "slow: larger oracle sweeps and experiments")


@pytest.fixture
def test_settings() -> Settings:
    """Create test settings."""
    return Settings(
        seed=0,
        workers=1,
        jaccard_mode="rotated",
        angle_threshold=30.0,
        angle_inclusive=True,
        jaccard_threshold=0.25,
        log_level="warning",
    )


@pytest.fixture
def test_client(test_settings: Settings) -> Generator[TestClient, None, None]:
    """Create test client for API."""
    from src.graspbench.api.server import create_app

    app = create_app(test_settings)
    with TestClient(app) as client:
        yield client


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded numpy generator."""
    return np.random.default_rng(12345)


@pytest.fixture
def square_pose() -> GraspPose5D:
    """A 10 x 10 grasp at (50, 50)."""
    return GraspPose5D(x=50.0, y=50.0, theta=0.0, h=10.0, w=10.0)


@pytest.fixture
def simple_sample() -> Sample:
    """A 60 x 80 scene with a solid square object, its mask and depth."""
    rgb = np.full((60, 80, 3), 200, dtype=np.uint8)
    rgb[20:40, 30:50] = (10, 120, 30)
    mask = np.zeros((60, 80), dtype=bool)
    mask[20:40, 30:50] = True
    depth = np.full((60, 80), 1.0, dtype=np.float32)
    depth[mask] = 0.8
    grasp = GraspPose5D(x=39.5, y=29.5, theta=0.0, h=10.0, w=24.0)
    return Sample(
        id="scene_a",
        grasps_pos=[pose_to_quad(grasp)],
        object_category="cube",
        rgb_data=rgb,
        mask_data=mask,
        depth_data=depth,
    )


@pytest.fixture
def bar_scenes() -> List[Sample]:
    """Twenty seeded synthetic bar scenes on white."""
    return make_bar_scenes(20, seed=3)
