"""Unit tests for the grasp plotter."""

import pytest

from src.graspbench.geometry import GraspPose5D
from src.graspbench.visualisation import GraspPlotter


@pytest.fixture
def plotter(test_settings):
    return GraspPlotter(test_settings)


class TestGraspPlotter:
    """Test suite for overlays and loss curves."""

    def test_overlay_saved(self, plotter, simple_sample, tmp_path):
        """Test an overlay with scored predictions is written."""
        path = tmp_path / "overlay.png"
        prediction = GraspPose5D(39.5, 29.5, 0.0, 10.0, 24.0)
        fig, ax = plotter.plot_overlay(simple_sample, [prediction], [True], save_path=str(path))
        assert path.exists()
        assert ax.get_title() == "scene_a"
        # one outline per grasp plus two plate edges each
        assert len(ax.patches) == 2
        assert len(ax.lines) == 4
        plotter.close(fig)

    def test_overlay_unscored(self, plotter, simple_sample):
        """Test predictions without outcomes still draw."""
        fig, ax = plotter.plot_overlay(simple_sample, [GraspPose5D(10, 10, 45, 5, 5)])
        labels = [t.get_text() for t in ax.get_legend().get_texts()]
        assert labels == ["Ground truth", "Prediction"]
        plotter.close(fig)

    def test_loss_trajectory(self, plotter, tmp_path):
        """Test one curve per trajectory."""
        path = tmp_path / "loss.png"
        fig, ax = plotter.plot_loss_trajectory({"total": [3, 2, 1], "classification": [2, 1.5, 1]}, save_path=str(path))
        assert len(ax.get_lines()) == 2
        assert path.exists()
        plotter.close(fig)
