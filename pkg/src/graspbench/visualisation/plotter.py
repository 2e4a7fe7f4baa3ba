"""Static overlays of grasps on scene images."""

from typing import Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.lines import Line2D  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from ..config.settings import Settings  # noqa: E402
from ..data.sample import Sample  # noqa: E402
from ..geometry import GraspPose5D, GraspQuad, pose_to_quad  # noqa: E402

GT_COLOR = "deepskyblue"
CORRECT_COLOR = "limegreen"
INCORRECT_COLOR = "red"
UNSCORED_COLOR = "gold"


class GraspPlotter:
    """Plotter for grasp overlays and loss trajectories."""

    def __init__(self, settings: Optional[Settings] = None):
        """Initialize plotter with settings."""
        self.settings = settings or Settings()
        plt.style.use('seaborn-v0_8-darkgrid')

    @staticmethod
    def _draw_quad(ax: plt.Axes, quad: GraspQuad, color: str, linestyle: str, linewidth: float) -> None:
        ax.add_patch(
            Polygon(quad.as_list(), closed=True, fill=False, edgecolor=color,
                    linestyle=linestyle, linewidth=linewidth)
        )
        # plate edges are v1-v2 and v3-v4
        (x1, y1), (x2, y2), (x3, y3), (x4, y4) = quad.vertices
        ax.plot([x1, x2], [y1, y2], color=color, linewidth=linewidth + 1.5)
        ax.plot([x3, x4], [y3, y4], color=color, linewidth=linewidth + 1.5)

    def plot_overlay(
        self,
        sample: Sample,
        predictions: Sequence[GraspPose5D] = (),
        correct: Optional[Sequence[bool]] = None,
        save_path: Optional[str] = None,
    ) -> Tuple[plt.Figure, plt.Axes]:
        """
        Draw ground truth (dashed) and predictions (solid) on the scene image.

        Args:
            sample: Scene with image and ground-truth grasps
            predictions: Predicted grasps
            correct: Per-prediction outcome; green if correct, red if not
            save_path: Optional path to save the figure

        Returns:
            Matplotlib figure and axes objects
        """
        rgb = sample.rgb
        height, width = rgb.shape[:2]
        fig, ax = plt.subplots(figsize=(width / 80.0, height / 80.0))
        ax.imshow(rgb)

        for quad in sample.grasps_pos:
            self._draw_quad(ax, quad, GT_COLOR, "--", 1.0)
        for i, pose in enumerate(predictions):
            if correct is None:
                color = UNSCORED_COLOR
            else:
                color = CORRECT_COLOR if correct[i] else INCORRECT_COLOR
            self._draw_quad(ax, pose_to_quad(pose), color, "-", 1.5)

        handles = [Line2D([0], [0], color=GT_COLOR, linestyle="--", label="Ground truth")]
        if predictions:
            if correct is None:
                handles.append(Line2D([0], [0], color=UNSCORED_COLOR, label="Prediction"))
            else:
                handles.append(Line2D([0], [0], color=CORRECT_COLOR, label="Correct"))
                handles.append(Line2D([0], [0], color=INCORRECT_COLOR, label="Incorrect"))
        ax.legend(handles=handles, loc="upper right", fontsize=8)

        ax.set_xlim(0, width)
        ax.set_ylim(height, 0)
        ax.set_title(sample.id, fontsize=10)
        ax.axis("off")
        plt.tight_layout()

        if save_path:
            plt.savefig(save_path, dpi=self.settings.plot_dpi, bbox_inches='tight')

        return fig, ax

    def plot_loss_trajectory(
        self,
        trajectories: Dict[str, List[float]],
        save_path: Optional[str] = None,
    ) -> Tuple[plt.Figure, plt.Axes]:
        """
        Plot loss against gradient-descent step.

        Args:
            trajectories: Curves by label, e.g. total and classification loss
            save_path: Optional path to save the figure
        """
        fig, ax = plt.subplots(figsize=(10, 5))
        colors = ['blue', 'red', 'green', 'purple', 'orange']
        for i, (label, values) in enumerate(trajectories.items()):
            ax.plot(range(len(values)), values, color=colors[i % len(colors)], linewidth=2, label=label)

        ax.set_xlabel('Step', fontsize=12)
        ax.set_ylabel('Loss', fontsize=12)
        ax.set_title('Toy Head Fit', fontsize=14, fontweight='bold')
        ax.legend(loc='best')
        ax.grid(True, alpha=0.3)
        plt.tight_layout()

        if save_path:
            plt.savefig(save_path, dpi=self.settings.plot_dpi, bbox_inches='tight')

        return fig, ax

    @staticmethod
    def close(fig: plt.Figure) -> None:
        plt.close(fig)
