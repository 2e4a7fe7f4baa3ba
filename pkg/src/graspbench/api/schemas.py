"""Pydantic schemas for API requests and responses."""

from typing import List, Optional

from pydantic import BaseModel, Field

from ..geometry import GraspPose5D


class PoseModel(BaseModel):
    """A 5-D grasp; any angle is accepted and normalised to [-90, 90)."""

    x: float = Field(..., description="Centre x (pixels)")
    y: float = Field(..., description="Centre y (pixels)")
    theta: float = Field(..., description="Closing-axis angle (degrees)")
    h: float = Field(..., gt=0, description="Plate size (pixels)")
    w: float = Field(..., gt=0, description="Opening (pixels)")

    def to_pose(self) -> GraspPose5D:
        return GraspPose5D.from_unnormalized(self.x, self.y, self.theta, self.h, self.w)


class JaccardRequest(BaseModel):
    """Request for the Jaccard index of two grasps."""

    predicted: PoseModel
    ground_truth: PoseModel
    mode: Optional[str] = Field(None, description="rotated or axis_aligned; defaults to settings")


class JaccardResponse(BaseModel):
    """Response for the Jaccard index."""

    jaccard: float = Field(..., description="Intersection over union in [0, 1]")
    mode: str = Field(..., description="Overlap mode used")


class IsCorrectRequest(BaseModel):
    """Request for scoring one prediction with the rectangle metric."""

    predicted: PoseModel
    ground_truths: List[PoseModel] = Field(..., description="Ground-truth grasps of the scene")
    angle_threshold: Optional[float] = Field(None, gt=0, le=90, description="Override angle limit")
    jaccard_threshold: Optional[float] = Field(None, ge=0, lt=1, description="Override Jaccard limit")
    jaccard_mode: Optional[str] = Field(None, description="Override overlap mode")


class IsCorrectResponse(BaseModel):
    """Response for the rectangle metric."""

    correct: bool
    gt_index: int = Field(..., description="Reported ground truth")
    angle_diff: float = Field(..., description="Angle difference modulo 180 (degrees)")
    jaccard: float
    parameters: dict = Field(..., description="Metric thresholds used")


class AngleClassRequest(BaseModel):
    """Request for the angle class of a grasp angle."""

    theta: float = Field(..., description="Angle in degrees; normalised to [-90, 90)")


class AngleClassResponse(BaseModel):
    """Response for the angle class."""

    theta: float = Field(..., description="Normalised angle")
    class_index: int = Field(..., description="Angle class in 1..19")
    bin_center: float = Field(..., description="Centre of the class bin (degrees)")


class CredibilityRequest(BaseModel):
    """Request for the credibility rule."""

    class_probs: List[float] = Field(..., description="Probabilities over 20 classes, background first")


class CredibilityResponse(BaseModel):
    """Response for the credibility rule."""

    credible: bool
    class_index: Optional[int] = Field(None, description="Best angle class when credible")
    angle: Optional[float] = Field(None, description="Bin centre of that class")


class HealthCheckResponse(BaseModel):
    """Health check response."""

    status: str = Field("healthy", description="Service status")
    version: str = Field(..., description="API version")
    jaccard_mode: str = Field(..., description="Default overlap mode")
    default_parameters: dict = Field(..., description="Default metric thresholds")
