"""API route handlers."""

from fastapi import APIRouter, Depends, HTTPException

from .. import __version__
from ..config.settings import Settings, get_settings
from ..evaluation.metric import MetricConfig, is_correct
from ..exceptions import GraspBenchError
from ..geometry import angle_to_class, class_to_angle, is_credible, jaccard, normalize_angle
from .schemas import (
    AngleClassRequest,
    AngleClassResponse,
    CredibilityRequest,
    CredibilityResponse,
    HealthCheckResponse,
    IsCorrectRequest,
    IsCorrectResponse,
    JaccardRequest,
    JaccardResponse,
)

router = APIRouter(prefix="/api/v1", tags=["metric"])


def _bad_request(error: GraspBenchError) -> HTTPException:
    return HTTPException(status_code=400, detail=error.to_dict())


def _check_mode(mode: str) -> str:
    if mode not in ("rotated", "axis_aligned"):
        raise HTTPException(status_code=400, detail=f"Unknown jaccard mode: {mode}")
    return mode


@router.post("/jaccard", response_model=JaccardResponse)
async def compute_jaccard(
    request: JaccardRequest,
    settings: Settings = Depends(get_settings)
):
    """Jaccard index of a predicted and a ground-truth grasp."""
    mode = _check_mode(request.mode or settings.jaccard_mode)
    try:
        value = jaccard(request.predicted.to_pose(), request.ground_truth.to_pose(), mode)
    except GraspBenchError as e:
        raise _bad_request(e)
    return JaccardResponse(jaccard=value, mode=mode)


@router.post("/is-correct", response_model=IsCorrectResponse)
async def score_prediction(
    request: IsCorrectRequest,
    settings: Settings = Depends(get_settings)
):
    """Rectangle-metric outcome of one prediction."""
    config = MetricConfig(
        angle_threshold=request.angle_threshold or settings.angle_threshold,
        angle_inclusive=settings.angle_inclusive,
        jaccard_threshold=(
            settings.jaccard_threshold if request.jaccard_threshold is None else request.jaccard_threshold
        ),
        jaccard_mode=_check_mode(request.jaccard_mode or settings.jaccard_mode),
    )
    try:
        outcome = is_correct(
            request.predicted.to_pose(), [g.to_pose() for g in request.ground_truths], config
        )
    except GraspBenchError as e:
        raise _bad_request(e)
    return IsCorrectResponse(
        correct=outcome.correct,
        gt_index=outcome.gt_index,
        angle_diff=outcome.angle_diff,
        jaccard=outcome.jaccard,
        parameters={
            "angle_threshold": config.angle_threshold,
            "angle_inclusive": config.angle_inclusive,
            "jaccard_threshold": config.jaccard_threshold,
            "jaccard_mode": config.jaccard_mode,
        },
    )


@router.post("/angle-class", response_model=AngleClassResponse)
async def angle_class(request: AngleClassRequest):
    """Angle class of a grasp angle."""
    try:
        theta = normalize_angle(request.theta)
        c = angle_to_class(theta)
    except GraspBenchError as e:
        raise _bad_request(e)
    return AngleClassResponse(theta=theta, class_index=c.index, bin_center=class_to_angle(c))


@router.post("/credibility", response_model=CredibilityResponse)
async def credibility(request: CredibilityRequest):
    """Apply the credibility rule to a class distribution."""
    try:
        credible, best = is_credible(request.class_probs)
    except GraspBenchError as e:
        raise _bad_request(e)
    if best is None:
        return CredibilityResponse(credible=credible)
    return CredibilityResponse(credible=credible, class_index=best.index, angle=class_to_angle(best))


@router.get("/health", response_model=HealthCheckResponse)
async def health_check(settings: Settings = Depends(get_settings)):
    """Health check endpoint."""
    return HealthCheckResponse(
        status="healthy",
        version=__version__,
        jaccard_mode=settings.jaccard_mode,
        default_parameters={
            "angle_threshold": settings.angle_threshold,
            "angle_inclusive": settings.angle_inclusive,
            "jaccard_threshold": settings.jaccard_threshold,
        }
    )
