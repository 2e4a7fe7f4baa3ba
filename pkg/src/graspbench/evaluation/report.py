"""Evaluation reports: JSON schema and a human-readable table."""

from typing import List, Optional

from pydantic import BaseModel, Field


class SampleResult(BaseModel):
    """Outcome for one scene."""

    id: str
    predicted: List[float] = Field(..., description="x, y, theta, h, w")
    matched_gt: Optional[int] = None
    angle_diff: float
    jaccard: float
    correct: bool


class EvalMetadata(BaseModel):
    """Metric settings in force, and the only timestamp of the report."""

    jaccard_mode: str
    angle_threshold: float
    angle_inclusive: bool
    jaccard_threshold: float
    top_k: int = 1
    created_at: Optional[str] = None


class EvalReport(BaseModel):
    """Per-sample correctness and aggregate accuracy."""

    split_mode: Optional[str] = None
    per_sample: List[SampleResult]
    n_correct: int
    n_total: int
    accuracy: float
    skipped: List[str] = Field(default_factory=list)
    metadata: EvalMetadata

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    def to_table(self, max_rows: Optional[int] = None) -> str:
        """
        Render the report as fixed-width text.

        Args:
            max_rows: Only list this many samples; None lists all
        """
        rows = self.per_sample if max_rows is None else self.per_sample[:max_rows]
        width = max([len("sample")] + [len(r.id) for r in rows])
        lines = [
            f"{'sample':<{width}}  {'gt':>3}  {'angle':>7}  {'jaccard':>7}  correct",
            "-" * (width + 34),
        ]
        for r in rows:
            gt = "-" if r.matched_gt is None else str(r.matched_gt)
            lines.append(
                f"{r.id:<{width}}  {gt:>3}  {r.angle_diff:7.2f}  {r.jaccard:7.3f}  "
                f"{'yes' if r.correct else 'no'}"
            )
        if len(rows) < len(self.per_sample):
            lines.append(f"... {len(self.per_sample) - len(rows)} more")
        split = self.split_mode or "unspecified"
        op = "<=" if self.metadata.angle_inclusive else "<"
        lines.append("")
        lines.append(
            f"split: {split}  jaccard: {self.metadata.jaccard_mode}  "
            f"angle {op} {self.metadata.angle_threshold:g}  "
            f"jaccard > {self.metadata.jaccard_threshold:g}  top-{self.metadata.top_k}"
        )
        if self.skipped:
            lines.append(f"skipped (no ground truth): {len(self.skipped)}")
        lines.append(f"accuracy: {self.accuracy:.4f} ({self.n_correct}/{self.n_total})")
        return "\n".join(lines)
