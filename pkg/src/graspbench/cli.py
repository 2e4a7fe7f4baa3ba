"""Command-line entry point: ``graspbench <command> [options]``.

Every command resolves its configuration (environment, then flags, then a
``--config`` JSON file), records it as ``run_config.json`` in its output
directory and exits 0 only when it succeeded and its checks passed. Errors
are printed to stderr as JSON.
"""

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, TypeVar

import numpy as np
from pydantic import ValidationError

from .config.run_config import RunConfig, resolve_run_config, write_run_config
from .config.settings import Settings, get_settings
from .data.canonical import (
    SplitRecord,
    read_dataset,
    read_predictions,
    read_split,
    write_dataset,
    write_json,
    write_load_report,
    write_predictions,
    write_sample,
)
from .data.cornell import load_cornell
from .data.jacquard import load_jacquard
from .data.sample import Sample, SplitSpec
from .data.splits import split
from .data.synthetic import make_bar_scenes
from .evaluation.experiments import run_scene_shift
from .evaluation.metric import MetricConfig, evaluate, is_correct
from .evaluation.predictors import PredictorFactory
from .exceptions import ConfigError, GraspBenchError, InvalidSample
from .losses.gradcheck import run_gradcheck
from .losses.matching import POSITIVE
from .losses.toy_head import CLASSIFICATION_TARGET, auto_learning_rate, fit_toy_head, make_toy_problem
from .preprocessing.augmentation import AugmentSpec, iter_expand
from .preprocessing.masking import composite, to_rgd

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# argparse keys that are not configuration
_INTERNAL_KEYS = ("handler", "command", "config")

DATASET_FORMATS = ("cornell", "jacquard", "canonical")


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _map(fn: Callable[[T], R], items: Sequence[T], workers: int) -> List[R]:
    """Ordered map over a thread pool; results do not depend on ``workers``."""
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _out_dir(options: Dict[str, Any]) -> Path:
    if not options.get("out"):
        raise ConfigError("An output directory is required (--out)")
    out = Path(options["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _dataset_dir(options: Dict[str, Any], settings: Settings) -> Path:
    path = options.get("dataset") or settings.dataset_root
    if path is None:
        raise ConfigError("No dataset directory given and GRASPBENCH_DATASET_ROOT is unset")
    return Path(path)


def _metric_config(settings: Settings) -> MetricConfig:
    return MetricConfig.from_settings(settings)


def _restrict(samples: List[Sample], ids: Optional[Iterable[str]]) -> List[Sample]:
    if ids is None:
        return samples
    wanted = set(ids)
    return [s for s in samples if s.id in wanted]


# commands ------------------------------------------------------------------


def cmd_convert(options: Dict[str, Any], settings: Settings, run: RunConfig) -> int:
    """Convert a Cornell, Jacquard or canonical dataset into canonical records."""
    source = _dataset_dir(options, settings)
    fmt = options.get("format", "cornell")
    if fmt not in DATASET_FORMATS:
        raise ConfigError(f"Unknown dataset format: {fmt}", {"format": fmt, "choices": list(DATASET_FORMATS)})
    out = _out_dir(options)
    if fmt == "cornell":
        samples, report = load_cornell(source, settings.workers, settings.annotation_tolerance)
    elif fmt == "jacquard":
        samples, report = load_jacquard(source, settings.workers)
    else:
        samples, report = read_dataset(source), None

    write_dataset(samples, out, settings.annotation_tolerance)
    write_run_config(run, out)
    if report is not None:
        write_load_report(report, out)
        print(report.summary())
    print(f"Wrote {len(samples)} samples to {out}")
    return 0


def cmd_split(options: Dict[str, Any], settings: Settings, run: RunConfig) -> int:
    """Split a canonical dataset and write the train/test ids."""
    samples = read_dataset(_dataset_dir(options, settings))
    spec = SplitSpec(
        mode=options.get("split_mode", "image_wise"),
        ratio_train=options.get("ratio_train", 0.8),
        seed=settings.seed,
    )
    train, test = split(samples, spec)
    out = _out_dir(options)
    record = SplitRecord(
        mode=spec.mode,
        ratio_train=spec.ratio_train,
        seed=spec.seed,
        train=[s.id for s in train],
        test=[s.id for s in test],
    )
    (out / "split.json").write_text(record.model_dump_json(indent=2) + "\n")
    write_run_config(run, out)
    print(f"{spec.mode}: {len(train)} train / {len(test)} test")
    return 0


def cmd_augment(options: Dict[str, Any], settings: Settings, run: RunConfig) -> int:
    """Expand the training partition with rotation, translation and brightness variants."""
    samples = read_dataset(_dataset_dir(options, settings))
    if options.get("split"):
        samples = _restrict(samples, read_split(options["split"]).train)
    spec = AugmentSpec.from_file(options["augment_spec"]) if options.get("augment_spec") else AugmentSpec()
    if options.get("multiplier") is not None:
        try:
            spec = AugmentSpec.model_validate(
                {**spec.model_dump(), "target_multiplier": options["multiplier"]}
            )
        except ValidationError as exc:
            raise ConfigError(
                f"Invalid augment multiplier: {exc}", {"multiplier": options["multiplier"]}
            ) from exc
    out = _out_dir(options)
    count = 0
    for variant in iter_expand(samples, spec, settings.seed):
        write_sample(variant, out, settings.annotation_tolerance)
        count += 1
    write_json(out / "augment_spec.json", spec.model_dump(mode="json"))
    write_run_config(run, out)
    print(f"Wrote {count} augmented samples ({len(samples)} x {spec.target_multiplier})")
    return 0


def cmd_maskify(options: Dict[str, Any], settings: Settings, run: RunConfig) -> int:
    """Paint every background pixel white using each sample's mask."""
    samples = read_dataset(_dataset_dir(options, settings))
    out = _out_dir(options)

    def convert(sample: Sample) -> Sample:
        if not sample.has_mask:
            raise InvalidSample(f"Sample {sample.id} has no mask", {"id": sample.id})
        masked = composite(sample.rgb, sample.mask)
        result = sample.evolve(rgb_data=masked.rgb, rgb_path=None, provenance=masked.provenance)
        write_sample(result, out, settings.annotation_tolerance)
        sample.release()
        return result

    done = _map(convert, samples, settings.workers)
    write_run_config(run, out)
    print(f"Composited {len(done)} samples")
    return 0


def cmd_rgd(options: Dict[str, Any], settings: Settings, run: RunConfig) -> int:
    """Replace the blue channel with normalised depth."""
    samples = read_dataset(_dataset_dir(options, settings))
    out = _out_dir(options)
    d_min, d_max = options.get("d_min"), options.get("d_max")

    def convert(sample: Sample) -> Sample:
        if not sample.has_depth:
            raise InvalidSample(f"Sample {sample.id} has no depth map", {"id": sample.id})
        image = to_rgd(sample.rgb, sample.depth, d_min, d_max)
        result = sample.evolve(rgb_data=image.rgb, rgb_path=None, provenance=image.provenance)
        write_sample(result, out, settings.annotation_tolerance)
        sample.release()
        return result

    done = _map(convert, samples, settings.workers)
    write_run_config(run, out)
    print(f"Converted {len(done)} samples to RGD")
    return 0


def cmd_baseline(options: Dict[str, Any], settings: Settings, run: RunConfig) -> int:
    """Predict one grasp per sample with a PCA predictor."""
    samples = read_dataset(_dataset_dir(options, settings))
    if options.get("split"):
        samples = _restrict(samples, read_split(options["split"]).test)
    predictor = PredictorFactory.create(
        options.get("predictor", "mask_pca"), settings.pca_width_factor, settings.pca_height_factor
    )
    poses, flags = predictor.predict_all(samples)
    out = _out_dir(options)
    write_predictions(out / "predictions.json", poses, flags)
    write_run_config(run, out)
    print(f"Predicted {len(poses)} grasps with {predictor.predictor_type} ({len(flags)} flagged)")
    return 0


def cmd_evaluate(options: Dict[str, Any], settings: Settings, run: RunConfig) -> int:
    """Score predictions with the rectangle metric."""
    samples = read_dataset(_dataset_dir(options, settings))
    split_spec = None
    if options.get("split"):
        record = read_split(options["split"])
        samples = _restrict(samples, record.test)
        split_spec = SplitSpec(mode=record.mode, ratio_train=record.ratio_train, seed=record.seed)
    if not options.get("predictions"):
        raise ConfigError("A predictions file is required (--predictions)")
    predictions = read_predictions(options["predictions"])
    report = evaluate(
        predictions,
        samples,
        split=split_spec,
        config=_metric_config(settings),
        top_k=settings.top_k,
        tol=settings.annotation_tolerance,
    )
    if options.get("out"):
        out = _out_dir(options)
        (out / "eval_report.json").write_text(report.to_json() + "\n")
        write_run_config(run, out)
    print(report.to_table(max_rows=options.get("max_rows")))
    return 0


def cmd_gradcheck(options: Dict[str, Any], settings: Settings, run: RunConfig) -> int:
    """Compare analytic loss gradients with central finite differences."""
    report = run_gradcheck(
        n_batches=options.get("batches", 100),
        seed=settings.seed,
        lam=settings.loss_lambda,
        lam2=settings.loss_lambda2,
        variant=settings.l1_variant,
        normalize_cls=settings.normalize_cls,
        step=options.get("step", 1e-5),
        tolerance=options.get("tolerance", 1e-4),
    )
    if options.get("out"):
        out = _out_dir(options)
        write_json(out / "gradcheck.json", report.to_dict())
        write_run_config(run, out)
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    print(f"max relative error: {report.max_rel_error:.3e} ({'pass' if report.passed else 'FAIL'})")
    return 0 if report.passed else 1


def cmd_visualize(options: Dict[str, Any], settings: Settings, run: RunConfig) -> int:
    """Draw ground truth and predictions over each scene image."""
    from .visualisation.plotter import GraspPlotter

    samples = read_dataset(_dataset_dir(options, settings))
    if options.get("limit"):
        samples = samples[: int(options["limit"])]
    predictions = read_predictions(options["predictions"]) if options.get("predictions") else {}
    config = _metric_config(settings)
    out = _out_dir(options)
    plotter = GraspPlotter(settings)

    for sample in samples:
        ranked = predictions.get(sample.id, [])[: settings.top_k]
        gts = sample.poses(settings.annotation_tolerance)
        correct = [is_correct(p, gts, config).correct for p in ranked] if gts and ranked else None
        fig, _ = plotter.plot_overlay(sample, ranked, correct, save_path=str(out / f"{sample.id}.png"))
        plotter.close(fig)
        sample.release()

    write_run_config(run, out)
    print(f"Wrote {len(samples)} overlays to {out}")
    return 0


def cmd_fit_toy(options: Dict[str, Any], settings: Settings, run: RunConfig) -> int:
    """Fit the linear toy head on a seeded separable problem."""
    features, proposals, configs = make_toy_problem(
        settings.seed,
        scales=settings.anchor_scales,
        aspects=settings.anchor_aspects,
        n_boxes=options.get("boxes", 2),
    )
    loss_options = {
        "lam": settings.loss_lambda,
        "lam2": settings.loss_lambda2,
        "variant": settings.l1_variant,
        "normalize_cls": settings.normalize_cls,
    }
    steps = options.get("steps", 100)
    rate = options.get("lr")
    if rate is None:
        rate = auto_learning_rate(features, proposals, configs, steps, **loss_options)
    result = fit_toy_head(features, proposals, configs, steps, rate, **loss_options)

    summary = result.to_dict()
    summary["non_increasing"] = result.is_non_increasing()
    summary["converged"] = result.converged()
    summary["n_proposals"] = proposals.n
    summary["n_positive"] = int(np.sum(proposals.labels == POSITIVE))
    if options.get("out"):
        from .visualisation.plotter import GraspPlotter

        out = _out_dir(options)
        write_json(out / "fit_toy.json", summary)
        plotter = GraspPlotter(settings)
        fig, _ = plotter.plot_loss_trajectory(
            {"total": result.trajectory, "classification": result.classification},
            save_path=str(out / "trajectory.png"),
        )
        plotter.close(fig)
        write_run_config(run, out)
    print(
        f"lr {result.learning_rate:g}: loss {result.trajectory[0]:.4f} -> {result.final_loss:.4f} "
        f"(classification {result.final_classification:.4f})"
    )
    if not result.converged():
        logger.error(
            "Toy head did not reach classification loss %g (got %.4g)",
            CLASSIFICATION_TARGET, result.final_classification,
        )
        return 1
    return 0


def cmd_scene_shift(options: Dict[str, Any], settings: Settings, run: RunConfig) -> int:
    """Compare raw and mask-composited accuracy on cluttered synthetic scenes."""
    result = run_scene_shift(
        n=options.get("n", 200),
        seed=settings.seed,
        config=_metric_config(settings),
        width_factor=settings.pca_width_factor,
        height_factor=settings.pca_height_factor,
    )
    if options.get("out"):
        out = _out_dir(options)
        write_json(out / "scene_shift.json", result.to_dict())
        write_run_config(run, out)
    print(f"raw accuracy:        {result.raw.accuracy:.4f}")
    print(f"composited accuracy: {result.composited.accuracy:.4f}")
    return 0


def cmd_synth(options: Dict[str, Any], settings: Settings, run: RunConfig) -> int:
    """Write seeded synthetic bar scenes as a canonical dataset."""
    samples = make_bar_scenes(
        options.get("n", 200),
        seed=settings.seed,
        n_categories=options.get("categories", 1),
        background=options.get("background", "white"),
    )
    out = _out_dir(options)
    write_dataset(samples, out)
    write_run_config(run, out)
    print(f"Wrote {len(samples)} synthetic scenes to {out}")
    return 0


# parser --------------------------------------------------------------------


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file whose keys override flags and environment")
    common.add_argument("--seed", type=int, default=None, help="Seed (default: GRASPBENCH_SEED or 0)")
    common.add_argument("--workers", type=int, default=None, help="Worker pool size")
    common.add_argument("--log-level", dest="log_level", default=None,
                        choices=["debug", "info", "warning", "error", "critical"])
    return common


def _metric_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--jaccard-mode", dest="jaccard_mode", choices=["rotated", "axis_aligned"], default=None)
    parser.add_argument("--angle-exclusive", dest="angle_inclusive", action="store_const", const=False,
                        default=None, help="Treat the angle limit itself as a failure")
    parser.add_argument("--top-k", dest="top_k", type=int, default=None)


def _loss_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lambda", dest="loss_lambda", type=float, default=None)
    parser.add_argument("--lambda2", dest="loss_lambda2", type=float, default=None)
    parser.add_argument("--l1-variant", dest="l1_variant", choices=["l1", "smooth_l1"], default=None)
    parser.add_argument("--normalize-cls", dest="normalize_cls", action="store_const", const=True, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graspbench",
        description="Grasp representations, losses, data pipeline and evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("convert", cmd_convert, "Convert a dataset into canonical JSON records")
    p.add_argument("dataset", nargs="?", help="Dataset directory (default: GRASPBENCH_DATASET_ROOT)")
    p.add_argument("--format", choices=DATASET_FORMATS, default="cornell")
    p.add_argument("--out", required=True)

    p = add("split", cmd_split, "Split a canonical dataset into train and test ids")
    p.add_argument("dataset", nargs="?")
    p.add_argument("--mode", dest="split_mode", choices=["image_wise", "object_wise"], default="image_wise")
    p.add_argument("--ratio", dest="ratio_train", type=float, default=0.8)
    p.add_argument("--out", required=True)

    p = add("augment", cmd_augment, "Augment the training partition")
    p.add_argument("dataset", nargs="?")
    p.add_argument("--split", help="split.json; only its train ids are augmented")
    p.add_argument("--augment-spec", dest="augment_spec", help="AugmentSpec JSON file")
    p.add_argument("--multiplier", type=int, default=None, help="Override target_multiplier")
    p.add_argument("--out", required=True)

    p = add("maskify", cmd_maskify, "Composite images onto a white background")
    p.add_argument("dataset", nargs="?")
    p.add_argument("--out", required=True)

    p = add("rgd", cmd_rgd, "Replace the blue channel with normalised depth")
    p.add_argument("dataset", nargs="?")
    p.add_argument("--d-min", dest="d_min", type=float, default=None)
    p.add_argument("--d-max", dest="d_max", type=float, default=None)
    p.add_argument("--out", required=True)

    p = add("baseline", cmd_baseline, "Predict grasps with a PCA baseline")
    p.add_argument("dataset", nargs="?")
    p.add_argument("--predictor", choices=PredictorFactory.available_predictors(), default="mask_pca")
    p.add_argument("--split", help="split.json; only its test ids are predicted")
    p.add_argument("--out", required=True)

    p = add("evaluate", cmd_evaluate, "Score predictions with the rectangle metric")
    p.add_argument("dataset", nargs="?")
    p.add_argument("--predictions", required=True)
    p.add_argument("--split", help="split.json; only its test ids are scored")
    p.add_argument("--max-rows", dest="max_rows", type=int, default=None)
    p.add_argument("--out")
    _metric_flags(p)

    p = add("gradcheck", cmd_gradcheck, "Check loss gradients against finite differences")
    p.add_argument("--batches", type=int, default=100)
    p.add_argument("--step", type=float, default=1e-5)
    p.add_argument("--tolerance", type=float, default=1e-4)
    p.add_argument("--out")
    _loss_flags(p)

    p = add("visualize", cmd_visualize, "Draw grasp overlays")
    p.add_argument("dataset", nargs="?")
    p.add_argument("--predictions")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--out", required=True)
    _metric_flags(p)

    p = add("fit-toy", cmd_fit_toy, "Fit the linear toy head by gradient descent")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--lr", type=float, default=None, help="Learning rate (default: auto)")
    p.add_argument("--boxes", type=int, default=2, help="Ground-truth boxes placed on anchors")
    p.add_argument("--out")
    _loss_flags(p)

    p = add("scene-shift", cmd_scene_shift, "Raw versus composited accuracy on cluttered scenes")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--out")
    _metric_flags(p)

    p = add("synth", cmd_synth, "Write synthetic bar scenes")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--categories", type=int, default=1)
    p.add_argument("--background", choices=["white", "clutter"], default="white")
    p.add_argument("--out", required=True)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    args = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k not in _INTERNAL_KEYS}
    try:
        try:
            settings = get_settings()
        except ValidationError as exc:
            raise ConfigError(f"Invalid environment configuration: {exc}") from exc
        run, settings = resolve_run_config(args.command, settings, flags, args.config)
        configure_logging(settings.log_level)
        logger.info("Running %s", args.command)
        return args.handler(dict(run.options), settings, run)
    except GraspBenchError as exc:
        print(json.dumps(exc.to_dict(), sort_keys=True), file=sys.stderr)
        return 1
    except ValueError as exc:
        logger.debug("Unhandled value error", exc_info=True)
        error = ConfigError(str(exc), {"command": args.command})
        print(json.dumps(error.to_dict(), sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
