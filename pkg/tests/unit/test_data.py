"""Unit tests for dataset loaders, canonical records, shuffling and splits."""

import json
import os
from pathlib import Path

import numpy as np
import pytest

from src.graspbench.data import (
    PortableRandom,
    Sample,
    SplitSpec,
    load_cornell,
    load_jacquard,
    make_bar_scenes,
    parse_grasp_line,
    parse_rectangles,
    read_dataset,
    read_predictions,
    read_split,
    split,
    write_dataset,
    write_predictions,
)
from src.graspbench.data.canonical import pose_to_record, record_to_pose
from src.graspbench.data.imaging import write_depth, write_rgb
from src.graspbench.exceptions import (
    ConfigError,
    EmptyDataset,
    InvalidSample,
    MissingCategories,
    MissingImage,
    OutOfRange,
    ParseError,
)
from src.graspbench.geometry import GraspPose5D, GraspQuad, pose_to_quad
from tests.fixtures.test_data import CORNELL_IMAGES, CORNELL_RECTANGLE, JACQUARD_LINES


def rectangle_text(corners) -> str:
    return "".join(f"{x} {y}\n" for x, y in corners)


def make_cornell_scene(folder: Path, number: int, text: str, image: bool = True) -> None:
    folder.mkdir(parents=True, exist_ok=True)
    if image:
        write_rgb(folder / f"pcd{number:04d}r.png", np.zeros((48, 64, 3), dtype=np.uint8))
    (folder / f"pcd{number:04d}cpos.txt").write_text(text)


def plain_samples(n: int, categories=None):
    return [
        Sample(id=f"s{i:04d}", grasps_pos=[], object_category="" if categories is None else categories[i])
        for i in range(n)
    ]


class TestPortableRandom:
    """Tests for the portable seeded generator."""

    def test_reference_outputs(self):
        """Test the first outputs for seeds 0 and 42."""
        rng = PortableRandom(0)
        assert [rng.next_u32() for _ in range(4)] == [335903614, 436792849, 2599843874, 1723210473]
        rng = PortableRandom(42)
        assert [rng.next_u32() for _ in range(3)] == [2440530669, 968358053, 1773127077]

    def test_reference_permutation(self):
        """Test the Fisher-Yates order for seed 0."""
        assert PortableRandom(0).permutation(5) == [0, 3, 2, 1, 4]

    def test_repeatable(self):
        """Test equal seeds give equal shuffles."""
        items = list(range(100))
        assert PortableRandom(7).shuffled(items) == PortableRandom(7).shuffled(items)
        assert PortableRandom(7).shuffled(items) != PortableRandom(8).shuffled(items)

    def test_permutation_is_complete(self):
        """Test a permutation contains every index once."""
        assert sorted(PortableRandom(3).permutation(50)) == list(range(50))

    def test_below_rejects_zero(self):
        """Test an empty range is rejected."""
        with pytest.raises(OutOfRange):
            PortableRandom(0).below(0)


class TestParseRectangles:
    """Tests for Cornell rectangle files."""

    def test_single_rectangle(self, tmp_path):
        """Test four lines make one rectangle with the expected pose."""
        path = tmp_path / "pcd0100cpos.txt"
        path.write_text(rectangle_text(CORNELL_RECTANGLE))
        quads, report = parse_rectangles(path)
        assert len(quads) == 1
        assert report.n_rectangles == 1
        pose = Sample(id="x", grasps_pos=quads).poses()[0]
        assert (pose.x, pose.y, pose.theta, pose.h, pose.w) == pytest.approx((30, 30, 0, 20, 40))

    def test_line_count_not_multiple_of_four(self, tmp_path):
        """Test a truncated rectangle is a parse error."""
        path = tmp_path / "pcd0100cpos.txt"
        path.write_text(rectangle_text(CORNELL_RECTANGLE[:3]))
        with pytest.raises(ParseError):
            parse_rectangles(path)

    @pytest.mark.parametrize("line", ["10.0", "10.0 abc", "1 2 3"])
    def test_malformed_line(self, tmp_path, line):
        """Test lines that are not 'x y' pairs."""
        path = tmp_path / "pcd0100cpos.txt"
        path.write_text(line + "\n" + rectangle_text(CORNELL_RECTANGLE[1:]))
        with pytest.raises(ParseError) as exc_info:
            parse_rectangles(path)
        assert exc_info.value.details["line"] == 1

    def test_non_finite_rectangle_dropped(self, tmp_path):
        """Test NaN rectangles are dropped and counted."""
        path = tmp_path / "pcd0100cpos.txt"
        bad = [(float("nan"), 1.0)] + CORNELL_RECTANGLE[1:]
        path.write_text(rectangle_text(CORNELL_RECTANGLE) + rectangle_text(bad))
        quads, report = parse_rectangles(path)
        assert len(quads) == 1
        assert report.dropped_non_finite == 1

    def test_skewed_rectangle_counted_as_repaired(self, tmp_path):
        """Test near-rectangles are kept and counted."""
        path = tmp_path / "pcd0100cpos.txt"
        path.write_text(rectangle_text([(0, 0), (0, 10), (20, 10.2), (20, 0.2)]))
        quads, report = parse_rectangles(path)
        assert len(quads) == 1
        assert report.repaired == 1


class TestLoadCornell:
    """Tests for loading Cornell directories."""

    def test_load_with_categories(self, tmp_path):
        """Test scenes, categories and optional depth are picked up."""
        make_cornell_scene(tmp_path / "01", 100, rectangle_text(CORNELL_RECTANGLE))
        make_cornell_scene(tmp_path / "01", 101, rectangle_text(CORNELL_RECTANGLE) * 2)
        write_depth(tmp_path / "01" / "pcd0101d.npy", np.ones((48, 64)))
        (tmp_path / "z.txt").write_text("100 7 mug\n101 9 bottle\n")

        samples, report = load_cornell(tmp_path, workers=2)

        assert [s.id for s in samples] == ["pcd0100", "pcd0101"]
        assert [s.object_category for s in samples] == ["7", "9"]
        assert [len(s.grasps_pos) for s in samples] == [1, 2]
        assert not samples[0].has_depth
        assert samples[1].depth.shape == (48, 64)
        assert samples[0].rgb.shape == (48, 64, 3)
        assert report.n_samples == 2
        assert report.n_rectangles == 3

    def test_scene_without_rectangles_reported(self, tmp_path):
        """Test empty scenes are kept and listed."""
        make_cornell_scene(tmp_path, 100, "")
        samples, report = load_cornell(tmp_path)
        assert samples[0].grasps_pos == []
        assert report.empty_samples == ["pcd0100"]

    def test_missing_image(self, tmp_path):
        """Test a scene without its image fails."""
        make_cornell_scene(tmp_path, 100, rectangle_text(CORNELL_RECTANGLE), image=False)
        with pytest.raises(MissingImage):
            load_cornell(tmp_path)

    def test_empty_directory(self, tmp_path):
        """Test a directory without scenes fails."""
        with pytest.raises(EmptyDataset):
            load_cornell(tmp_path)

    @pytest.mark.skipif(
        not os.environ.get("GRASPBENCH_DATASET_ROOT"),
        reason="GRASPBENCH_DATASET_ROOT not set",
    )
    def test_full_dataset(self):
        """Test the public Cornell release loads completely."""
        samples, report = load_cornell(os.environ["GRASPBENCH_DATASET_ROOT"], workers=4)
        assert len(samples) == CORNELL_IMAGES
        train, test = split(samples, SplitSpec(seed=0))
        assert (len(train), len(test)) == (708, 177)


class TestJacquard:
    """Tests for Jacquard grasp files."""

    def test_parse_line(self):
        """Test opening maps to w and jaw size to h."""
        pose = parse_grasp_line(JACQUARD_LINES[1])
        assert pose.as_list() == [150.5, 80.25, -45.0, 10.0, 30.0]

    def test_angle_is_normalised(self):
        """Test angles outside [-90, 90) are wrapped."""
        assert parse_grasp_line("1;2;120;3;4").theta == pytest.approx(-60.0)

    @pytest.mark.parametrize("line", ["1;2;3;4", "1;2;x;4;5", "1;2;3;0;5", "1;2;nan;4;5"])
    def test_bad_lines(self, line):
        """Test malformed and degenerate lines."""
        with pytest.raises(ParseError):
            parse_grasp_line(line)

    def test_load(self, tmp_path):
        """Test the parent directory names the category."""
        folder = tmp_path / "1a2b3c"
        folder.mkdir()
        write_rgb(folder / "0_1a2b3c_RGB.png", np.zeros((32, 32, 3), dtype=np.uint8))
        (folder / "0_1a2b3c_grasps.txt").write_text("\n".join(JACQUARD_LINES) + "\n")
        samples, report = load_jacquard(tmp_path)
        assert len(samples) == 1
        assert samples[0].object_category == "1a2b3c"
        assert samples[0].depth is None
        assert report.n_rectangles == 2

    def test_empty_directory(self, tmp_path):
        """Test a directory without grasp files fails."""
        with pytest.raises(EmptyDataset):
            load_jacquard(tmp_path)


class TestCanonical:
    """Tests for canonical JSON records."""

    def test_round_trip(self, tmp_path, bar_scenes):
        """Test written samples read back with the same grasps and images."""
        write_dataset(bar_scenes, tmp_path)
        loaded = read_dataset(tmp_path)
        assert [s.id for s in loaded] == [s.id for s in bar_scenes]
        for original, copy in zip(bar_scenes, loaded):
            assert copy.object_category == original.object_category
            for a, b in zip(original.poses(), copy.poses()):
                assert np.allclose(a.as_list(), b.as_list(), atol=1e-5)
            assert np.array_equal(copy.rgb, original.rgb)
            assert np.array_equal(copy.mask, original.mask)
            assert np.allclose(copy.depth, original.depth)
            assert copy.rgb_path.is_absolute()

    def test_rewrite_is_identical(self, tmp_path, bar_scenes):
        """Test re-writing a read dataset gives byte-identical records."""
        write_dataset(bar_scenes[:5], tmp_path / "a")
        write_dataset(read_dataset(tmp_path / "a"), tmp_path / "b")
        for path in sorted((tmp_path / "a" / "samples").glob("*.json")):
            assert path.read_text() == (tmp_path / "b" / "samples" / path.name).read_text()

    def test_theta_rounding_wraps(self):
        """Test a pose that rounds up to 90 degrees is stored as -90."""
        record = pose_to_record(GraspPose5D(1, 2, 89.99999999, 3, 4))
        assert record[2] == -90.0
        assert record_to_pose(record).theta == -90.0

    def test_bad_pose_record(self):
        """Test pose arrays need five values."""
        with pytest.raises(ParseError):
            record_to_pose([1, 2, 3])

    def test_empty_directory(self, tmp_path):
        """Test a directory without records fails."""
        with pytest.raises(EmptyDataset):
            read_dataset(tmp_path)

    def test_invalid_record(self, tmp_path):
        """Test records violating the schema are parse errors."""
        (tmp_path / "samples").mkdir()
        (tmp_path / "samples" / "x.json").write_text(json.dumps({"grasps_pos": "oops"}))
        with pytest.raises(ParseError):
            read_dataset(tmp_path)

    def test_predictions_round_trip(self, tmp_path):
        """Test single and ranked predictions are stored as lists."""
        path = write_predictions(
            tmp_path / "predictions.json",
            {"b": GraspPose5D(1, 2, 3, 4, 5), "a": [GraspPose5D(6, 7, 8, 9, 10), GraspPose5D(1, 1, 0, 1, 1)]},
        )
        loaded = read_predictions(path)
        assert list(json.loads(path.read_text())["predictions"]) == ["a", "b"]
        assert len(loaded["a"]) == 2
        assert loaded["b"][0].as_list() == [1, 2, 3, 4, 5]

    def test_bad_split_file(self, tmp_path):
        """Test unreadable split files are parse errors."""
        with pytest.raises(ParseError):
            read_split(tmp_path / "missing.json")


class TestSplits:
    """Tests for image-wise and object-wise splits."""

    def test_image_wise_counts(self):
        """Test the 4:1 ratio on the Cornell image count."""
        train, test = split(plain_samples(CORNELL_IMAGES), SplitSpec(seed=0))
        assert (len(train), len(test)) == (708, 177)

    def test_disjoint_and_complete(self):
        """Test every sample lands in exactly one side."""
        samples = plain_samples(50)
        train, test = split(samples, SplitSpec(seed=4))
        ids = [s.id for s in train] + [s.id for s in test]
        assert sorted(ids) == sorted(s.id for s in samples)
        assert not {s.id for s in train} & {s.id for s in test}

    def test_deterministic_and_order_independent(self):
        """Test the same seed gives the same split whatever the input order."""
        samples = plain_samples(40)
        first = split(samples, SplitSpec(seed=11))
        second = split(list(reversed(samples)), SplitSpec(seed=11))
        assert [s.id for s in first[0]] == [s.id for s in second[0]]
        other = split(samples, SplitSpec(seed=12))
        assert [s.id for s in first[0]] != [s.id for s in other[0]]

    def test_outputs_sorted_by_id(self):
        """Test both sides are ordered by id."""
        train, test = split(plain_samples(30), SplitSpec(seed=1))
        assert [s.id for s in train] == sorted(s.id for s in train)
        assert [s.id for s in test] == sorted(s.id for s in test)

    def test_object_wise_keeps_categories_together(self):
        """Test no category straddles the split."""
        categories = [f"c{i % 7}" for i in range(70)]
        train, test = split(plain_samples(70, categories), SplitSpec(mode="object_wise", seed=2))
        assert not {s.object_category for s in train} & {s.object_category for s in test}
        assert len(train) == 60

    def test_object_wise_needs_categories(self):
        """Test unlabeled samples are rejected."""
        with pytest.raises(MissingCategories):
            split(plain_samples(5), SplitSpec(mode="object_wise"))

    def test_empty(self):
        """Test an empty dataset cannot be split."""
        with pytest.raises(EmptyDataset):
            split([], SplitSpec())

    @pytest.mark.parametrize(
        "kwargs",
        [{"ratio_train": 0.0}, {"ratio_train": 1.0}, {"mode": "scene_wise"}, {"seed": -1}],
    )
    def test_invalid_spec(self, kwargs):
        """Test invalid split parameters."""
        with pytest.raises(ConfigError):
            SplitSpec(**kwargs)


class TestSample:
    """Tests for sample helpers."""

    def test_out_of_frame(self, simple_sample):
        """Test grasps far outside the image fail validation."""
        far = pose_to_quad(GraspPose5D(500, 500, 0, 10, 10))
        sample = simple_sample.evolve(grasps_pos=simple_sample.grasps_pos + [far])
        assert sample.out_of_frame_grasps() == [1]
        with pytest.raises(InvalidSample):
            sample.validate()

    def test_valid(self, simple_sample):
        """Test a consistent sample validates."""
        simple_sample.validate()

    def test_evolve_copies_flags(self, simple_sample):
        """Test evolved samples do not share the flag list."""
        copy = simple_sample.evolve()
        copy.flags.append("x")
        assert simple_sample.flags == []

    def test_poses_fit_skewed_quads(self):
        """Test non-strict poses fit near-rectangles."""
        sample = Sample(id="s", grasps_pos=[GraspQuad(((0, 0), (0, 10), (20, 10.2), (20, 0.2)))])
        assert sample.poses()[0].h == pytest.approx(10.0)

    def test_missing_rgb(self):
        """Test a sample without an image cannot provide one."""
        with pytest.raises(InvalidSample):
            Sample(id="s", grasps_pos=[]).rgb


class TestSyntheticScenes:
    """Tests for seeded bar scenes."""

    def test_deterministic(self):
        """Test equal seeds give equal scenes."""
        a, b = make_bar_scenes(3, seed=5), make_bar_scenes(3, seed=5)
        for x, y in zip(a, b):
            assert np.array_equal(x.rgb, y.rgb)
            assert x.poses() == y.poses()

    def test_grasp_centres_on_object(self, bar_scenes):
        """Test every ground-truth centre lies on the bar."""
        for sample in bar_scenes:
            for pose in sample.poses():
                assert sample.mask[int(round(pose.y)), int(round(pose.x))]

    def test_categories_round_robin(self):
        """Test category labels cycle."""
        scenes = make_bar_scenes(4, seed=0, n_categories=2)
        assert [s.object_category for s in scenes] == ["object_00", "object_01", "object_00", "object_01"]
