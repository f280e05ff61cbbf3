import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from makeuplab.imgcore import RasterImage
from makeuplab.masks import (
    DEFAULT_RETENTION,
    NUM_CLASSES,
    SKIN,
    LabelMap,
    LabelSizeError,
    Region,
    RetentionPolicy,
    UndefinedLabelError,
    classify_regions,
    fuse,
    hard_soft_mask,
    load_label_map,
    save_label_map,
    soften,
)


class TestLoadLabelMap:
    def test_valid_fixture(self, tmp_path):
        labels = LabelMap(np.arange(NUM_CLASSES, dtype=np.uint8)[None, :].repeat(4, 0))
        path = tmp_path / "labels.png"
        save_label_map(labels, path)
        loaded = load_label_map(path, (NUM_CLASSES, 4))
        assert np.array_equal(loaded.labels, labels.labels)

    def test_undefined_label_value(self, tmp_path):
        from PIL import Image

        arr = np.full((4, 4), 11, dtype=np.uint8)
        path = tmp_path / "bad.png"
        Image.fromarray(arr, mode="L").save(path)
        with pytest.raises(UndefinedLabelError):
            load_label_map(path, (4, 4))

    def test_size_mismatch(self, tmp_path):
        labels = LabelMap(np.zeros((4, 4), dtype=np.uint8))
        path = tmp_path / "labels.png"
        save_label_map(labels, path)
        with pytest.raises(LabelSizeError):
            load_label_map(path, (5, 4))


class TestClassifyRegions:
    def test_all_skin_is_c1(self):
        regions = classify_regions(LabelMap(np.full((3, 3), SKIN, dtype=np.uint8)))
        assert np.all(regions == Region.C1)

    def test_all_background_is_ignore(self):
        regions = classify_regions(LabelMap(np.zeros((3, 3), dtype=np.uint8)))
        assert np.all(regions == Region.IGNORE)

    def test_exhaustive_per_class_table(self):
        # one pixel per class; exact expected region per the fixed table
        labels = LabelMap(np.arange(NUM_CLASSES, dtype=np.uint8)[None, :])
        regions = classify_regions(labels)
        expected = [
            Region.IGNORE,  # background
            Region.IGNORE,  # hair
            Region.C1,  # left eyebrow
            Region.C1,  # right eyebrow
            Region.C2,  # left eye
            Region.C2,  # right eye
            Region.C1,  # nose
            Region.C1,  # upper lip
            Region.C1,  # lower lip
            Region.C2,  # mouth cavity
            Region.C1,  # skin
        ]
        assert regions[0].tolist() == expected


def vertical_edge_labels(width=256, height=16, boundary=128):
    labels = np.zeros((height, width), dtype=np.uint8)
    labels[:, boundary:] = SKIN
    return LabelMap(labels)


class TestSoften:
    def test_far_field_probability(self):
        sigma = 6.0
        labels = vertical_edge_labels()
        soft = soften(labels, sigma)
        col = 128 + int(4 * sigma) + 2  # > 4 sigma into the skin side
        assert np.all(soft.probs[:, col, SKIN] >= 0.999)
        col = 128 - int(4 * sigma) - 2
        assert np.all(soft.probs[:, col, 0] >= 0.999)

    def test_boundary_column_matches_gaussian_cdf(self):
        # sigma large enough that the half-pixel offset of the discrete
        # grid stays inside the 0.01 window
        sigma = 24.0
        labels = vertical_edge_labels(width=512, height=8, boundary=256)
        soft = soften(labels, sigma)
        # discrete 1-D Gaussian CDF oracle with the same truncation
        r = int(4.0 * sigma + 0.5)
        d = np.arange(-r, r + 1)
        g = np.exp(-(d**2) / (2 * sigma**2))
        g /= g.sum()
        expected_at_boundary = g[d >= 0].sum()  # first column of the skin side
        got = soft.probs[4, 256, SKIN]
        assert got == pytest.approx(expected_at_boundary, abs=1e-3)
        assert abs(got - 0.5) <= 0.01
        assert abs(soft.probs[4, 256, 0] - 0.5) <= 0.01

    def test_per_pixel_sum_is_one(self, rng):
        labels = LabelMap(rng.integers(0, NUM_CLASSES, size=(32, 32), dtype=np.uint8))
        soft = soften(labels, 3.0)
        sums = soft.probs.sum(axis=2)
        assert np.max(np.abs(sums - 1.0)) <= 1e-6

    def test_argmax_recovers_labels_in_far_field(self):
        sigma = 4.0
        labels = vertical_edge_labels()
        soft = soften(labels, sigma)
        rec = np.argmax(soft.probs, axis=2)
        far = np.abs(np.arange(256) - 127.5) > 4 * sigma
        assert np.array_equal(rec[:, far], labels.labels[:, far])

    def test_sigma_must_be_positive(self):
        with pytest.raises(ValueError):
            soften(vertical_edge_labels(), 0.0)


class TestRetentionPolicy:
    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            RetentionPolicy(
                input_classes=frozenset(range(6)),
                makeup_classes=frozenset(range(5, NUM_CLASSES)),
            )

    def test_cover_required(self):
        with pytest.raises(ValueError):
            RetentionPolicy(
                input_classes=frozenset({0}), makeup_classes=frozenset({1})
            )

    def test_default_policy_partitions(self):
        assert DEFAULT_RETENTION.input_classes | DEFAULT_RETENTION.makeup_classes == set(
            range(NUM_CLASSES)
        )


def solid(value, h=4, w=4):
    return RasterImage(np.full((h, w, 3), value, dtype=np.uint8))


class TestFuse:
    def test_hard_mask_input_class_keeps_input(self):
        labels = LabelMap(np.full((4, 4), 1, dtype=np.uint8))  # hair: input side
        out = fuse(solid(100), solid(200), hard_soft_mask(labels), DEFAULT_RETENTION)
        assert np.all(out.pixels == 100)

    def test_hard_mask_makeup_class_keeps_makeup(self):
        labels = LabelMap(np.full((4, 4), SKIN, dtype=np.uint8))
        out = fuse(solid(100), solid(200), hard_soft_mask(labels), DEFAULT_RETENTION)
        assert np.all(out.pixels == 200)

    def test_half_weights_blend_to_midpoint(self):
        labels = vertical_edge_labels(width=512, height=4, boundary=256)
        soft = soften(labels, 24.0)
        out = fuse(
            solid(100, 4, 512), solid(200, 4, 512), soft, DEFAULT_RETENTION
        )
        # at the boundary column weights are ~0.5/0.5
        assert np.all(np.abs(out.pixels[:, 256].astype(int) - 150) <= 3)

    def test_dimension_mismatch(self):
        labels = LabelMap(np.zeros((4, 4), dtype=np.uint8))
        from makeuplab.imgcore import ImageShapeError

        with pytest.raises(ImageShapeError):
            fuse(solid(0, 4, 4), solid(0, 4, 5), hard_soft_mask(labels))


@settings(max_examples=25, deadline=None)
@given(
    arrays(np.uint8, (6, 6), elements=st.integers(0, NUM_CLASSES - 1)),
    st.floats(0.5, 8.0),
)
def test_fuse_is_convex_combination(label_arr, sigma):
    rng = np.random.default_rng(0)
    a = RasterImage(rng.integers(0, 256, size=(6, 6, 3), dtype=np.uint8))
    b = RasterImage(rng.integers(0, 256, size=(6, 6, 3), dtype=np.uint8))
    soft = soften(LabelMap(label_arr), sigma)
    out = fuse(a, b, soft, DEFAULT_RETENTION)
    lo = np.minimum(a.pixels, b.pixels).astype(int) - 1  # rounding slack
    hi = np.maximum(a.pixels, b.pixels).astype(int) + 1
    assert np.all(out.pixels >= lo)
    assert np.all(out.pixels <= hi)
