import json

import numpy as np
import pytest
from scipy.spatial import Delaunay

from makeuplab.align import (
    LANDMARK_COUNT,
    LandmarkBoundsError,
    LandmarkCountError,
    LandmarkFormatError,
    LandmarkSet,
    MeshDegeneracyError,
    border_anchors,
    build_mesh,
    load_landmarks,
    warp_field,
    warp_image,
    warp_labels,
)
from makeuplab.imgcore import RasterImage
from makeuplab.synthetic import FaceGeometry, face_landmarks

SIZE = 200


@pytest.fixture
def landmarks():
    return face_landmarks(FaceGeometry.default(SIZE, SIZE))


@pytest.fixture
def blank_image():
    return RasterImage(np.zeros((SIZE, SIZE, 3), dtype=np.uint8))


class TestLoadLandmarks:
    def test_valid_file(self, tmp_path, landmarks, blank_image):
        path = tmp_path / "lm.json"
        path.write_text(json.dumps({"points": landmarks.points.tolist()}))
        lm = load_landmarks(path, blank_image)
        assert np.allclose(lm.points, landmarks.points)

    def test_wrong_count(self, tmp_path, landmarks, blank_image):
        path = tmp_path / "lm.json"
        path.write_text(json.dumps({"points": landmarks.points.tolist()[:89]}))
        with pytest.raises(LandmarkCountError):
            load_landmarks(path, blank_image)

    def test_out_of_bounds_point(self, tmp_path, landmarks, blank_image):
        pts = landmarks.points.tolist()
        pts[5] = [-3.0, 10.0]
        path = tmp_path / "lm.json"
        path.write_text(json.dumps({"points": pts}))
        with pytest.raises(LandmarkBoundsError):
            load_landmarks(path, blank_image)

    def test_malformed_file(self, tmp_path, blank_image):
        path = tmp_path / "lm.json"
        path.write_text("not json {")
        with pytest.raises(LandmarkFormatError):
            load_landmarks(path, blank_image)

    def test_missing_points_key(self, tmp_path, blank_image):
        path = tmp_path / "lm.json"
        path.write_text(json.dumps({"pts": []}))
        with pytest.raises(LandmarkFormatError):
            load_landmarks(path, blank_image)


class TestBuildMesh:
    def test_euler_formula(self, landmarks):
        mesh = build_mesh(landmarks, SIZE, SIZE)
        n = LANDMARK_COUNT + 8
        hull_vertices = 8  # corners + midpoints on the frame boundary
        assert len(mesh.triangles) == 2 * n - 2 - hull_vertices

    def test_covers_full_rectangle(self, landmarks):
        mesh = build_mesh(landmarks, SIZE, SIZE)
        p0 = mesh.vertices[mesh.triangles[:, 0]]
        p1 = mesh.vertices[mesh.triangles[:, 1]]
        p2 = mesh.vertices[mesh.triangles[:, 2]]
        e1, e2 = p1 - p0, p2 - p0
        area = 0.5 * np.abs(e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]).sum()
        assert area == pytest.approx((SIZE - 1) ** 2, rel=1e-9)

    def test_duplicate_landmark_raises(self, landmarks):
        pts = landmarks.points.copy()
        pts[10] = pts[11]
        with pytest.raises(MeshDegeneracyError):
            build_mesh(LandmarkSet(pts), SIZE, SIZE)

    def test_deterministic(self, landmarks):
        m1 = build_mesh(landmarks, SIZE, SIZE)
        m2 = build_mesh(landmarks, SIZE, SIZE)
        assert np.array_equal(m1.triangles, m2.triangles)
        assert np.array_equal(m1.vertices, m2.vertices)


def coordinate_image(size=SIZE):
    """R encodes x, G encodes y (sizes <= 256)."""
    ys, xs = np.mgrid[0:size, 0:size]
    img = np.zeros((size, size, 3), dtype=np.uint8)
    img[..., 0] = xs
    img[..., 1] = ys
    return RasterImage(img)


def bilinear_at(field, x, y):
    x0, y0 = int(np.floor(x)), int(np.floor(y))
    x1, y1 = min(x0 + 1, field.shape[1] - 1), min(y0 + 1, field.shape[0] - 1)
    fx, fy = x - x0, y - y0
    top = field[y0, x0] * (1 - fx) + field[y0, x1] * fx
    bot = field[y1, x0] * (1 - fx) + field[y1, x1] * fx
    return top * (1 - fy) + bot * fy


class TestWarpImage:
    def test_identity_warp(self, landmarks, rng):
        src = RasterImage(rng.integers(0, 256, size=(SIZE, SIZE, 3), dtype=np.uint8))
        out = warp_image(src, landmarks, landmarks, (SIZE, SIZE))
        diff = np.abs(out.pixels.astype(int) - src.pixels.astype(int))
        assert diff.max() <= 1

    def test_translation_case(self, landmarks):
        src = coordinate_image()
        shifted = LandmarkSet(landmarks.points + [5.0, 0.0])
        out = warp_image(src, landmarks, shifted, (SIZE + 10, SIZE))
        # interior of the face hull: triangles between translated landmarks
        # are exact translations
        hull = Delaunay(shifted.points)
        ys, xs = np.mgrid[0:SIZE, 0 : SIZE + 10]
        pts = np.column_stack([xs.ravel(), ys.ravel()]).astype(float)
        centroid = shifted.points.mean(axis=0)
        inner = centroid + (pts - centroid) / 0.9  # 10% margin from the hull
        interior = (hull.find_simplex(inner) >= 0).reshape(SIZE, SIZE + 10)
        expected_x = np.clip(xs - 5, 0, SIZE - 1)
        got_x = out.pixels[..., 0].astype(int)
        assert np.max(np.abs(got_x[interior] - expected_x[interior])) <= 1
        got_y = out.pixels[..., 1].astype(int)
        assert np.max(np.abs(got_y[interior] - ys[interior])) <= 1

    def test_locality_of_landmark_move(self, landmarks, rng):
        # checkerboard source; moving one landmark changes only pixels in
        # triangles adjacent to it (compared per-pixel against the direct
        # warp with unmoved landmarks)
        board = (np.indices((SIZE, SIZE)).sum(axis=0) // 8) % 2 * 255
        src = RasterImage(
            np.repeat(board[..., None], 3, axis=2).astype(np.uint8)
        )
        moved_pts = landmarks.points.copy()
        k = 40  # a nose landmark, interior
        moved_pts[k] += [4.0, 3.0]
        moved = LandmarkSet(moved_pts)
        base = warp_image(src, landmarks, landmarks, (SIZE, SIZE))
        out = warp_image(src, landmarks, moved, (SIZE, SIZE))
        changed = np.any(base.pixels != out.pixels, axis=2)
        # pixels far from the moved landmark are untouched
        ys, xs = np.mgrid[0:SIZE, 0:SIZE]
        far = np.hypot(xs - landmarks.points[k, 0], ys - landmarks.points[k, 1]) > 60
        assert not np.any(changed & far)
        assert np.any(changed)

    def test_deterministic(self, landmarks, rng):
        src = RasterImage(rng.integers(0, 256, size=(SIZE, SIZE, 3), dtype=np.uint8))
        dst = LandmarkSet(landmarks.points + [2.0, 1.0])
        a = warp_image(src, landmarks, dst, (SIZE + 5, SIZE + 5))
        b = warp_image(src, landmarks, dst, (SIZE + 5, SIZE + 5))
        assert np.array_equal(a.pixels, b.pixels)


class TestLandmarkFidelity:
    @pytest.mark.parametrize("seed", range(20))
    def test_warped_content_matches_source_landmark(self, landmarks, seed):
        rng = np.random.default_rng(seed)
        src_pts = landmarks.points + rng.uniform(-3, 3, size=(LANDMARK_COUNT, 2))
        # destination landmarks on pixel centers so the sampled field value
        # is the piecewise-affine map itself, free of interpolation kinks;
        # redraw until rounding produced no duplicate vertices
        while True:
            dst_pts = np.round(
                landmarks.points + rng.uniform(-3, 3, size=(LANDMARK_COUNT, 2))
            )
            if len(np.unique(dst_pts, axis=0)) == LANDMARK_COUNT:
                break
        src_lm, dst_lm = LandmarkSet(src_pts), LandmarkSet(dst_pts)
        ys, xs = np.mgrid[0:SIZE, 0:SIZE].astype(np.float64)
        wx = warp_field(xs, src_lm, dst_lm, (SIZE, SIZE))
        wy = warp_field(ys, src_lm, dst_lm, (SIZE, SIZE))
        for k in range(LANDMARK_COUNT):
            dx, dy = dst_pts[k]
            got = np.array([bilinear_at(wx, dx, dy), bilinear_at(wy, dx, dy)])
            err = np.hypot(*(got - src_pts[k]))
            assert err <= 0.5, f"landmark {k}: {err:.3f} px"


class TestWarpLabels:
    def test_identity(self, landmarks, rng):
        labels = rng.integers(0, 11, size=(SIZE, SIZE), dtype=np.uint8)
        out = warp_labels(labels, landmarks, landmarks, (SIZE, SIZE))
        assert np.array_equal(out, labels)

    def test_label_closure(self, landmarks, rng):
        labels = rng.choice([0, 3, 7], size=(SIZE, SIZE)).astype(np.uint8)
        dst = LandmarkSet(landmarks.points + rng.uniform(-4, 4, size=(90, 2)))
        out = warp_labels(labels, landmarks, dst, (SIZE, SIZE))
        assert set(np.unique(out)) <= set(np.unique(labels))

    def test_translation_consistent_with_warp_image(self, landmarks):
        labels = (np.indices((SIZE, SIZE)).sum(axis=0) // 16 % 11).astype(np.uint8)
        shifted = LandmarkSet(landmarks.points + [5.0, 0.0])
        out = warp_labels(labels, landmarks, shifted, (SIZE + 10, SIZE))
        hull = Delaunay(shifted.points)
        ys, xs = np.mgrid[0:SIZE, 0 : SIZE + 10]
        pts = np.column_stack([xs.ravel(), ys.ravel()]).astype(float)
        centroid = shifted.points.mean(axis=0)
        inner = centroid + (pts - centroid) / 0.9
        interior = (hull.find_simplex(inner) >= 0).reshape(SIZE, SIZE + 10)
        expected = labels[ys, np.clip(xs - 5, 0, SIZE - 1)]
        assert np.array_equal(out[interior], expected[interior])


def test_border_anchor_layout():
    anchors = border_anchors(100, 50)
    assert anchors.shape == (8, 2)
    assert [0.0, 0.0] in anchors.tolist()
    assert [99.0, 49.0] in anchors.tolist()
