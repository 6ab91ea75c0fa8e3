import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grayseg.errors import CorruptFile, EmptyCenters, IoFailure, UnsupportedFormat
from grayseg.imaging import (
    GrayImage,
    compute_histogram,
    histogram_from_counts,
    load_image,
    render_segmentation,
    save_image,
)


def write_bytes(path, data):
    path.write_bytes(data)
    return str(path)


class TestLoadPgm:
    def test_decodes_p5_raster(self, tmp_path):
        path = write_bytes(tmp_path / "a.pgm", b"P5\n2 2\n255\n" + bytes([0, 128, 128, 255]))
        img = load_image(path)
        assert (img.width, img.height) == (2, 2)
        assert img.pixels == bytes([0, 128, 128, 255])

    def test_header_comments_accepted(self, tmp_path):
        data = b"P5\n# a comment\n2 # inline\n2\n255\n" + bytes(4)
        img = load_image(write_bytes(tmp_path / "c.pgm", data))
        assert (img.width, img.height) == (2, 2)

    def test_p6_rejected(self, tmp_path):
        path = write_bytes(tmp_path / "c.ppm", b"P6\n1 1\n255\n\x00\x00\x00")
        with pytest.raises(UnsupportedFormat):
            load_image(path)

    def test_16bit_maxval_rejected(self, tmp_path):
        path = write_bytes(tmp_path / "w.pgm", b"P5\n1 1\n65535\n\x00\x00")
        with pytest.raises(UnsupportedFormat):
            load_image(path)

    def test_truncated_raster_rejected(self, tmp_path):
        path = write_bytes(tmp_path / "t.pgm", b"P5\n4 4\n255\n" + bytes(7))
        with pytest.raises(CorruptFile):
            load_image(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(IoFailure):
            load_image(str(tmp_path / "nope.pgm"))

    def test_unknown_magic(self, tmp_path):
        path = write_bytes(tmp_path / "x.bin", b"GIF89a....")
        with pytest.raises(UnsupportedFormat):
            load_image(path)


class TestSaveImage:
    def test_single_pixel_round_trip(self, tmp_path):
        img = GrayImage(1, 1, bytes([7]))
        path = str(tmp_path / "one.pgm")
        save_image(img, path)
        assert load_image(path) == img

    def test_p5_bytes_are_exact(self, tmp_path):
        img = GrayImage(2, 2, bytes([0, 128, 128, 255]))
        path = tmp_path / "exact.pgm"
        save_image(img, str(path))
        assert path.read_bytes() == b"P5\n2 2\n255\n" + bytes([0, 128, 128, 255])

    def test_unwritable_path(self, tmp_path):
        img = GrayImage(1, 1, bytes([7]))
        with pytest.raises(IoFailure):
            save_image(img, str(tmp_path / "no" / "such" / "dir.pgm"))

    def test_png_round_trip(self, tmp_path):
        rng = np.random.default_rng(5)
        img = GrayImage(9, 4, rng.integers(0, 256, 36, dtype=np.uint8).tobytes())
        path = str(tmp_path / "img.png")
        save_image(img, path)
        assert load_image(path) == img

    def test_color_png_rejected(self, tmp_path):
        from PIL import Image

        path = str(tmp_path / "rgb.png")
        Image.new("RGB", (2, 2), (10, 20, 30)).save(path)
        with pytest.raises(UnsupportedFormat):
            load_image(path)


@settings(max_examples=40, deadline=None)
@given(
    width=st.integers(1, 12),
    height=st.integers(1, 12),
    seed=st.integers(0, 2**32 - 1),
)
def test_pgm_round_trip_is_identity(tmp_path_factory, width, height, seed):
    rng = np.random.default_rng(seed)
    img = GrayImage(width, height, rng.integers(0, 256, width * height, dtype=np.uint8).tobytes())
    path = str(tmp_path_factory.mktemp("rt") / "img.pgm")
    save_image(img, path)
    assert load_image(path) == img


class TestHistogram:
    def test_counts_extremes(self):
        img = GrayImage(2, 2, bytes([0, 0, 255, 255]))
        h = compute_histogram(img)
        assert h.counts[0] == 2 and h.counts[255] == 2
        assert h.counts[1:255].sum() == 0

    def test_single_pixel(self):
        h = compute_histogram(GrayImage(1, 1, bytes([7])))
        assert h.counts[7] == 1 and h.total == 1

    def test_constant_image(self):
        h = compute_histogram(GrayImage(16, 16, bytes([128] * 256)))
        assert h.counts[128] == 256

    @settings(max_examples=40, deadline=None)
    @given(width=st.integers(1, 20), height=st.integers(1, 20), seed=st.integers(0, 2**32 - 1))
    def test_conservation(self, width, height, seed):
        rng = np.random.default_rng(seed)
        img = GrayImage(width, height, rng.integers(0, 256, width * height, dtype=np.uint8).tobytes())
        h = compute_histogram(img)
        assert int(h.counts.sum()) == h.total == width * height

    def test_support_helpers(self):
        h = histogram_from_counts({3: 2, 200: 5})
        assert list(h.support) == [3, 200]
        assert h.distinct_levels == 2


class TestRenderSegmentation:
    def test_nearest_assignment(self):
        img = GrayImage(2, 1, bytes([10, 240]))
        labels, out = render_segmentation(img, (0, 255))
        assert list(labels.labels) == [0, 1]
        assert out.pixels == bytes([0, 255])

    def test_identity_on_matching_center(self):
        img = GrayImage(2, 2, bytes([128] * 4))
        labels, out = render_segmentation(img, (128,))
        assert set(labels.labels) == {0}
        assert out == img

    def test_tie_goes_to_lowest_index(self):
        img = GrayImage(1, 1, bytes([128]))
        labels, out = render_segmentation(img, (118, 138))
        assert list(labels.labels) == [0]
        assert out.pixels == bytes([118])

    def test_empty_centers(self):
        with pytest.raises(EmptyCenters):
            render_segmentation(GrayImage(1, 1, bytes([1])), ())

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), k=st.integers(1, 6))
    def test_rendering_is_idempotent(self, seed, k):
        rng = np.random.default_rng(seed)
        img = GrayImage(8, 8, rng.integers(0, 256, 64, dtype=np.uint8).tobytes())
        centers = tuple(int(v) for v in rng.choice(256, size=k, replace=False))
        _, once = render_segmentation(img, centers)
        _, twice = render_segmentation(once, centers)
        assert once == twice
