#!/usr/bin/env python3
"""Regenerate the committed test fixture images under tests/fixtures/.

Fixtures are binary PGMs so they can be audited byte by byte:

  three_mode.pgm  128x128, Gaussian intensity modes at 30/128/220, sigma 5
  bimodal.pgm     128x128, Gaussian intensity modes at 50/200, sigma 3
  natural.pgm     128x128 downsample of scikit-image's bundled camera photo

Generation is seeded, so rerunning this script reproduces identical bytes.
"""

import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from grayseg.imaging import GrayImage, save_image  # noqa: E402

FIXTURE_DIR = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures"
SIZE = 128
GENERATION_SEED = 20240917


def gaussian_mode_image(modes, sigma, seed) -> GrayImage:
    rng = np.random.default_rng(seed)
    modes = np.asarray(modes, dtype=np.float64)
    pick = rng.integers(0, modes.size, size=SIZE * SIZE)
    values = rng.normal(modes[pick], sigma)
    values = np.clip(np.rint(values), 0, 255).astype(np.uint8)
    return GrayImage(SIZE, SIZE, values.tobytes())


def natural_image() -> GrayImage:
    from skimage import data

    camera = data.camera()  # 512x512 uint8, bundled with scikit-image
    return GrayImage.from_array(camera[::4, ::4])


def main() -> None:
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    save_image(
        gaussian_mode_image([30, 128, 220], 5.0, GENERATION_SEED),
        str(FIXTURE_DIR / "three_mode.pgm"),
    )
    save_image(
        gaussian_mode_image([50, 200], 3.0, GENERATION_SEED + 1),
        str(FIXTURE_DIR / "bimodal.pgm"),
    )
    save_image(natural_image(), str(FIXTURE_DIR / "natural.pgm"))
    for name in ("three_mode.pgm", "bimodal.pgm", "natural.pgm"):
        print("wrote", FIXTURE_DIR / name)


if __name__ == "__main__":
    main()
