import pathlib

import numpy as np
import pytest

from grayseg.imaging import GrayImage, load_image

FIXTURE_DIR = pathlib.Path(__file__).parent / "fixtures"


class FakeRng:
    """Scripted stand-in for numpy's Generator: dequeues preset draws."""

    def __init__(self, floats=(), ints=()):
        self.floats = list(floats)
        self.ints = list(ints)

    def random(self):
        return self.floats.pop(0)

    def integers(self, low, high):
        value = self.ints.pop(0)
        assert low <= value < high, f"scripted draw {value} outside [{low}, {high})"
        return value


@pytest.fixture(scope="session")
def three_mode_image() -> GrayImage:
    return load_image(str(FIXTURE_DIR / "three_mode.pgm"))


@pytest.fixture(scope="session")
def bimodal_image() -> GrayImage:
    return load_image(str(FIXTURE_DIR / "bimodal.pgm"))


@pytest.fixture(scope="session")
def natural_image() -> GrayImage:
    return load_image(str(FIXTURE_DIR / "natural.pgm"))


def random_image(rng: np.random.Generator, width: int, height: int) -> GrayImage:
    values = rng.integers(0, 256, size=width * height, dtype=np.uint8)
    return GrayImage(width=width, height=height, pixels=values.tobytes())
