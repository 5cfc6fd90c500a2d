import numpy as np
import pytest

from sisct.image_io import GrayImage, write_pgm


@pytest.fixture
def cheque():
    """4x4 cheque excerpt with known XOR shares"""
    return GrayImage.from_rows([[157, 160, 190, 130],
                                [89, 255, 224, 192],
                                [10, 220, 255, 224],
                                [64, 128, 192, 255]])


@pytest.fixture
def cheque_xor_shares():
    return {
        1: [[7, 0, 6, 0], [13, 15, 8, 8], [0, 14, 15, 8], [8, 0, 8, 15]],
        2: [[10, 12, 15, 9], [2, 15, 12, 8], [3, 10, 15, 12], [0, 8, 8, 15]],
        3: [[13, 12, 9, 9], [15, 0, 4, 0], [3, 4, 0, 4], [8, 8, 0, 0]],
    }


@pytest.fixture
def random_image():
    def make(width, height, seed=0):
        generator = np.random.default_rng(seed)
        return GrayImage(generator.integers(0, 256, size=(height, width), dtype=np.uint8))

    return make


@pytest.fixture
def cheque_file(tmp_path, cheque):
    path = tmp_path / 'cheque.pgm'
    path.write_bytes(write_pgm(cheque))
    return path
