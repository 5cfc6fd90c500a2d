"""
The randomized (2,3) partition scheme.

Every secret pixel s is masked with its own random byte r. Both are cut into nibbles, high nibble first:
s = s1.s2 and r = r1.r2. The three share pixels, written as (high nibble, low nibble), are

    sc1 = (s2 ^ r2, r1)
    sc2 = (s1 ^ r1, r2)
    sc3 = (s2 ^ r1, s1 ^ r2)

Nothing else makes the three pairwise reconstructions come out right, with scXY denoting nibble Y of share X:

    (1, 2):  s2 = sc11 ^ sc22              s1 = sc12 ^ sc21
    (1, 3):  s2 = sc12 ^ sc31,  b = sc11 ^ sc32 = s1 ^ s2,  s1 = b ^ s2
    (2, 3):  s1 = sc22 ^ sc32,  b = sc21 ^ sc31 = s1 ^ s2,  s2 = b ^ s1

For a fixed s each share pixel is a bijection of r, so with uniform r a single share is uniform noise.
"""
import logging

import numpy as np

from sisct.image_io import GrayImage, Scheme, Share
from sisct.rng import SystemRandom
from sisct.schemes.core import ShareTriple, SharingScheme, ordered_pair

_logger = logging.getLogger(__name__)


class PartitionShareTriple(ShareTriple):
    def __post_init__(self):
        super(PartitionShareTriple, self).__post_init__()
        if self.scheme is not Scheme.PARTITION:
            raise ValueError("a partition triple holds partition shares only")


def _nibbles(values):
    values = np.asarray(values, dtype=np.uint8)
    return values >> 4, values & 0x0F


def _join(high, low):
    return ((high << 4) | low).astype(np.uint8)


def partition_masks(secret, masks):
    """share pixels (sc1, sc2, sc3) for secret pixels ``secret`` masked with the bytes ``masks``"""
    s1, s2 = _nibbles(secret)
    r1, r2 = _nibbles(masks)
    return _join(s2 ^ r2, r1), _join(s1 ^ r1, r2), _join(s2 ^ r1, s1 ^ r2)


def partition_split(image: GrayImage, rng=None) -> PartitionShareTriple:
    rng = rng if rng is not None else SystemRandom()
    # one fresh byte per pixel, assigned in row-major order
    masks = rng.bytes(image.pixels.size).reshape(image.shape)
    sc1, sc2, sc3 = partition_masks(image.pixels, masks)
    _logger.debug(f"Partition split of {image.width}x{image.height} image with {rng}")
    return PartitionShareTriple(Share(Scheme.PARTITION, 1, sc1), Share(Scheme.PARTITION, 2, sc2),
                                Share(Scheme.PARTITION, 3, sc3))


def partition_reconstruct(a: Share, b: Share) -> GrayImage:
    first, second = ordered_pair(a, b, Scheme.PARTITION)
    high_a, low_a = _nibbles(first.pixels)
    high_b, low_b = _nibbles(second.pixels)
    pair = (first.index, second.index)
    if pair == (1, 2):
        s2 = high_a ^ low_b
        s1 = low_a ^ high_b
    elif pair == (1, 3):
        s2 = low_a ^ high_b
        s1 = (high_a ^ low_b) ^ s2
    else:  # (2, 3)
        s1 = low_a ^ low_b
        s2 = (high_a ^ high_b) ^ s1
    return GrayImage(_join(s1, s2))


class PartitionScheme(SharingScheme):
    scheme = Scheme.PARTITION

    def split(self, image, rng=None):
        return partition_split(image, rng)

    def reconstruct(self, a, b):
        return partition_reconstruct(a, b)
