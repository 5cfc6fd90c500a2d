"""
The deterministic (2,3) XOR scheme.

Bit k of a pixel is the bit of weight 2^k. SC1 collects the even bits (0, 2, 4, 6) of every pixel,
SC2 the odd bits (1, 3, 5, 7), each packed into a 4-bit value with bit 2k (or 2k+1) landing on weight 2^k,
and SC3 = SC1 XOR SC2. Pixel 190 = 0b10111110 therefore splits into (6, 15, 9).

Any two shares give back both nibbles and the image is re-interleaved losslessly.
The scheme is not perfectly hiding: SC1 alone is exactly the even-bit plane of the secret.
"""
import logging

import numpy as np

from sisct.image_io import GrayImage, Scheme, Share
from sisct.schemes.core import ShareTriple, SharingScheme, ordered_pair

_logger = logging.getLogger(__name__)


def _gather_table(offset):
    values = np.arange(256)
    nibbles = np.zeros(256, dtype=np.int64)
    for k in range(4):
        nibbles |= ((values >> (2 * k + offset)) & 1) << k
    return nibbles.astype(np.uint8)


_EVEN_BITS = _gather_table(0)
_ODD_BITS = _gather_table(1)
# nibble bit k -> byte bit 2k
_SPREAD = np.array([sum(((v >> k) & 1) << (2 * k) for k in range(4)) for v in range(16)], dtype=np.uint8)


class XorShareTriple(ShareTriple):
    def __post_init__(self):
        super(XorShareTriple, self).__post_init__()
        if self.scheme is not Scheme.XOR:
            raise ValueError("an XOR triple holds XOR shares only")
        if not np.array_equal(self.sc3.pixels, self.sc1.pixels ^ self.sc2.pixels):
            raise ValueError("SC3 must equal SC1 XOR SC2 at every pixel")


def even_bits(image: GrayImage) -> np.ndarray:
    return _EVEN_BITS[image.pixels]


def odd_bits(image: GrayImage) -> np.ndarray:
    return _ODD_BITS[image.pixels]


def interleave(even: np.ndarray, odd: np.ndarray) -> np.ndarray:
    """re-assemble bytes from their even-bit and odd-bit nibbles"""
    return _SPREAD[even] | (_SPREAD[odd] << 1)


def xor_split(image: GrayImage) -> XorShareTriple:
    sc1 = even_bits(image)
    sc2 = odd_bits(image)
    sc3 = sc1 ^ sc2
    _logger.debug(f"XOR split of {image.width}x{image.height} image")
    return XorShareTriple(Share(Scheme.XOR, 1, sc1), Share(Scheme.XOR, 2, sc2), Share(Scheme.XOR, 3, sc3))


def xor_reconstruct(a: Share, b: Share) -> GrayImage:
    first, second = ordered_pair(a, b, Scheme.XOR)
    pair = (first.index, second.index)
    if pair == (1, 2):
        even, odd = first.pixels, second.pixels
    elif pair == (1, 3):
        even = first.pixels
        odd = first.pixels ^ second.pixels
    else:  # (2, 3)
        even = first.pixels ^ second.pixels
        odd = first.pixels
    return GrayImage(interleave(even, odd))


def xor_leak(image: GrayImage) -> np.ndarray:
    """What SC1 alone reveals about the secret: its full even-bit plane."""
    return even_bits(image)


class XorScheme(SharingScheme):
    scheme = Scheme.XOR

    def split(self, image, rng=None):
        return xor_split(image)

    def reconstruct(self, a, b):
        return xor_reconstruct(a, b)
