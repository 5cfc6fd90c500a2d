"""
Grayscale images, the "SIS1" share container and the mean squared error between two images.

Pixel grids are held as read-only ``numpy.uint8`` arrays of shape ``(height, width)``, i.e. row-major.
"""
import enum
import logging
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

_logger = logging.getLogger(__name__)

PGM_MAGIC = b'P5'
_PGM_WHITESPACE = b' \t\n\r\x0b\x0c'

SHARE_MAGIC = b'SIS1'
SHARE_VERSION = 0x01
# magic, version, scheme, index, bit_depth, width, height
_SHARE_HEADER = struct.Struct('<4sBBBBII')
_MAX_DIMENSION = 2 ** 32 - 1
SHARE_HEADER_SIZE = _SHARE_HEADER.size


class ImageFormatError(ValueError):
    pass


class PgmHeaderError(ImageFormatError):
    pass


class PgmMaxvalError(ImageFormatError):
    pass


class PgmTruncatedError(ImageFormatError):
    pass


class ShareFormatError(ValueError):
    pass


class ShareMagicError(ShareFormatError):
    pass


class ShareVersionError(ShareFormatError):
    pass


class ShareSchemeError(ShareFormatError):
    pass


class SharePayloadError(ShareFormatError):
    pass


class DimensionMismatchError(ValueError):
    pass


def _frozen_grid(pixels, limit, what):
    grid = np.asarray(pixels)
    if grid.ndim != 2 or grid.shape[0] == 0 or grid.shape[1] == 0:
        raise ValueError(f"{what} needs a non-empty 2-d pixel grid, got shape {grid.shape}")
    if max(grid.shape) > _MAX_DIMENSION:
        raise ValueError(f"{what} side exceeds {_MAX_DIMENSION} pixels")
    if grid.dtype != np.uint8:
        if not np.issubdtype(grid.dtype, np.integer):
            raise ValueError(f"{what} pixels must be integers, got {grid.dtype}")
    if grid.size and (int(grid.min()) < 0 or int(grid.max()) >= limit):
        raise ValueError(f"{what} pixels must lie in [0, {limit - 1}]")
    grid = np.array(grid, dtype=np.uint8, copy=True)
    grid.flags.writeable = False
    return grid


@dataclass(frozen=True, eq=False)
class GrayImage:
    """The secret S: an 8-bit grayscale image."""
    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'pixels', _frozen_grid(self.pixels, 256, 'image'))

    @classmethod
    def from_rows(cls, rows):
        return cls(np.array(rows, dtype=np.int64))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def shape(self):
        return self.pixels.shape

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.pixels, other.pixels))

    def __hash__(self):
        return hash((self.shape, self.pixels.tobytes()))

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height})"


class Scheme(enum.IntEnum):
    XOR = 1
    PARTITION = 2

    @property
    def bit_depth(self) -> int:
        return 4 if self is Scheme.XOR else 8

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, name):
        if isinstance(name, Scheme):
            return name
        try:
            return cls[str(name).upper()]
        except KeyError:
            raise ValueError(f"unknown scheme {name!r}, expected one of {[s.label for s in cls]}") from None


@dataclass(frozen=True, eq=False)
class Share:
    """One participant's shadow image. ``bit_depth`` follows from the scheme (4 for XOR, 8 for partition)."""
    scheme: Scheme
    index: int
    pixels: np.ndarray

    def __post_init__(self):
        scheme = Scheme.parse(self.scheme)
        object.__setattr__(self, 'scheme', scheme)
        if self.index not in (1, 2, 3):
            raise ValueError(f"share index must be 1, 2 or 3, got {self.index}")
        object.__setattr__(self, 'pixels', _frozen_grid(self.pixels, 2 ** scheme.bit_depth,
                                                        f"{scheme.label} share"))

    @property
    def bit_depth(self) -> int:
        return self.scheme.bit_depth

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def shape(self):
        return self.pixels.shape

    def __eq__(self, other):
        if not isinstance(other, Share):
            return NotImplemented
        return (self.scheme is other.scheme and self.index == other.index and self.shape == other.shape
                and bool(np.array_equal(self.pixels, other.pixels)))

    def __hash__(self):
        return hash((self.scheme, self.index, self.shape, self.pixels.tobytes()))

    def __repr__(self):
        return f"Share({self.scheme.label}, index={self.index}, {self.width}x{self.height})"


# PGM

def _skip_whitespace_and_comments(data, pos):
    while pos < len(data):
        if data[pos] in _PGM_WHITESPACE:
            pos += 1
        elif data[pos] == ord('#'):
            newline = data.find(b'\n', pos)
            pos = len(data) if newline < 0 else newline + 1
        else:
            break
    return pos


def _pgm_header(data):
    if data[:2] != PGM_MAGIC:
        if data[:2] == b'P2':
            raise PgmHeaderError("ASCII PGM (P2) is not supported, only binary P5")
        raise PgmHeaderError(f"bad PGM magic {bytes(data[:2])!r}")
    if len(data) < 3 or data[2] not in _PGM_WHITESPACE:
        raise PgmHeaderError("PGM magic must be followed by whitespace")
    pos, fields = 2, []
    while len(fields) < 3:
        pos = _skip_whitespace_and_comments(data, pos)
        start = pos
        while pos < len(data) and data[pos] not in _PGM_WHITESPACE and data[pos] != ord('#'):
            pos += 1
        token = bytes(data[start:pos])
        if not token:
            raise PgmHeaderError("PGM header ends before width, height and maxval")
        if not token.isdigit():
            raise PgmHeaderError(f"PGM header field {token!r} is not a decimal number")
        fields.append(int(token))
    if pos >= len(data) or data[pos] not in _PGM_WHITESPACE:
        raise PgmHeaderError("PGM maxval must be followed by a single whitespace byte")
    return fields, pos + 1


def read_pgm(data: bytes) -> GrayImage:
    data = bytes(data)
    (width, height, maxval), offset = _pgm_header(data)
    if width == 0 or height == 0:
        raise PgmHeaderError(f"PGM dimensions must be positive, got {width}x{height}")
    if maxval == 0 or maxval > 255:
        raise PgmMaxvalError(f"PGM maxval must be in [1, 255], got {maxval}")
    count = width * height
    available = len(data) - offset
    if available < count:
        raise PgmTruncatedError(f"PGM {width}x{height} needs {count} data bytes, found {available}")
    pixels = np.frombuffer(data, dtype=np.uint8, count=count, offset=offset).reshape(height, width)
    if int(pixels.max()) > maxval:
        raise PgmMaxvalError(f"PGM pixel value {int(pixels.max())} exceeds maxval {maxval}")
    return GrayImage(pixels)


def write_pgm(image: GrayImage, maxval: int = 255) -> bytes:
    header = f"P5\n{image.width} {image.height}\n{maxval}\n".encode('ascii')
    return header + image.pixels.tobytes()


def share_to_pgm(share: Share) -> bytes:
    """PGM rendering of a share for visual inspection only; XOR shares keep their 4-bit values with maxval 15."""
    return write_pgm(GrayImage(share.pixels), maxval=2 ** share.bit_depth - 1)


# SIS1 share container

def packed_payload_size(scheme, width, height) -> int:
    count = width * height
    return (count + 1) // 2 if Scheme.parse(scheme).bit_depth == 4 else count


def _pack_nibbles(flat):
    if flat.size % 2:
        flat = np.append(flat, np.uint8(0))
    return ((flat[0::2] << 4) | flat[1::2]).astype(np.uint8).tobytes()


def _unpack_nibbles(payload, count):
    packed = np.frombuffer(payload, dtype=np.uint8)
    flat = np.empty(packed.size * 2, dtype=np.uint8)
    flat[0::2] = packed >> 4
    flat[1::2] = packed & 0x0F
    if count % 2 and flat[-1] != 0:
        raise SharePayloadError("padding nibble of a 4-bit share payload must be zero")
    return flat[:count]


def write_share(share: Share) -> bytes:
    header = _SHARE_HEADER.pack(SHARE_MAGIC, SHARE_VERSION, int(share.scheme), share.index, share.bit_depth,
                                share.width, share.height)
    flat = share.pixels.ravel()
    if share.bit_depth == 4:
        if int(flat.max()) >= 16:
            raise ValueError("4-bit share holds a value of 16 or more")
        return header + _pack_nibbles(flat)
    return header + flat.tobytes()


def read_share_header(data: bytes):
    """(scheme, index, width, height) of a share container, checking the header only"""
    data = bytes(data)
    if data[:4] != SHARE_MAGIC:
        raise ShareMagicError(f"bad share magic {data[:4]!r}")
    if len(data) < _SHARE_HEADER.size:
        raise SharePayloadError(f"share header truncated at {len(data)} bytes")
    _, version, scheme_byte, index, bit_depth, width, height = _SHARE_HEADER.unpack_from(data)
    if version != SHARE_VERSION:
        raise ShareVersionError(f"unsupported share container version {version}")
    try:
        scheme = Scheme(scheme_byte)
    except ValueError:
        raise ShareSchemeError(f"unknown share scheme byte {scheme_byte}") from None
    if bit_depth != scheme.bit_depth:
        raise ShareSchemeError(f"{scheme.label} shares are {scheme.bit_depth}-bit, container declares {bit_depth}")
    if index not in (1, 2, 3):
        raise ShareFormatError(f"share index must be 1, 2 or 3, got {index}")
    if width == 0 or height == 0:
        raise ShareFormatError(f"share dimensions must be positive, got {width}x{height}")
    return scheme, index, width, height


def read_share(data: bytes) -> Share:
    data = bytes(data)
    scheme, index, width, height = read_share_header(data)
    payload = data[_SHARE_HEADER.size:]
    expected = packed_payload_size(scheme, width, height)
    if len(payload) != expected:
        raise SharePayloadError(f"{width}x{height} {scheme.label} share needs {expected} payload bytes, "
                                f"found {len(payload)}")
    if scheme.bit_depth == 4:
        flat = _unpack_nibbles(payload, width * height)
    else:
        flat = np.frombuffer(payload, dtype=np.uint8)
    return Share(scheme, index, flat.reshape(height, width))


def share_payload(data: bytes) -> bytes:
    """The pixel payload of a serialized share, without its header."""
    return bytes(data[_SHARE_HEADER.size:])


# metric

def mse(a: GrayImage, b: GrayImage) -> float:
    if a.shape != b.shape:
        raise DimensionMismatchError(f"cannot compare {a.width}x{a.height} with {b.width}x{b.height}")
    difference = a.pixels.astype(np.int64) - b.pixels.astype(np.int64)
    return float(np.mean(difference * difference))


# files

def load_image(path) -> GrayImage:
    path = Path(path)
    _logger.debug(f"Reading image {path}")
    return read_pgm(path.read_bytes())


def save_image(path, image: GrayImage):
    Path(path).write_bytes(write_pgm(image))


def load_share(path) -> Share:
    path = Path(path)
    _logger.debug(f"Reading share {path}")
    return read_share(path.read_bytes())


def save_share(path, share: Share):
    Path(path).write_bytes(write_share(share))
