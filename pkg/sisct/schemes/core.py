import logging
from dataclasses import dataclass

from sisct.image_io import DimensionMismatchError, GrayImage, Scheme, Share

_logger = logging.getLogger(__name__)


class ShareCombinationError(ValueError):
    pass


class DuplicateShareIndexError(ShareCombinationError):
    pass


class SchemeMismatchError(ShareCombinationError):
    pass


@dataclass(frozen=True)
class ShareTriple:
    """The dealer's three shares SC1, SC2, SC3 of one secret image."""
    sc1: Share
    sc2: Share
    sc3: Share

    def __post_init__(self):
        for expected_index, share in enumerate(self, start=1):
            if share.index != expected_index:
                raise ValueError(f"share in position {expected_index} carries index {share.index}")
            if share.scheme is not self.sc1.scheme:
                raise SchemeMismatchError("all shares of a triple must come from one scheme")
            if share.shape != self.sc1.shape:
                raise DimensionMismatchError("all shares of a triple must have the same dimensions")

    def __iter__(self):
        return iter((self.sc1, self.sc2, self.sc3))

    def by_index(self, index: int) -> Share:
        if index not in (1, 2, 3):
            raise ValueError(f"share index must be 1, 2 or 3, got {index}")
        return (self.sc1, self.sc2, self.sc3)[index - 1]

    @property
    def scheme(self) -> Scheme:
        return self.sc1.scheme

    @property
    def shape(self):
        return self.sc1.shape


def ordered_pair(a: Share, b: Share, scheme: Scheme):
    """Validate two shares for reconstruction and return them sorted by index."""
    for share in (a, b):
        if share.scheme is not scheme:
            raise SchemeMismatchError(f"expected {scheme.label} shares, got a {share.scheme.label} share")
    if a.index == b.index:
        raise DuplicateShareIndexError(f"both shares carry index {a.index}")
    if a.shape != b.shape:
        raise DimensionMismatchError(f"share {a.index} is {a.width}x{a.height}, "
                                     f"share {b.index} is {b.width}x{b.height}")
    first, second = sorted((a, b), key=lambda share: share.index)
    _logger.debug(f"Reconstructing {scheme.label} image from shares {first.index} and {second.index}")
    return first, second


class SharingScheme:
    scheme: Scheme = None

    @property
    def name(self) -> str:
        return self.scheme.label

    @property
    def bit_depth(self) -> int:
        return self.scheme.bit_depth

    def split(self, image: GrayImage, rng=None) -> ShareTriple:
        raise NotImplementedError()

    def reconstruct(self, a: Share, b: Share) -> GrayImage:
        raise NotImplementedError()

    def __repr__(self):
        return f"{self.__class__.__name__}()"
