import logging

from sisct.image_io import GrayImage, Scheme, Share
from sisct.schemes.core import (DuplicateShareIndexError, SchemeMismatchError, ShareCombinationError,
                                ShareTriple, SharingScheme)
from sisct.schemes.partition_scheme import (PartitionScheme, PartitionShareTriple, partition_masks,
                                            partition_reconstruct, partition_split)
from sisct.schemes.xor_scheme import XorScheme, XorShareTriple, xor_leak, xor_reconstruct, xor_split

_logger = logging.getLogger(__name__)


class SchemePool(dict):
    """
    Provides the (2,3) sharing schemes.
    Each entry maps from scheme `name` to a :class:`SharingScheme`.
    """

    def __init__(self):
        super(SchemePool, self).__init__()
        for scheme in [XorScheme(), PartitionScheme()]:
            self[scheme.name] = scheme

    def __setitem__(self, key, value):
        if key in self:
            raise KeyError(f"scheme {key!r} is already registered")
        super(SchemePool, self).__setitem__(key, value)

    def __missing__(self, key):
        if isinstance(key, Scheme):
            return self[key.label]
        raise KeyError(f"unknown scheme {key!r}, known schemes: {sorted(self.keys())}")


scheme_pool = SchemePool()


def reconstruct(a: Share, b: Share) -> GrayImage:
    """Reconstruct from any two shares of the same scheme."""
    if a.scheme is not b.scheme:
        raise SchemeMismatchError(f"cannot combine a {a.scheme.label} share with a {b.scheme.label} share")
    return scheme_pool[a.scheme].reconstruct(a, b)
