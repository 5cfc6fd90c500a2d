import hashlib
import logging
import os

from sisct.image_io import Share, write_share

_logger = logging.getLogger(__name__)


class HashPool(dict):
    """
    One-way functions usable for share commitments.
    Each entry maps from a `hash_id` to a function bytes -> digest bytes; the digest is reduced mod p.
    """

    def __init__(self):
        super(HashPool, self).__init__()
        self['sha256-mod-p'] = lambda data: hashlib.sha256(data).digest()
        self['blake2b-mod-p'] = lambda data: hashlib.blake2b(data).digest()

    def __missing__(self, key):
        raise KeyError(f"unknown hash construction {key!r}, known: {sorted(self.keys())}")


hash_pool = HashPool()

DEFAULT_HASH_ID = 'sha256-mod-p'


def default_hash_id() -> str:
    return os.getenv('SISCT_HASH', DEFAULT_HASH_ID)


def share_hash(share: Share, p: int, hash_id: str = None) -> int:
    """digest of the canonical share container, as a big-endian integer reduced mod p"""
    hash_id = hash_id or default_hash_id()
    digest = hash_pool[hash_id](write_share(share))
    return int.from_bytes(digest, 'big') % p
