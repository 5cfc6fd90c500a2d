import logging

from sisct.commitments import make_params
from sisct.rng import random_source
from sisct.schemes import reconstruct, scheme_pool

_logger = logging.getLogger(__name__)


def split_image(image, scheme='partition', seed=None, prime=None):
    """Split `image` with the named scheme and commit to the shares. Returns ``(triple, params)``."""
    rng = random_source(seed)
    triple = scheme_pool[scheme].split(image, rng)
    params = make_params(triple, p=prime, rng=rng)
    return triple, params


def reconstruct_image(a, b):
    return reconstruct(a, b)
