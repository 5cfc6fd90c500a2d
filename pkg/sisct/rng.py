"""
Random sources for share generation and the dealer's buffer constant.

``SeededRandom`` is reproducible and meant for tests and simulations;
``SystemRandom`` draws from the operating system's CSPRNG and is what deployments should use.
"""
import logging
import secrets

import numpy as np

_logger = logging.getLogger(__name__)


class SeededRandom:
    def __init__(self, seed: int):
        self.seed = seed
        self._generator = np.random.default_rng(seed)

    def bytes(self, count: int) -> np.ndarray:
        return self._generator.integers(0, 256, size=count, dtype=np.uint8)

    def randbelow(self, bound: int) -> int:
        """uniform integer in [0, bound) for arbitrarily large bounds, by rejection over whole bytes"""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        nbits = bound.bit_length()
        nbytes = (nbits + 7) // 8
        excess = nbytes * 8 - nbits
        while True:
            value = int.from_bytes(self.bytes(nbytes).tobytes(), 'big') >> excess
            if value < bound:
                return value

    def __repr__(self):
        return f"SeededRandom(seed={self.seed})"


class SystemRandom:
    def bytes(self, count: int) -> np.ndarray:
        return np.frombuffer(secrets.token_bytes(count), dtype=np.uint8)

    def randbelow(self, bound: int) -> int:
        return secrets.randbelow(bound)

    def __repr__(self):
        return "SystemRandom()"


def random_source(seed=None):
    if seed is None:
        _logger.debug("Using the system CSPRNG")
        return SystemRandom()
    return SeededRandom(int(seed))
