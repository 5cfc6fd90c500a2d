import enum
import logging
import os
from dataclasses import dataclass
from typing import Mapping

import sympy

from sisct.commitments.hashing import DEFAULT_HASH_ID, default_hash_id, hash_pool, share_hash
from sisct.commitments.radix import encode_spaced, radix_digit
from sisct.image_io import Scheme, Share, ShareFormatError, read_share
from sisct.rng import SystemRandom

_logger = logging.getLogger(__name__)

# 2^61 - 1, a Mersenne prime
DEFAULT_PRIME = 2305843009213693951
PARAMS_HEADER = 'sisct-params v1'
UNREADABLE_RESIDUAL = -1
_PARAMS_KEYS = ('scheme', 'p', 'T', 'n', 'hash')


class ParamsError(ValueError):
    pass


class ClaimError(ValueError):
    pass


def check_prime(p) -> int:
    try:
        p = int(p)
    except (TypeError, ValueError):
        raise ParamsError(f"modulus {p!r} is not an integer") from None
    if not sympy.isprime(p):
        raise ParamsError(f"modulus {p} is not prime")
    return p


def default_prime() -> int:
    return check_prime(os.getenv('SISCT_PRIME', DEFAULT_PRIME))


def random_prime(bits: int, rng=None) -> int:
    """a prime of exactly `bits` bits, chosen from a random starting point drawn from `rng`"""
    if bits < 2:
        raise ParamsError(f"a prime needs at least 2 bits, got {bits}")
    rng = rng if rng is not None else SystemRandom()
    low, high = 2 ** (bits - 1), 2 ** bits
    candidate = sympy.nextprime(low + rng.randbelow(low) - 1)
    if candidate >= high:
        candidate = sympy.nextprime(low - 1)
    return int(candidate)


class Verdict(enum.Enum):
    HONEST = 'Honest'
    CHEATER = 'Cheater'


@dataclass(frozen=True)
class PublicParams:
    """The dealer's published commitment (T, p). The buffer constant c is never part of it."""
    scheme: Scheme
    p: int
    T: int
    n: int = 3
    hash_id: str = DEFAULT_HASH_ID

    def __post_init__(self):
        object.__setattr__(self, 'scheme', Scheme.parse(self.scheme))
        check_prime(self.p)
        if self.n < 1:
            raise ParamsError(f"participant count must be positive, got {self.n}")
        if not 0 <= self.T < 2 * self.p ** (2 * self.n - 1):
            raise ParamsError(f"T does not fit the radix-{self.p} layout for {self.n} participants")
        if self.hash_id not in hash_pool:
            raise ParamsError(f"unknown hash construction {self.hash_id!r}")


@dataclass(frozen=True)
class ParticipantVerdict:
    index: int
    verdict: Verdict
    residual: int


@dataclass(frozen=True)
class VerificationReport:
    verdicts: tuple

    def __getitem__(self, index) -> Verdict:
        for entry in self.verdicts:
            if entry.index == index:
                return entry.verdict
        raise KeyError(f"participant {index} presented no share")

    def __iter__(self):
        return iter(self.verdicts)

    @property
    def indices(self):
        return tuple(entry.index for entry in self.verdicts)

    @property
    def honest(self) -> bool:
        return all(entry.verdict is Verdict.HONEST for entry in self.verdicts)

    @property
    def cheaters(self):
        return tuple(entry.index for entry in self.verdicts if entry.verdict is Verdict.CHEATER)

    def render(self) -> str:
        return ''.join(f"index={entry.index} verdict={entry.verdict.value} residual={entry.residual}\n"
                       for entry in self.verdicts)


def make_params(shares, p: int = None, c: int = None, rng=None, hash_id: str = None) -> PublicParams:
    """
    Dealer side: commit to the hashes of all shares,
    T = sum_i h(SC_i) p^(2(i-1)) + sum_{i<n} c p^(2i-1).

    :param shares: the dealer's shares, indices 1..n in order (a ShareTriple works)
    :param c: buffer constant in [1, p); drawn from `rng` when omitted and forgotten afterwards
    """
    shares = list(shares)
    p = check_prime(p) if p is not None else default_prime()
    hash_id = hash_id or default_hash_id()
    if hash_id not in hash_pool:
        raise ParamsError(f"unknown hash construction {hash_id!r}, known: {sorted(hash_pool.keys())}")
    if len(shares) != 3:
        raise ParamsError(f"expected 3 shares, got {len(shares)}")
    if [share.index for share in shares] != [1, 2, 3]:
        raise ParamsError(f"shares must carry indices 1, 2, 3 in order, "
                          f"got {[share.index for share in shares]}")
    if len({share.scheme for share in shares}) != 1:
        raise ParamsError("shares must all come from one scheme")
    if c is None:
        rng = rng if rng is not None else SystemRandom()
        c = rng.randbelow(p - 1) + 1
    if not 1 <= c < p:
        raise ParamsError(f"buffer constant c={c} outside [1, {p})")
    hashes = [share_hash(share, p, hash_id) for share in shares]
    T = encode_spaced(hashes, p, c)
    _logger.debug(f"Committed {len(shares)} shares with a {p.bit_length()}-bit prime and {hash_id}")
    return PublicParams(scheme=shares[0].scheme, p=p, T=T, n=len(shares), hash_id=hash_id)


def _claim_items(claims):
    items = list(claims.items()) if isinstance(claims, Mapping) else list(claims)
    if not items:
        raise ClaimError("no shares presented")
    indices = [index for index, _ in items]
    if len(set(indices)) != len(indices):
        raise ClaimError(f"duplicate participant index in {indices}")
    return sorted(items, key=lambda item: item[0])


def _presented_share(claim):
    """a claim may be a Share, the serialized share bytes, or None for a share that could not be read"""
    if claim is None or isinstance(claim, Share):
        return claim
    try:
        return read_share(claim)
    except ShareFormatError as e:
        _logger.warning(f"Presented share does not parse: {e}")
        return None


def verify(params: PublicParams, claims) -> VerificationReport:
    """
    Receiver side: decide for every presented share whether it is the one the dealer committed to.
    A claim that is not a readable share is a Cheater with residual ``UNREADABLE_RESIDUAL``.

    :param claims: ``{j: share}`` or an iterable of ``(j, share)`` pairs for the claimant group G;
        each share is a :class:`Share`, its serialized bytes, or None
    """
    items = _claim_items(claims)
    for index, _ in items:
        if not 1 <= index <= params.n:
            raise ClaimError(f"participant index {index} outside 1..{params.n}")
    items = [(index, _presented_share(claim)) for index, claim in items]
    # absent and unreadable participants contribute nothing to T'
    T_prime = sum(share_hash(share, params.p, params.hash_id) * params.p ** (2 * (index - 1))
                  for index, share in items if share is not None)
    difference = params.T - T_prime
    verdicts = []
    for index, share in items:
        if share is None:
            verdicts.append(ParticipantVerdict(index=index, verdict=Verdict.CHEATER, residual=UNREADABLE_RESIDUAL))
            continue
        residual = radix_digit(difference, params.p, index, spaced=True, n=params.n)
        verdict = Verdict.HONEST if residual == 0 else Verdict.CHEATER
        verdicts.append(ParticipantVerdict(index=index, verdict=verdict, residual=residual))
    report = VerificationReport(tuple(verdicts))
    _logger.debug(f"Verified participants {report.indices}, cheaters: {report.cheaters}")
    return report


def dumps_params(params: PublicParams) -> str:
    return (f"{PARAMS_HEADER}\n"
            f"scheme={params.scheme.label}\n"
            f"p={params.p}\n"
            f"T={params.T}\n"
            f"n={params.n}\n"
            f"hash={params.hash_id}\n")


def loads_params(text: str) -> PublicParams:
    if isinstance(text, bytes):
        try:
            text = text.decode('ascii')
        except UnicodeDecodeError:
            raise ParamsError("params file is not ASCII text") from None
    lines = text.split('\n')
    if lines and lines[-1] == '':
        lines = lines[:-1]
    if not lines or lines[0] != PARAMS_HEADER:
        raise ParamsError(f"params file must start with {PARAMS_HEADER!r}")
    values = {}
    for line in lines[1:]:
        key, separator, value = line.partition('=')
        if not separator or key not in _PARAMS_KEYS:
            raise ParamsError(f"unexpected params line {line!r}")
        if key in values:
            raise ParamsError(f"duplicate params key {key!r}")
        values[key] = value
    missing = [key for key in _PARAMS_KEYS if key not in values]
    if missing:
        raise ParamsError(f"params file lacks {missing}")
    for key in ('p', 'T', 'n'):
        if not values[key].isdigit():
            raise ParamsError(f"{key} must be a non-negative decimal integer, got {values[key]!r}")
    try:
        scheme = Scheme.parse(values['scheme'])
    except ValueError as e:
        raise ParamsError(str(e)) from None
    return PublicParams(scheme=scheme, p=int(values['p']), T=int(values['T']), n=int(values['n']),
                        hash_id=values['hash'])
