import itertools

import pytest
import sympy

from sisct.commitments import DEFAULT_PRIME, UNREADABLE_RESIDUAL, ClaimError, ParamsError, PublicParams, Verdict, \
    check_prime, dumps_params, hash_pool, loads_params, make_params, random_prime, share_hash, verify
from sisct.cts import tamper_share_bytes
from sisct.image_io import Scheme, Share, packed_payload_size, read_share, write_share
from sisct.rng import SeededRandom
from sisct.schemes import scheme_pool

SUBSETS = [subset for size in (1, 2, 3) for subset in itertools.combinations([1, 2, 3], size)]


def deal(image, scheme='partition', seed=0, **kwargs):
    rng = SeededRandom(seed)
    triple = scheme_pool[scheme].split(image, rng)
    return triple, make_params(triple, rng=rng, **kwargs)


def tamper(share, offset, xor_byte=1):
    """flip one payload byte; a corrupted XOR padding nibble means the share no longer parses"""
    data = tamper_share_bytes(write_share(share), offset, xor_byte)
    return read_share(data)


class TestMakeParams:
    def test_defaults(self, cheque):
        _, params = deal(cheque)
        assert params.p == DEFAULT_PRIME == 2 ** 61 - 1
        assert params.n == 3
        assert params.scheme is Scheme.PARTITION
        assert params.hash_id == 'sha256-mod-p'
        assert 0 <= params.T < 2 * params.p ** 5

    def test_layout(self, cheque):
        triple, params = deal(cheque, p=1000003, c=17)
        p = params.p
        h = [share_hash(share, p) for share in triple]
        assert params.T == h[0] + 17 * p + h[1] * p ** 2 + 17 * p ** 3 + h[2] * p ** 4

    def test_buffer_constant_not_published(self, cheque):
        _, params = deal(cheque, c=5)
        assert 'c=' not in dumps_params(params)
        assert not hasattr(params, 'c')

    def test_not_prime(self, cheque):
        with pytest.raises(ParamsError):
            deal(cheque, p=1000)

    @pytest.mark.parametrize('c', [0, 101])
    def test_buffer_range(self, cheque, c):
        with pytest.raises(ParamsError):
            deal(cheque, p=101, c=c)

    def test_share_order(self, cheque):
        triple = scheme_pool['xor'].split(cheque)
        with pytest.raises(ParamsError):
            make_params([triple.sc2, triple.sc1, triple.sc3])

    def test_prime_from_environment(self, cheque, monkeypatch):
        monkeypatch.setenv('SISCT_PRIME', '1000003')
        _, params = deal(cheque)
        assert params.p == 1000003

    def test_hash_from_environment(self, cheque, monkeypatch):
        monkeypatch.setenv('SISCT_HASH', 'blake2b-mod-p')
        triple, params = deal(cheque)
        assert params.hash_id == 'blake2b-mod-p'
        assert verify(params, {1: triple.sc1, 2: triple.sc2}).honest

    def test_unknown_hash(self, cheque):
        with pytest.raises(ParamsError, match='md5'):
            deal(cheque, hash_id='md5')

    def test_unknown_hash_from_environment(self, cheque, monkeypatch):
        monkeypatch.setenv('SISCT_HASH', 'md5')
        with pytest.raises(ParamsError):
            deal(cheque)

    def test_hash_pool(self):
        assert set(hash_pool.keys()) == {'sha256-mod-p', 'blake2b-mod-p'}


class TestVerify:
    @pytest.mark.parametrize('scheme', ['xor', 'partition'])
    def test_completeness(self, random_image, scheme):
        for seed in range(20):
            triple, params = deal(random_image(5, 3, seed=seed), scheme=scheme, seed=seed)
            for subset in SUBSETS:
                report = verify(params, {j: triple.by_index(j) for j in subset})
                assert report.honest, f"seed {seed} subset {subset}"
                assert report.indices == subset
                assert all(entry.residual == 0 for entry in report)

    @pytest.mark.parametrize('scheme', ['xor', 'partition'])
    def test_tampered_share_named(self, cheque, scheme):
        triple, params = deal(cheque, scheme=scheme)
        forged = tamper(triple.sc3, offset=0)
        report = verify(params, {1: triple.sc1, 3: forged})
        assert report[1] is Verdict.HONEST
        assert report[3] is Verdict.CHEATER
        assert report.cheaters == (3,)

    def test_absent_share_not_blamed(self, cheque):
        """a cheater among the presented shares does not implicate anyone else"""
        triple, params = deal(cheque)
        report = verify(params, {2: tamper(triple.sc2, offset=5)})
        assert report.cheaters == (2,)

    def test_swapped_claim(self, cheque):
        triple, params = deal(cheque)
        assert verify(params, {1: triple.sc2, 2: triple.sc1}).cheaters == (1, 2)

    def test_pairs(self, cheque):
        triple, params = deal(cheque)
        report = verify(params, [(3, triple.sc3), (2, triple.sc2)])
        assert report.indices == (2, 3)
        assert report.honest

    @pytest.mark.parametrize('cheaters', [cheaters for size in (1, 2, 3)
                                          for cheaters in itertools.combinations([1, 2, 3], size)])
    def test_every_cheater_combination(self, cheque, cheaters):
        triple, params = deal(cheque, seed=len(cheaters))
        claims = {index: tamper(share, offset=index, xor_byte=0x21) if index in cheaters else share
                  for index, share in enumerate(triple, start=1)}
        report = verify(params, claims)
        assert report.cheaters == cheaters
        assert all(entry.residual != 0 for entry in report if entry.index in cheaters)

    @pytest.mark.slow
    @pytest.mark.parametrize('scheme', ['xor', 'partition'])
    def test_tamper_corpus(self, random_image, scheme):
        rng = SeededRandom(99)
        for instance in range(300):
            width, height = 4 + instance % 5, 2 + instance % 3
            triple, params = deal(random_image(width, height, seed=instance), scheme=scheme, seed=instance)
            # the last XOR byte holds a padding nibble for odd pixel counts, so stay clear of it
            full_bytes = width * height // 2 if scheme == 'xor' else packed_payload_size(scheme, width, height)
            subset = SUBSETS[3 + instance % 4]
            cheaters = {index for index in subset if rng.randbelow(2)} or {subset[0]}
            claims = {}
            for index in subset:
                share = triple.by_index(index)
                if index in cheaters:
                    share = tamper(share, offset=rng.randbelow(full_bytes),
                                   xor_byte=rng.randbelow(255) + 1)
                claims[index] = share
            report = verify(params, claims)
            assert set(report.cheaters) == cheaters, f"instance {instance}"

    def test_serialized_claims(self, cheque):
        triple, params = deal(cheque, scheme='xor')
        report = verify(params, {1: write_share(triple.sc1), 2: triple.sc2})
        assert report.honest

    def test_unreadable_claim(self, random_image):
        triple, params = deal(random_image(3, 3), scheme='xor')
        padded = tamper_share_bytes(write_share(triple.sc3), offset=4, xor_byte=1)
        for unreadable in (padded, None):
            report = verify(params, {1: triple.sc1, 3: unreadable})
            assert report.cheaters == (3,)
            assert report.render() == f"index=1 verdict=Honest residual=0\nindex=3 verdict=Cheater " \
                                      f"residual={UNREADABLE_RESIDUAL}\n"
        assert UNREADABLE_RESIDUAL == -1

    def test_empty_claims(self, cheque):
        _, params = deal(cheque)
        with pytest.raises(ClaimError):
            verify(params, {})

    def test_index_out_of_range(self, cheque):
        triple, params = deal(cheque)
        with pytest.raises(ClaimError):
            verify(params, {4: triple.sc1})

    def test_duplicate_claims(self, cheque):
        triple, params = deal(cheque)
        with pytest.raises(ClaimError):
            verify(params, [(1, triple.sc1), (1, triple.sc1)])

    def test_render(self, cheque):
        triple, params = deal(cheque)
        assert verify(params, {1: triple.sc1, 3: triple.sc3}).render() == \
               "index=1 verdict=Honest residual=0\nindex=3 verdict=Honest residual=0\n"


class TestParamsFile:
    def test_format(self):
        params = PublicParams(scheme=Scheme.XOR, p=101, T=12345)
        assert dumps_params(params) == "sisct-params v1\nscheme=xor\np=101\nT=12345\nn=3\nhash=sha256-mod-p\n"

    def test_load(self, cheque):
        _, params = deal(cheque)
        assert loads_params(dumps_params(params)) == params
        assert loads_params(dumps_params(params).encode('ascii')) == params

    @pytest.mark.parametrize('text', [
        "",
        "sisct-params v2\nscheme=xor\np=101\nT=1\nn=3\nhash=sha256-mod-p\n",
        "sisct-params v1\nscheme=xor\np=101\nT=1\nn=3\n",
        "sisct-params v1\nscheme=xor\np=101\nT=1\nn=3\nhash=sha256-mod-p\nc=4\n",
        "sisct-params v1\nscheme=xor\np=101\nT=-1\nn=3\nhash=sha256-mod-p\n",
        "sisct-params v1\nscheme=xor\np=100\nT=1\nn=3\nhash=sha256-mod-p\n",
        "sisct-params v1\nscheme=rot13\np=101\nT=1\nn=3\nhash=sha256-mod-p\n",
        "sisct-params v1\nscheme=xor\np=101\nT=1\nn=3\nhash=md5\n",
        "sisct-params v1\nscheme=xor\np=101\nT=1\np=103\nn=3\nhash=sha256-mod-p\n",
        f"sisct-params v1\nscheme=xor\np=101\nT={2 * 101 ** 5}\nn=3\nhash=sha256-mod-p\n",
    ])
    def test_malformed(self, text):
        with pytest.raises(ParamsError):
            loads_params(text)


class TestPrimes:
    @pytest.mark.parametrize('bits', [2, 8, 61, 127])
    def test_random_prime(self, bits):
        p = random_prime(bits, SeededRandom(bits))
        assert p.bit_length() == bits
        assert sympy.isprime(p)

    def test_too_few_bits(self):
        with pytest.raises(ParamsError):
            random_prime(1)

    @pytest.mark.parametrize('value', [1, 4, 'eleven', 2 ** 61 + 1])
    def test_check_prime(self, value):
        with pytest.raises(ParamsError):
            check_prime(value)


class TestShareHash:
    @pytest.mark.parametrize('p', [101, 1000003, DEFAULT_PRIME])
    @pytest.mark.parametrize('hash_id', sorted(hash_pool.keys()))
    def test_below_prime(self, random_image, p, hash_id):
        for seed in range(20):
            for share in scheme_pool['partition'].split(random_image(4, 3, seed=seed), SeededRandom(seed)):
                assert 0 <= share_hash(share, p, hash_id) < p

    def test_deterministic(self, cheque):
        triple = scheme_pool['xor'].split(cheque)
        assert share_hash(triple.sc2, DEFAULT_PRIME) == share_hash(read_share(write_share(triple.sc2)), DEFAULT_PRIME)

    @pytest.mark.parametrize('hash_id', sorted(hash_pool.keys()))
    def test_one_pixel_changes_hash(self, cheque, hash_id):
        share = scheme_pool['partition'].split(cheque, SeededRandom(3)).sc1
        pixels = share.pixels.copy()
        pixels[2, 1] ^= 1
        changed = Share(share.scheme, share.index, pixels)
        assert share_hash(changed, DEFAULT_PRIME, hash_id) != share_hash(share, DEFAULT_PRIME, hash_id)
