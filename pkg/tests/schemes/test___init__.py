import pytest

from sisct.image_io import Scheme, Share
from sisct.rng import SeededRandom
from sisct.schemes import PartitionScheme, SchemeMismatchError, XorScheme, reconstruct, scheme_pool


class TestSchemePool:
    def test_names(self):
        assert set(scheme_pool.keys()) == {'xor', 'partition'}

    @pytest.mark.parametrize(['key', 'expected'], [
        ('xor', XorScheme), (Scheme.XOR, XorScheme),
        ('partition', PartitionScheme), (Scheme.PARTITION, PartitionScheme),
    ])
    def test_lookup(self, key, expected):
        assert isinstance(scheme_pool[key], expected)

    def test_unknown(self):
        with pytest.raises(KeyError):
            scheme_pool['shamir']

    def test_no_overwrite(self):
        with pytest.raises(KeyError):
            scheme_pool['xor'] = XorScheme()

    @pytest.mark.parametrize(['name', 'bit_depth'], [('xor', 4), ('partition', 8)])
    def test_bit_depth(self, name, bit_depth):
        assert scheme_pool[name].bit_depth == bit_depth


class TestReconstruct:
    @pytest.mark.parametrize('name', ['xor', 'partition'])
    def test_dispatch(self, cheque, name):
        triple = scheme_pool[name].split(cheque, SeededRandom(5))
        assert reconstruct(triple.sc1, triple.sc3) == cheque

    def test_mixed_schemes(self):
        with pytest.raises(SchemeMismatchError):
            reconstruct(Share(Scheme.XOR, 1, [[0]]), Share(Scheme.PARTITION, 2, [[0]]))
