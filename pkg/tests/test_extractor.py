import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpnqrng import (
    QuantizedTrace,
    ToeplitzSpec,
    extract_block,
    extract_stream,
    extraction_ratio,
    monobit_test,
    output_bits_for,
    runs_test,
)
from lpnqrng import _gf2_fallback
from lpnqrng.errors import (
    InvalidParameterError,
    LengthMismatchError,
    TooFewBitsError,
)
from lpnqrng.extractor import (
    codes_to_bits,
    pack_bits_to_bytes,
    pack_bits_to_words,
    unpack_bytes_to_bits,
)
from lpnqrng.rng import bit_stream

try:
    from lpnqrng import _gf2
except ImportError:
    _gf2 = None


def random_spec(rng, max_n=64):
    n_in = int(rng.integers(1, max_n + 1))
    n_out = int(rng.integers(1, n_in + 1))
    seed = rng.integers(0, 2, n_in + n_out - 1).astype(np.uint8)
    return ToeplitzSpec(n_in, n_out, seed)


def dense_oracle(spec, x):
    return (spec.matrix().astype(np.int64) @ x.astype(np.int64)) % 2


class TestPacking:
    def test_words_msb_first(self):
        bits = np.zeros(64, dtype=np.uint8)
        bits[0] = 1  # most significant bit of the first word
        assert pack_bits_to_words(bits)[0] == np.uint64(1) << np.uint64(63)

    def test_pad_is_zero(self):
        bits = np.ones(3, dtype=np.uint8)
        assert pack_bits_to_words(bits)[0] == np.uint64(0b111) << np.uint64(61)

    def test_bytes_round_trip(self):
        bits = bit_stream(5, 173)
        again = unpack_bytes_to_bits(pack_bits_to_bytes(bits), 173)
        assert np.array_equal(bits, again)

    def test_unpack_too_short(self):
        with pytest.raises(LengthMismatchError):
            unpack_bytes_to_bits(b"\x00", 9)

    def test_codes_to_bits_twos_complement_msb_first(self):
        got = codes_to_bits(np.array([5, -1, -8], dtype=np.int16), 4)
        want = [0, 1, 0, 1,  1, 1, 1, 1,  1, 0, 0, 0]
        assert got.tolist() == want


class TestToeplitzSpec:
    def test_seed_length_checked(self):
        with pytest.raises(LengthMismatchError):
            ToeplitzSpec(8, 8, np.zeros(10, dtype=np.uint8))

    def test_output_bounds_checked(self):
        with pytest.raises(InvalidParameterError):
            ToeplitzSpec(8, 9, np.zeros(16, dtype=np.uint8))
        with pytest.raises(InvalidParameterError):
            ToeplitzSpec(8, 0, np.zeros(7, dtype=np.uint8))

    def test_matrix_layout(self):
        # column part first (top to bottom), then the first row
        seed = np.arange(1, 8) % 2  # 1 0 1 0 1 0 1 for a 4x4 matrix
        spec = ToeplitzSpec(4, 4, seed.astype(np.uint8))
        t = spec.matrix()
        for r in range(4):
            for c in range(4):
                d = r - c
                want = seed[d] if d >= 0 else seed[4 - 1 - d]
                assert t[r, c] == want

    def test_production_scale_geometry(self):
        spec = ToeplitzSpec(2048, 1800, bit_stream(1, 2048 + 1800 - 1))
        assert spec.matrix().shape == (1800, 2048)


class TestExtractionRatio:
    def test_values(self):
        assert output_bits_for(7.03, 8, 2048) == 1799
        assert output_bits_for(6.35, 8, 2048) == 1625
        assert output_bits_for(0.0, 8, 2048) == 0
        assert extraction_ratio(4.0, 8) == 0.5

    def test_bounds(self):
        with pytest.raises(InvalidParameterError):
            extraction_ratio(9.0, 8)


class TestExtractBlock:
    def test_zero_seed_zero_output(self):
        spec = ToeplitzSpec(16, 8, np.zeros(23, dtype=np.uint8))
        x = bit_stream(3, 16)
        assert not extract_block(x, spec).any()

    def test_identity(self):
        n = 48
        seed = np.zeros(2 * n - 1, dtype=np.uint8)
        seed[0] = 1
        spec = ToeplitzSpec(n, n, seed)
        x = bit_stream(4, n)
        assert np.array_equal(extract_block(x, spec), x)

    def test_against_dense_oracle_64x48(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            seed = rng.integers(0, 2, 64 + 48 - 1).astype(np.uint8)
            spec = ToeplitzSpec(64, 48, seed)
            x = rng.integers(0, 2, 64).astype(np.uint8)
            assert np.array_equal(extract_block(x, spec),
                                  dense_oracle(spec, x).astype(np.uint8))

    def test_against_dense_oracle_random_shapes(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            spec = random_spec(rng)
            x = rng.integers(0, 2, spec.input_bits).astype(np.uint8)
            assert np.array_equal(extract_block(x, spec),
                                  dense_oracle(spec, x).astype(np.uint8))

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=60, deadline=None)
    def test_gf2_linearity(self, case_seed):
        rng = np.random.default_rng(case_seed)
        spec = random_spec(rng, max_n=96)
        x = rng.integers(0, 2, spec.input_bits).astype(np.uint8)
        y = rng.integers(0, 2, spec.input_bits).astype(np.uint8)
        lhs = extract_block(x ^ y, spec)
        rhs = extract_block(x, spec) ^ extract_block(y, spec)
        assert np.array_equal(lhs, rhs)

    def test_wrong_length(self):
        spec = ToeplitzSpec(16, 8, np.zeros(23, dtype=np.uint8))
        with pytest.raises(LengthMismatchError):
            extract_block(np.zeros(15, dtype=np.uint8), spec)

    def test_deterministic(self):
        spec = ToeplitzSpec(128, 96, bit_stream(8, 223))
        x = bit_stream(9, 128)
        assert np.array_equal(extract_block(x, spec), extract_block(x, spec))


class TestBackends:
    def test_fallback_matches_dense_oracle(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            spec = random_spec(rng)
            x = rng.integers(0, 2, spec.input_bits).astype(np.uint8)
            got = _gf2_fallback.toeplitz_apply_packed(
                pack_bits_to_words(spec.matrix()),
                pack_bits_to_words(x)[None, :])[0]
            assert np.array_equal(got, dense_oracle(spec, x).astype(np.uint8))

    @pytest.mark.skipif(_gf2 is None, reason="compiled core not built")
    def test_compiled_matches_fallback(self):
        rng = np.random.default_rng(14)
        spec = ToeplitzSpec(512, 300, rng.integers(0, 2, 811).astype(np.uint8))
        blocks = rng.integers(0, 2, (40, 512)).astype(np.uint8)
        rows = pack_bits_to_words(spec.matrix())
        packed = pack_bits_to_words(blocks)
        a = _gf2.toeplitz_apply_packed(rows, packed)
        b = _gf2_fallback.toeplitz_apply_packed(rows, packed)
        assert np.array_equal(a, b)


class TestExtractStream:
    def test_empty_trace(self, adc8):
        spec = ToeplitzSpec(2048, 1800, bit_stream(1, 3847))
        qt = QuantizedTrace(np.empty(0, dtype=np.int16), adc8, 1e-10)
        assert extract_stream(qt, spec).size == 0

    def test_single_block_count(self, adc8):
        # 2048 / 8 codes give exactly one block and n_out bits
        spec = ToeplitzSpec(2048, 1800, bit_stream(2, 3847))
        codes = (np.arange(256) - 128).astype(np.int16)
        qt = QuantizedTrace(codes, adc8, 1e-10)
        assert extract_stream(qt, spec).size == 1800

    def test_partial_block_discarded(self, adc8):
        spec = ToeplitzSpec(2048, 1800, bit_stream(2, 3847))
        codes = (np.arange(300) % 200 - 100).astype(np.int16)
        qt = QuantizedTrace(codes, adc8, 1e-10)
        assert extract_stream(qt, spec).size == 1800

    def test_matches_blockwise_extraction(self, adc8):
        spec = ToeplitzSpec(256, 100, bit_stream(6, 355))
        codes = ((np.arange(96) * 37) % 256 - 128).astype(np.int16)
        qt = QuantizedTrace(codes, adc8, 1e-10)
        bits = codes_to_bits(codes, 8)
        want = np.concatenate([
            extract_block(bits[i * 256:(i + 1) * 256], spec) for i in range(3)])
        assert np.array_equal(extract_stream(qt, spec), want)


class TestSanityStatistics:
    def test_alternating_bits(self):
        bits = np.tile(np.array([0, 1], dtype=np.uint8), 500)
        assert monobit_test(bits) == pytest.approx(1.0)
        assert runs_test(bits) < 1e-100

    def test_all_zeros(self):
        bits = np.zeros(1000, dtype=np.uint8)
        assert monobit_test(bits) < 1e-100
        assert runs_test(bits) == 0.0  # prefilter: bias too large for runs

    def test_good_prng_stream(self):
        bits = bit_stream(31337, 2**20)
        assert monobit_test(bits) > 0.01
        assert runs_test(bits) > 0.01

    def test_too_few_bits(self):
        with pytest.raises(TooFewBitsError):
            monobit_test(np.zeros(99, dtype=np.uint8))
        with pytest.raises(TooFewBitsError):
            runs_test(np.zeros(99, dtype=np.uint8))
