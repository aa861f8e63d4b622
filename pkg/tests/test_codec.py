"""Byte codec round trips, compression ratios, and PGM/PPM I/O."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superjam.codec import (CodecSpec, Image, decode, encode, read_image,
                            write_image)


class TestImage:
    def test_pixel_count_validated(self):
        with pytest.raises(ValueError):
            Image(2, 2, 1, b"\x00" * 3)

    def test_bad_channels(self):
        with pytest.raises(ValueError):
            Image(1, 1, 2, b"\x00\x00")

    def test_array_roundtrip(self):
        arr = np.arange(24, dtype=np.uint8).reshape(2, 4, 3)
        assert np.array_equal(Image.from_array(arr).to_array(), arr)


class TestCodecSpec:
    def test_raw_cr(self):
        assert CodecSpec().cr == 4.0

    def test_block_cr(self):
        assert CodecSpec(2).cr == 1.0
        assert CodecSpec(4).cr == 0.25

    def test_symbol_count(self):
        assert CodecSpec().symbol_count((8, 8, 3)) == 4 * 8 * 8 * 3
        assert CodecSpec(2).symbol_count((8, 8, 1)) == 4 * 64 // 4

    def test_block_must_divide(self):
        with pytest.raises(ValueError, match="does not divide"):
            CodecSpec(3).symbol_count((8, 8, 1))


class TestRawMode:
    def test_bit_slicing(self):
        img = Image(1, 1, 1, bytes([0b00011011]))
        assert list(encode(img, CodecSpec())) == [0b00, 0b01, 0b10, 0b11]

    def test_roundtrip_exact(self):
        gen = np.random.default_rng(1)
        img = Image.from_array(gen.integers(0, 256, size=(5, 7, 3), dtype=np.uint8))
        spec = CodecSpec()
        assert decode(encode(img, spec), img.shape, spec) == img

    @settings(max_examples=30, deadline=None)
    @given(h=st.integers(1, 8), w=st.integers(1, 8),
           c=st.sampled_from([1, 3]), seed=st.integers(0, 2**32 - 1))
    def test_roundtrip_property(self, h, w, c, seed):
        gen = np.random.default_rng(seed)
        img = Image.from_array(gen.integers(0, 256, size=(h, w, c), dtype=np.uint8))
        spec = CodecSpec()
        assert decode(encode(img, spec), img.shape, spec) == img

    def test_single_label_flip_is_local(self):
        img = Image(4, 1, 1, bytes([10, 20, 30, 40]))
        spec = CodecSpec()
        labels = encode(img, spec)
        labels[5] ^= 3  # second byte, second bit pair
        corrupted = decode(labels, img.shape, spec)
        diff = [i for i in range(4) if corrupted.pixels[i] != img.pixels[i]]
        assert diff == [1]

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="expected"):
            decode(np.zeros(5, dtype=np.uint8), (1, 1, 1), CodecSpec())

    def test_label_error_rate_bounds_byte_corruption(self):
        # p label errors corrupt at most a 4p byte fraction (union bound)
        gen = np.random.default_rng(7)
        img = Image.from_array(gen.integers(0, 256, size=(50, 50, 1), dtype=np.uint8))
        spec = CodecSpec()
        labels = encode(img, spec)
        p = 0.02
        flips = gen.random(labels.size) < p
        noisy = labels.copy()
        noisy[flips] = (noisy[flips] + gen.integers(1, 4, flips.sum())) % 4
        out = decode(noisy, img.shape, spec)
        frac = np.mean(out.to_array() != img.to_array())
        assert frac <= 4 * p + 0.01


class TestBlockMeanMode:
    def test_two_by_two_mean(self):
        img = Image.from_array(np.array([[10, 20], [30, 40]], dtype=np.uint8))
        labels = encode(img, CodecSpec(2))
        assert labels.size == 4
        byte = (labels[0] << 6) | (labels[1] << 4) | (labels[2] << 2) | labels[3]
        assert byte == 25

    def test_constant_roundtrip(self):
        img = Image.from_array(np.full((4, 4), 77, dtype=np.uint8))
        spec = CodecSpec(2)
        assert decode(encode(img, spec), img.shape, spec) == img

    def test_upsampled_shape(self):
        gen = np.random.default_rng(3)
        img = Image.from_array(gen.integers(0, 256, size=(8, 8, 3), dtype=np.uint8))
        spec = CodecSpec(4)
        out = decode(encode(img, spec), img.shape, spec)
        assert out.shape == img.shape


class TestImageIO:
    def test_pgm_roundtrip(self, tmp_path):
        gen = np.random.default_rng(5)
        img = Image.from_array(gen.integers(0, 256, size=(9, 6), dtype=np.uint8))
        path = tmp_path / "img.pgm"
        write_image(path, img)
        assert read_image(path) == img

    def test_ppm_roundtrip(self, tmp_path):
        gen = np.random.default_rng(6)
        img = Image.from_array(gen.integers(0, 256, size=(4, 5, 3), dtype=np.uint8))
        path = tmp_path / "img.ppm"
        write_image(path, img)
        assert read_image(path) == img

    def test_comment_in_header(self, tmp_path):
        path = tmp_path / "c.pgm"
        path.write_bytes(b"P5\n# a comment\n2 1\n255\n\x01\x02")
        img = read_image(path)
        assert img.shape == (1, 2, 1)
        assert img.pixels == b"\x01\x02"

    def test_rejects_wrong_magic(self, tmp_path):
        path = tmp_path / "bad.pgm"
        path.write_bytes(b"P2\n1 1\n255\n0")
        with pytest.raises(ValueError, match="magic"):
            read_image(path)

    def test_rejects_truncated(self, tmp_path):
        path = tmp_path / "trunc.pgm"
        path.write_bytes(b"P5\n4 4\n255\n\x00\x00")
        with pytest.raises(ValueError, match="truncated"):
            read_image(path)

    def test_rejects_wide_maxval(self, tmp_path):
        path = tmp_path / "wide.pgm"
        path.write_bytes(b"P5\n1 1\n65535\n\x00\x00")
        with pytest.raises(ValueError, match="maxval"):
            read_image(path)
