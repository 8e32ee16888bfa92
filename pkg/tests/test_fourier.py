"""Tests for the 2-D transform: fast path against the literal summation."""

import numpy as np
import pytest

from mammoscope.fourier import Spectrum, dft2d_direct, fft2d, log_magnitude


def max_relative_error(got, want):
    scale = np.abs(want).max()
    if scale == 0.0:
        return np.abs(got).max()
    return np.abs(got - want).max() / scale


class TestDirect:
    def test_constant_two_by_two(self):
        c = 0.6
        spec = dft2d_direct(np.full((2, 2), c))
        assert spec.values[0, 0] == pytest.approx(4 * c, abs=1e-12)
        off_dc = np.abs(spec.values).copy()
        off_dc[0, 0] = 0.0
        assert off_dc.max() < 1e-12

    def test_impulse_is_flat(self):
        m = np.zeros((4, 4))
        m[0, 0] = 2.5
        spec = dft2d_direct(m)
        np.testing.assert_allclose(spec.values, 2.5, atol=1e-12)

    def test_cosine_rows_land_on_two_bins(self):
        # f(i, j) = cos(2 pi i / 4): row index i is conjugate to the first
        # output index, so energy sits at (1, 0) and (3, 0) with value 8
        n = 4
        i = np.arange(n)[:, None]
        m = np.broadcast_to(np.cos(2 * np.pi * i / n), (n, n)).copy()
        spec = dft2d_direct(m)
        assert spec.values[1, 0] == pytest.approx(8.0, abs=1e-9)
        assert spec.values[3, 0] == pytest.approx(8.0, abs=1e-9)
        rest = np.abs(spec.values).copy()
        rest[1, 0] = rest[3, 0] = 0.0
        assert rest.max() < 1e-9

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            dft2d_direct(np.zeros((2, 3)))


class TestFft:
    def test_matches_direct_on_random_8x8(self):
        rng = np.random.default_rng(0)
        for _ in range(5):
            m = rng.random((8, 8))
            assert max_relative_error(fft2d(m).values, dft2d_direct(m).values) < 1e-9

    def test_matches_direct_on_16x16(self):
        m = np.random.default_rng(1).standard_normal((16, 16))
        assert max_relative_error(fft2d(m).values, dft2d_direct(m).values) < 1e-9

    def test_non_square_zero_padded_to_pow2(self):
        rng = np.random.default_rng(2)
        m = rng.random((5, 7))
        spec = fft2d(m)
        assert spec.size == 8
        padded = np.zeros((8, 8))
        padded[:5, :7] = m
        assert max_relative_error(spec.values, dft2d_direct(padded).values) < 1e-9

    def test_zero_matrix(self):
        assert not fft2d(np.zeros((4, 4))).values.any()

    def test_single_pixel(self):
        spec = fft2d(np.array([[3.0]]))
        assert spec.size == 1
        assert spec.values[0, 0] == 3.0

    def test_dc_equals_pixel_sum(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            m = rng.random((16, 16))
            spec = fft2d(m)
            assert abs(spec.values[0, 0] - m.sum()) < 1e-9 * m.sum()

    def test_parseval(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            m = rng.standard_normal((16, 16))
            spec = fft2d(m)
            spatial = (m**2).sum()
            spectral = (np.abs(spec.values) ** 2).sum() / spec.size**2
            assert abs(spatial - spectral) < 1e-9 * spatial

    def test_linearity(self):
        rng = np.random.default_rng(5)
        x = rng.random((8, 8))
        y = rng.random((8, 8))
        a, b = 2.5, -1.25
        combined = fft2d(a * x + b * y).values
        separate = a * fft2d(x).values + b * fft2d(y).values
        assert max_relative_error(combined, separate) < 1e-9

    def test_conjugate_symmetry_for_real_input(self):
        rng = np.random.default_rng(6)
        m = rng.standard_normal((8, 8))
        values = fft2d(m).values
        n = 8
        for k in range(n):
            for l in range(n):
                mirror = values[(n - k) % n, (n - l) % n]
                assert abs(values[k, l] - np.conj(mirror)) < 1e-9


class TestLogMagnitude:
    def test_zero_spectrum(self):
        out = log_magnitude(Spectrum(np.zeros((4, 4), dtype=complex)))
        assert not out.any()

    def test_constant_image_single_center_peak(self):
        out = log_magnitude(fft2d(np.full((8, 8), 0.5)))
        assert out[4, 4] > 0.0
        rest = out.copy()
        rest[4, 4] = 0.0
        assert rest.max() < 1e-12

    def test_point_reflection_symmetry(self):
        m = np.random.default_rng(7).random((16, 16))
        out = log_magnitude(fft2d(m))
        reflected = np.roll(out[::-1, ::-1], (1, 1), axis=(0, 1))
        np.testing.assert_allclose(out, reflected, atol=1e-9)
