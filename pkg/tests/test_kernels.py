"""The numba kernels and their numpy fallbacks must agree."""

import numpy as np
import pytest

from trisemi import _kernels as K

needs_numba = pytest.mark.skipif(not K.NUMBA_AVAILABLE, reason="numba unavailable")


def test_active_backend_reports_a_known_value():
    assert K.active_backend() in ("numba", "numpy")


@needs_numba
def test_recurrence_devs_parity():
    freqs = np.array([1.0, 2**0.5])
    a = K.recurrence_devs_numpy(freqs, 500)
    b = K.recurrence_devs_numba(freqs, 500)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


@needs_numba
def test_successive_minima_parity():
    rng = np.random.default_rng(0)
    devs = rng.uniform(0.0, 2.0, 300)
    a = K.successive_minima_numpy(devs, 0.6)
    b = K.successive_minima_numba(devs, 0.6)
    np.testing.assert_array_equal(np.asarray(a), np.asarray(b))


@needs_numba
def test_packet_inner_matrix_parity():
    rng = np.random.default_rng(1)

    def cplx(n):
        return rng.normal(size=n) + 1j * rng.normal(size=n)

    n, m = 4, 3
    amp1, b1, c1 = cplx(n), cplx(n), cplx(n)
    amp2, b2, c2 = cplx(m), cplx(m), cplx(m)
    a1 = rng.uniform(0.3, 2.0, n) + 1j * rng.normal(size=n)
    a2 = rng.uniform(0.3, 2.0, m) + 1j * rng.normal(size=m)
    got_np = K.packet_inner_matrix_numpy(amp1, a1, b1, c1, amp2, a2, b2, c2)
    got_nb = K.packet_inner_matrix_numba(amp1, a1, b1, c1, amp2, a2, b2, c2)
    np.testing.assert_allclose(got_np, got_nb, rtol=1e-12, atol=1e-12)


@needs_numba
def test_phase_mean_weights_parity():
    deltas = np.array([0.0, 0.5, -2.2, 7.0])
    a = K.phase_mean_weights_numpy(deltas, 25.0, 512)
    b = K.phase_mean_weights_numba(deltas, 25.0, 512)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


@needs_numba
def test_bf_kernel_values_parity():
    ts = np.linspace(-3.0, 3.0, 41)
    betas = np.array([1.0, 2**0.5])
    a = K.bf_kernel_values_numpy(ts, betas, 2)
    b = K.bf_kernel_values_numba(ts, betas, 2)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-10)


def test_phase_mean_weight_of_zero_delta_is_one():
    out = K.phase_mean_weights_numpy(np.array([0.0]), 10.0, 128)
    assert out[0] == pytest.approx(1.0, abs=1e-14)


def test_numpy_fallback_forced_by_env(tmp_path):
    import subprocess
    import sys

    code = (
        "from trisemi import _kernels\n"
        "print(_kernels.active_backend())\n"
    )
    proc = subprocess.run(
        [sys.executable, "-c", code],
        env={"PATH": "/usr/bin:/bin", "TRISEMI_NO_NUMBA": "1"},
        capture_output=True,
        text=True,
        cwd="/root/pkg",
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "numpy"
