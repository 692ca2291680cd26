"""Compiled and fallback kernels against numpy and against each other."""

import os
import subprocess
import sys

import numpy as np
import pytest

from spinflip import _backend, _fallback
from spinflip.errors import ConvergenceError

from conftest import random_rho, stokes_oracle


@pytest.mark.parametrize("d", [1, 2, 3, 8, 17, 32])
def test_jacobi_matches_numpy(kernels, rng, d):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    h = g + g.conj().T
    w, v, sweeps = kernels.jacobi_eigh(h)
    np.testing.assert_allclose(np.sort(w), np.linalg.eigvalsh(h), atol=1e-11)
    assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - h)) <= 1e-11
    assert sweeps <= 15


def test_jacobi_real_symmetric_and_degenerate(kernels):
    h = np.ones((4, 4))
    w, v, _ = kernels.jacobi_eigh(h)
    np.testing.assert_allclose(np.sort(w), [0, 0, 0, 4], atol=1e-14)
    w, v, _ = kernels.jacobi_eigh(np.zeros((3, 3)))
    np.testing.assert_array_equal(w, 0)


def test_jacobi_reports_nonconvergence(kernels, rng):
    g = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    with pytest.raises(ConvergenceError):
        kernels.jacobi_eigh(g + g.conj().T, max_sweeps=1)


def test_backends_agree_on_jacobi(rng):
    backends = _backend.available()
    if len(backends) < 2:
        pytest.skip("compiled kernels not built")
    g = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    h = g + g.conj().T
    wa = np.sort(backends["python"].jacobi_eigh(h)[0])
    wb = np.sort(backends["cython"].jacobi_eigh(h)[0])
    np.testing.assert_allclose(wa, wb, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pauli_expectations_match_explicit_kron(kernels, rng, n):
    rho = random_rho(rng, n)
    vals = kernels.pauli_expectations(rho)
    np.testing.assert_allclose(vals.real, stokes_oracle(rho), atol=1e-14)
    assert np.max(np.abs(vals.imag)) <= 1e-14


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pauli_synthesis_inverts(kernels, rng, n):
    rho = random_rho(rng, n)
    back = kernels.pauli_synthesis(kernels.pauli_expectations(rho).real, n)
    assert np.max(np.abs(back - rho)) <= 1e-14


def test_pauli_masks_count_weights():
    flip, sign, ny = _fallback.pauli_masks(2)
    # string "21": sigma_2 on qubit 1 (bit 1), sigma_1 on qubit 2 (bit 0)
    s = 2 * 4 + 1
    assert flip[s] == 0b11 and sign[s] == 0b10 and ny[s] == 1


def test_env_var_forces_fallback():
    code = "import spinflip; print(spinflip.BACKEND)"
    env = dict(os.environ, SPINFLIP_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
