"""Shared oracles for the test suite.

Every helper here works from textbook definitions with plain numpy
(explicit Kronecker products, dense traces, ``numpy.linalg``), so it stays
independent of the package's fast paths.
"""

import itertools

import numpy as np
import pytest

from spinflip import _backend

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, SX, SY, SZ)


def kron_list(mats):
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def sigma2_n(n):
    return kron_list([SY] * n)


def flip_oracle(mat):
    """Spin flip straight from its definition."""
    y = sigma2_n(int(np.log2(mat.shape[0])))
    return y @ mat.conj() @ y


def stokes_oracle(rho):
    n = int(np.log2(rho.shape[0]))
    return np.array([
        np.trace(rho @ kron_list([PAULIS[i] for i in idx])).real
        for idx in itertools.product(range(4), repeat=n)
    ])


def partial_trace_oracle(rho, drop):
    """Sum of <k|rho|k> over basis states k of the dropped qubits (1-based)."""
    n = int(np.log2(rho.shape[0]))
    keep = [q for q in range(1, n + 1) if q not in drop]
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)
    for bits in itertools.product((0, 1), repeat=len(drop)):
        assign = dict(zip(sorted(drop), bits))
        ops = []
        for q in range(1, n + 1):
            if q in assign:
                e = np.zeros((2, 1), dtype=complex)
                e[assign[q], 0] = 1.0
                ops.append(e)
            else:
                ops.append(I2)
        proj = ops[0]
        for op in ops[1:]:
            proj = np.kron(proj, op)
        out += proj.conj().T @ rho @ proj
    return out


def random_rho(rng, n, rank=None):
    d = 2 ** n
    rank = d if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_psi(rng, n):
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=sorted(_backend.available()))
def kernels(request):
    """Each available kernel backend in turn."""
    return _backend.available()[request.param]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
