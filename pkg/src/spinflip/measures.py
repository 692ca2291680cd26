"""Two-qubit concurrence, tangle and entanglement of formation."""

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionError, DomainError
from .states import DensityMatrix, StateVector, partial_trace, pure_density, spin_flip, spin_flip_vector


@dataclass(frozen=True)
class ConcurrenceResult:
    concurrence: float
    singular_values: tuple


def _require_two_qubits(state):
    if state.n_qubits != 2:
        raise DimensionError(f"two-qubit state required, got {state.n_qubits} qubits")


def concurrence_pure(psi):
    """``|<psi|psi~>|`` for a two-qubit pure state."""
    if not isinstance(psi, StateVector):
        psi = StateVector(psi)
    _require_two_qubits(psi)
    return float(abs(np.vdot(psi.amplitudes, spin_flip_vector(psi).amplitudes)))


def wootters_singular_values(rho):
    """Square roots of the eigenvalues of ``rho rho~``, descending.

    Computed as the eigenvalues of the Hermitian matrix
    ``sqrt(sqrt(rho) rho~ sqrt(rho))``, which has the same spectrum.
    """
    root = linalg.psd_sqrt(rho.mat)
    inner = root @ spin_flip(rho).mat @ root
    inner = 0.5 * (inner + inner.conj().T)
    w, _ = linalg.hermitian_eigen(linalg.psd_sqrt(inner))
    lam = np.clip(w, 0.0, None)
    return tuple(float(x) for x in lam[::-1])


def concurrence_mixed(rho):
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``."""
    _require_two_qubits(rho)
    lam = wootters_singular_values(rho)
    c = max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
    return ConcurrenceResult(concurrence=min(c, 1.0), singular_values=lam)


def concurrence(state):
    """Concurrence of a two-qubit ``StateVector`` or ``DensityMatrix``."""
    if isinstance(state, StateVector):
        return concurrence_pure(state)
    return concurrence_mixed(state).concurrence


def tangle_2(psi):
    return concurrence_pure(psi) ** 2


def binary_entropy(x):
    """``-x log2 x - (1 - x) log2 (1 - x)`` with ``h(0) = h(1) = 0``."""
    x = float(x)
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"binary entropy needs x in [0, 1], got {x}")
    out = 0.0
    for p in (x, 1.0 - x):
        if p > 0.0:
            out -= p * math.log2(p)
    return out


def eof_from_concurrence(c):
    """Wootters relation ``h((1 + sqrt(1 - C^2)) / 2)``."""
    c = min(max(float(c), 0.0), 1.0)
    return binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - c * c)))


def eof(rho):
    """Entanglement of formation of a two-qubit state (Wootters closed form)."""
    return eof_from_concurrence(concurrence_mixed(rho).concurrence)


def eof_literal(rho):
    """``h(C)`` taken at face value; vanishes for Bell states. Kept for comparison."""
    return binary_entropy(concurrence_mixed(rho).concurrence)


PAIRS = ((1, 2), (2, 3), (1, 3))


def pairwise_concurrence_sq(rho):
    """Squared concurrence of each two-qubit marginal of a three-qubit state.

    Keys are the retained 1-based qubit pairs ``(1, 2)``, ``(2, 3)``, ``(1, 3)``.
    """
    if isinstance(rho, StateVector):
        rho = pure_density(rho)
    if not isinstance(rho, DensityMatrix) or rho.n_qubits != 3:
        raise DimensionError("pairwise concurrences need a three-qubit state")
    out = {}
    for pair in PAIRS:
        (drop,) = {1, 2, 3} - set(pair)
        out[pair] = concurrence_mixed(partial_trace(rho, {drop})).concurrence ** 2
    return out
