"""Named state families with their analytic parameterizations.

``mixed_cat`` accepts any ``n >= 1``; the two-term diagonal mixture is the
natural extension of the three-qubit family.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import DomainError
from .states import DensityMatrix, StateVector, mix, pure_density

TOL_NORM = 1e-12

BELL_NAMES = ("phi+", "phi-", "psi+", "psi-")
_BELL_ALIASES = {
    "phi+": "phi+", "Φ+": "phi+", "Φ⁺": "phi+",
    "phi-": "phi-", "Φ-": "phi-", "Φ⁻": "phi-",
    "psi+": "psi+", "Ψ+": "psi+", "Ψ⁺": "psi+",
    "psi-": "psi-", "Ψ-": "psi-", "Ψ⁻": "psi-",
}

FAMILIES = (
    "bell", "bell_diagonal", "werner", "cat", "w_state",
    "mems", "mixed_cat", "basis_product", "fully_mixed",
)


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus its keyword parameters, e.g. ``werner`` with ``w=0.5``."""

    family: str
    params: dict = field(default_factory=dict)

    def build(self):
        """Construct the state as a :class:`DensityMatrix`."""
        state = CONSTRUCTORS[self.family](**self.params)
        if isinstance(state, StateVector):
            return pure_density(state)
        return state

    def build_vector(self):
        """The pure state vector, or ``None`` for mixed families."""
        if self.family not in PURE_FAMILIES:
            return None
        return CONSTRUCTORS[self.family](**self.params)


def _unit_interval(name, x):
    if not (0.0 <= x <= 1.0) or math.isnan(x):
        raise DomainError(f"{name} must lie in [0, 1], got {x}")


def _basis(n, index):
    v = np.zeros(2 ** n, dtype=np.complex128)
    v[index] = 1.0
    return v


def bell_state(which):
    """One of the four Bell vectors ``phi+, phi-, psi+, psi-``."""
    key = _BELL_ALIASES.get(which)
    if key is None:
        raise DomainError(f"unknown Bell state {which!r}; expected one of {BELL_NAMES}")
    h = 1.0 / math.sqrt(2.0)
    sign = 1.0 if key.endswith("+") else -1.0
    if key.startswith("phi"):
        amps = h * (_basis(2, 0b00) + sign * _basis(2, 0b11))
    else:
        amps = h * (_basis(2, 0b01) + sign * _basis(2, 0b10))
    return StateVector(amps)


def bell_projector(which):
    return pure_density(bell_state(which))


def bell_diagonal(w1, w2, w3, w4):
    """``w1 P[phi+] + w2 P[phi-] + w3 P[psi+] + w4 P[psi-]``."""
    weights = [float(w) for w in (w1, w2, w3, w4)]
    for k, w in enumerate(weights, 1):
        _unit_interval(f"w{k}", w)
    if abs(sum(weights) - 1.0) > TOL_NORM:
        raise DomainError(f"Bell-diagonal weights must sum to 1, got {sum(weights)!r}")
    return mix(weights, [bell_projector(b) for b in BELL_NAMES])


def werner(w):
    """``w P[phi+] + (1 - w)/4 I``."""
    w = float(w)
    _unit_interval("w", w)
    return DensityMatrix._trusted(w * bell_projector("phi+").mat + (1.0 - w) / 4.0 * np.eye(4))


def cat_state(n, alpha):
    """``alpha |0...0> + sqrt(1 - alpha^2) |1...1>`` on ``n >= 2`` qubits."""
    n = int(n)
    alpha = float(alpha)
    if n < 2:
        raise DomainError(f"cat state needs n >= 2, got {n}")
    if 2 ** n > linalg.MAX_DIM:
        raise DomainError(f"n = {n} exceeds the {linalg.MAX_DIM.bit_length() - 1}-qubit cap")
    _unit_interval("alpha", alpha)
    amps = np.zeros(2 ** n, dtype=np.complex128)
    amps[0] = alpha
    amps[-1] = math.sqrt(1.0 - alpha * alpha)
    return StateVector(amps)


def w_state(alpha, beta, gamma):
    """``alpha |100> + beta |010> + gamma |001>`` with complex amplitudes."""
    a, b, c = complex(alpha), complex(beta), complex(gamma)
    norm = abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2
    if abs(norm - 1.0) > TOL_NORM:
        raise DomainError(f"W-state amplitudes must satisfy |a|^2+|b|^2+|c|^2 = 1, got {norm!r}")
    amps = np.zeros(8, dtype=np.complex128)
    amps[0b100] = a
    amps[0b010] = b
    amps[0b001] = c
    return StateVector(amps)


def mems_g(gamma):
    """Piecewise ``g``: 1/3 below gamma = 2/3, gamma/2 from there on."""
    return 1.0 / 3.0 if gamma < 2.0 / 3.0 else gamma / 2.0


def mems_weights(gamma):
    g = mems_g(gamma)
    return (0.5 * (2.0 * g + gamma), 0.5 * (2.0 * g - gamma), 1.0 - 2.0 * g)


def mems(gamma):
    """Maximally entangled mixed state on ``(0, 1]``.

    Mixture of ``P[phi+]``, ``P[phi-]`` and ``P[|01>]``.
    """
    gamma = float(gamma)
    if not (0.0 < gamma <= 1.0):
        raise DomainError(f"gamma must lie in (0, 1], got {gamma}")
    weights = mems_weights(gamma)
    assert min(weights) >= -1e-15, weights
    weights = [max(w, 0.0) for w in weights]
    return mix(weights, [
        bell_projector("phi+"),
        bell_projector("phi-"),
        pure_density(StateVector(_basis(2, 0b01))),
    ])


def mixed_cat(n, w):
    """``w P[|0...0>] + (1 - w) P[|1...1>]``."""
    n = int(n)
    w = float(w)
    if n < 1:
        raise DomainError(f"mixed cat needs n >= 1, got {n}")
    if 2 ** n > linalg.MAX_DIM:
        raise DomainError(f"n = {n} exceeds the {linalg.MAX_DIM.bit_length() - 1}-qubit cap")
    _unit_interval("w", w)
    diag = np.zeros(2 ** n)
    diag[0] = w
    diag[-1] += 1.0 - w
    return DensityMatrix._trusted(np.diag(diag).astype(np.complex128))


def basis_product(bits):
    """Computational basis product state; ``bits`` is a sequence or a "0110" string."""
    if isinstance(bits, str):
        if not bits or set(bits) - {"0", "1"}:
            raise DomainError(f"bits must be a non-empty 0/1 string, got {bits!r}")
        bits = [int(b) for b in bits]
    bits = list(bits)
    if not bits or any(b not in (0, 1) for b in bits):
        raise DomainError(f"bits must be a non-empty list of 0/1, got {bits!r}")
    if 2 ** len(bits) > linalg.MAX_DIM:
        raise DomainError(f"{len(bits)} qubits exceeds the cap")
    index = int("".join(str(b) for b in bits), 2)
    return StateVector(_basis(len(bits), index))


def fully_mixed(n):
    """``I / 2**n``."""
    n = int(n)
    if n < 1 or 2 ** n > linalg.MAX_DIM:
        raise DomainError(f"n must lie in 1..{linalg.MAX_DIM.bit_length() - 1}, got {n}")
    d = 2 ** n
    return DensityMatrix._trusted(np.eye(d, dtype=np.complex128) / d)


CONSTRUCTORS = {
    "bell": bell_state,
    "bell_diagonal": bell_diagonal,
    "werner": werner,
    "cat": cat_state,
    "w_state": w_state,
    "mems": mems,
    "mixed_cat": mixed_cat,
    "basis_product": basis_product,
    "fully_mixed": fully_mixed,
}

PURE_FAMILIES = frozenset({"bell", "cat", "w_state", "basis_product"})
