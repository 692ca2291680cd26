"""The n-qubit state model and the state functionals built on the spin flip.

Basis indexing is big-endian: qubit 1 is the most significant bit of a basis
index, so ``|q1 q2 ... qn>`` sits at index ``int("q1q2...qn", 2)``.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionError, ValidationError

TOL_NORM = 1e-10
TOL_TRACE = 1e-9
TOL_WEIGHTS = 1e-12
# imaginary part of Tr(rho rho~) above this signals corrupted input
TOL_IMAG = 1e-8
# roundoff-scale negatives of S^2 are reported as 0
CLAMP_NEGATIVE = 1e-12


def _qubits_for_dim(dim):
    n = int(dim).bit_length() - 1
    if dim < 2 or 2 ** n != dim:
        raise DimensionError(f"dimension {dim} is not 2**n for n >= 1")
    return n


def _readonly(arr):
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


class StateVector:
    """Normalized pure state on ``n_qubits`` qubits."""

    __slots__ = ("amplitudes", "n_qubits")

    def __init__(self, amplitudes, *, tol=TOL_NORM):
        amps = np.asarray(amplitudes, dtype=np.complex128)
        if amps.ndim != 1:
            raise DimensionError(f"amplitudes must be one-dimensional, got shape {amps.shape}")
        n = _qubits_for_dim(amps.shape[0])
        norm = np.linalg.norm(amps)
        if not np.isfinite(norm) or abs(norm - 1.0) > tol:
            raise ValidationError(f"state vector is not normalized (norm {norm:.12g})")
        object.__setattr__(self, "amplitudes", _readonly(amps))
        object.__setattr__(self, "n_qubits", n)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    def __repr__(self):
        return f"StateVector(n_qubits={self.n_qubits}, amplitudes={self.amplitudes!r})"

    @property
    def dim(self):
        return 2 ** self.n_qubits


class DensityMatrix:
    """Validated n-qubit density matrix.

    Construction checks Hermiticity and unit trace within ``1e-9`` and, unless
    ``check_psd=False``, that no eigenvalue is below ``-1e-9``. Nothing is
    repaired: invalid input raises :class:`ValidationError`.
    """

    __slots__ = ("mat", "n_qubits")

    def __init__(self, mat, *, check_psd=True):
        m = linalg.as_matrix(mat)
        n = _qubits_for_dim(m.shape[0])
        if not np.all(np.isfinite(m)):
            raise ValidationError("density matrix has non-finite entries")
        herm = linalg.hermiticity_error(m)
        if herm > linalg.TOL_HERM:
            raise ValidationError(f"density matrix is not Hermitian (max deviation {herm:.3e})")
        tr = np.trace(m)
        if abs(tr - 1.0) > TOL_TRACE:
            raise ValidationError(f"density matrix trace is {tr.real:.12g}, expected 1")
        if check_psd:
            w, _ = linalg.hermitian_eigen(m)
            if w[0] < -linalg.TOL_PSD:
                raise ValidationError(
                    f"density matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})"
                )
        object.__setattr__(self, "mat", _readonly(m))
        object.__setattr__(self, "n_qubits", n)

    @classmethod
    def _trusted(cls, mat):
        # results of validity-preserving maps skip the eigen-check
        obj = object.__new__(cls)
        m = np.asarray(mat, dtype=np.complex128)
        object.__setattr__(obj, "mat", _readonly(m))
        object.__setattr__(obj, "n_qubits", _qubits_for_dim(m.shape[0]))
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    def __repr__(self):
        return f"DensityMatrix(n_qubits={self.n_qubits}, mat={self.mat!r})"

    @property
    def dim(self):
        return 2 ** self.n_qubits

    def eigenvalues(self):
        return linalg.hermitian_eigen(self.mat)[0]


@dataclass(frozen=True)
class AnalysisReport:
    """State functionals and the residuals of the two exact identities.

    ``residual_purity`` is ``|S2 + D2_HS - P|`` and ``residual_symmetry`` is
    ``|S2 + M - I|``.
    """

    n_qubits: int
    purity: float
    mixedness: float
    s_n_sq: float
    d_hs_sq: float
    indistinguishability: float
    residual_purity: float
    residual_symmetry: float


def pure_density(psi):
    """Projector ``|psi><psi|``."""
    if not isinstance(psi, StateVector):
        psi = StateVector(psi)
    a = psi.amplitudes
    return DensityMatrix._trusted(np.outer(a, a.conj()))


def mix(weights, states):
    """Convex combination ``sum_k w_k rho_k``."""
    weights = [float(w) for w in weights]
    states = list(states)
    if not states or len(weights) != len(states):
        raise DimensionError("need one weight per state and at least one state")
    if any(w < 0.0 for w in weights) or abs(sum(weights) - 1.0) > TOL_WEIGHTS:
        raise ValidationError(f"weights must be non-negative and sum to 1, got {weights}")
    n = states[0].n_qubits
    if any(s.n_qubits != n for s in states):
        raise DimensionError("all mixed states must have the same number of qubits")
    out = np.zeros_like(states[0].mat)
    for w, s in zip(weights, states):
        out = out + w * s.mat
    return DensityMatrix._trusted(out)


def _parity_signs(dim):
    r = np.arange(dim)
    parity = np.zeros(dim, dtype=np.int64)
    while np.any(r):
        parity ^= r & 1
        r = r >> 1
    return 1.0 - 2.0 * parity


def spin_flip_matrix(mat):
    """``sigma_2^{(x)n} conj(mat) sigma_2^{(x)n}`` for any 2**n square matrix.

    Uses ``sigma_2^{(x)n}|b> = i^n (-1)^{|b|} |~b>``, which turns the
    conjugation into an index reversal with parity signs:
    ``out[r, c] = (-1)^{|r|+|c|} conj(mat[~r, ~c])``.
    """
    m = linalg.as_matrix(mat)
    _qubits_for_dim(m.shape[0])
    s = _parity_signs(m.shape[0])
    return np.outer(s, s) * m[::-1, ::-1].conj()


def spin_flip(rho):
    """Spin-flipped state ``rho~``."""
    return DensityMatrix._trusted(spin_flip_matrix(rho.mat))


def spin_flip_vector(psi):
    """``sigma_2^{(x)n} |psi*>``, global phase included."""
    a = psi.amplitudes
    n = psi.n_qubits
    signs = _parity_signs(a.shape[0]) * (-1.0) ** n
    return StateVector((1j) ** n * signs * a[::-1].conj())


def trace_product(a, b):
    """``Tr(a @ b)`` without forming the product."""
    return complex(np.sum(a * b.T))


def purity(rho):
    return float(trace_product(rho.mat, rho.mat).real)


def mixedness(rho):
    return 1.0 - purity(rho)


def s_n_squared_matrix(mat):
    """``Tr(m m~)`` for an arbitrary (possibly unnormalized) Hermitian matrix."""
    val = trace_product(mat, spin_flip_matrix(mat))
    if abs(val.imag) > TOL_IMAG:
        raise ValidationError(f"Tr(rho rho~) has imaginary part {val.imag:.3e}")
    v = val.real
    if -CLAMP_NEGATIVE < v < 0.0:
        v = 0.0
    return v + 0.0  # drop negative zero


def s_n_squared(rho):
    """Multipartite entanglement ``S2 = Tr(rho rho~)``."""
    return s_n_squared_matrix(rho.mat)


def hs_distance_sq(a, b):
    """Squared Hilbert-Schmidt distance ``1/2 Tr[(a - b)^2]``."""
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"qubit counts differ: {a.n_qubits} vs {b.n_qubits}")
    d = a.mat - b.mat
    return 0.5 * float(np.sum(np.abs(d) ** 2))


def indistinguishability(rho):
    """Spin-flip symmetry degree ``I = 1 - D2_HS(rho, rho~)``."""
    return 1.0 - hs_distance_sq(rho, spin_flip(rho))


def n_tangle_pure(psi):
    """Pure-state n-tangle ``|<psi|psi~>|^2``."""
    if not isinstance(psi, StateVector):
        psi = StateVector(psi)
    overlap = np.vdot(psi.amplitudes, spin_flip_vector(psi).amplitudes)
    return float(abs(overlap) ** 2)


def partial_trace(rho, drop):
    """Trace out the 1-based qubit indices in ``drop``.

    Remaining qubits keep their original relative order.
    """
    n = rho.n_qubits
    drop = sorted(set(int(k) for k in drop))
    if not drop or len(drop) >= n:
        raise DimensionError(f"drop set must be a non-empty proper subset of 1..{n}, got {drop}")
    if drop[0] < 1 or drop[-1] > n:
        raise DimensionError(f"qubit index out of range 1..{n}: {drop}")
    keep = [k for k in range(1, n + 1) if k not in drop]
    t = rho.mat.reshape((2,) * (2 * n))
    rows = list(range(n))
    cols = [n + k if (k + 1) not in drop else k for k in range(n)]
    out_axes = [k - 1 for k in keep] + [n + k - 1 for k in keep]
    reduced = np.einsum(t, rows + cols, out_axes)
    d = 2 ** len(keep)
    return DensityMatrix._trusted(reduced.reshape(d, d))


def analyze(rho):
    """All state functionals plus the residuals of the two exact identities."""
    p = purity(rho)
    m = 1.0 - p
    s2 = s_n_squared(rho)
    d2 = hs_distance_sq(rho, spin_flip(rho))
    ind = 1.0 - d2
    return AnalysisReport(
        n_qubits=rho.n_qubits,
        purity=p,
        mixedness=m,
        s_n_sq=s2,
        d_hs_sq=d2,
        indistinguishability=ind,
        residual_purity=abs(s2 + d2 - p),
        residual_symmetry=abs(s2 + m - ind),
    )
