"""Generalized Stokes tensor of an n-qubit state and its two quadratic norms.

The tensor holds the 4**n expectation values ``Tr(rho s_{i1} (x) ... (x) s_{in})``
in lexicographic order with ``i1`` slowest, so for one qubit it is the
familiar ``(S0, S1, S2, S3)``. It is an independent route to purity and S2,
used for cross-checking rather than as the primary computation.
"""

import numpy as np

from . import _backend
from .errors import DimensionError, ValidationError
from .states import DensityMatrix

#: Default cap on qubits for tensor evaluation (4**n strings of 2**n terms).
MAX_QUBITS = 5
TOL_IMAG = 1e-10


class StokesTensor:
    """4**n real Stokes parameters of an n-qubit state."""

    __slots__ = ("values", "n_qubits")

    def __init__(self, values, n_qubits):
        values = np.array(values, dtype=np.float64, copy=True).reshape(-1)
        if n_qubits < 1 or values.shape[0] != 4 ** n_qubits:
            raise DimensionError(f"expected {4 ** n_qubits} values for {n_qubits} qubits, got {values.shape[0]}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "n_qubits", n_qubits)

    def __setattr__(self, name, value):
        raise AttributeError("StokesTensor is immutable")

    def __getitem__(self, index):
        """Look up by flat position, base-4 string (``"0213"``) or digit tuple."""
        if isinstance(index, (int, np.integer)):
            return float(self.values[index])
        if isinstance(index, str):
            index = tuple(int(ch) for ch in index)
        if len(index) != self.n_qubits or any(d not in (0, 1, 2, 3) for d in index):
            raise KeyError(index)
        flat = 0
        for d in index:
            flat = 4 * flat + d
        return float(self.values[flat])

    def labels(self):
        """Base-4 index strings in storage order."""
        n = self.n_qubits
        return [np.base_repr(k, 4).rjust(n, "0") for k in range(4 ** n)]

    def spatial_weights(self):
        """Number of nonzero digits of each multi-index."""
        w = np.zeros(4 ** self.n_qubits, dtype=np.int64)
        k = np.arange(4 ** self.n_qubits)
        for _ in range(self.n_qubits):
            w += (k % 4) != 0
            k //= 4
        return w


def stokes_from_density(rho, max_qubits=None):
    cap = MAX_QUBITS if max_qubits is None else max_qubits
    if rho.n_qubits > cap:
        raise DimensionError(f"Stokes tensor limited to {cap} qubits, got {rho.n_qubits}")
    vals = _backend.kernels.pauli_expectations(np.ascontiguousarray(rho.mat))
    resid = float(np.max(np.abs(vals.imag)))
    if resid > TOL_IMAG:
        raise ValidationError(f"Stokes parameters have imaginary residue {resid:.3e}")
    return StokesTensor(vals.real, rho.n_qubits)


def density_from_stokes(t):
    """Rebuild ``rho = 2**-n sum_i S_i sigma_i`` and validate it as a state."""
    mat = _backend.kernels.pauli_synthesis(np.ascontiguousarray(t.values), t.n_qubits)
    return DensityMatrix(mat)


def euclidean_norm_sq(t):
    """``2**-n sum S_i^2``; equals the purity of the originating state."""
    return float(np.sum(t.values ** 2)) / 2 ** t.n_qubits


def minkowski_norm_sq(t):
    """``2**-n sum (-1)^{w(i)} S_i^2`` with ``w`` the number of spatial indices."""
    signs = 1 - 2 * (t.spatial_weights() % 2)
    return float(np.sum(signs * t.values ** 2)) / 2 ** t.n_qubits
