"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
Hermitian eigensolver is a cyclic Jacobi method provided by the compiled
kernel extension when available (see :mod:`spinflip._backend`).
"""

import numpy as np

from . import _backend
from .errors import DimensionError, ValidationError

TOL_HERM = 1e-9
TOL_EIG = 1e-10
TOL_PSD = 1e-9

#: Largest matrix dimension accepted by :func:`kron` (8 qubits).
MAX_DIM = 256


def as_matrix(a):
    """Coerce to a square ``complex128`` array; raise on other shapes."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def kron(a, b, max_dim=None):
    """Kronecker product; entry ``(i*db + k, j*db + l)`` is ``a[i, j] * b[k, l]``."""
    a = as_matrix(a)
    b = as_matrix(b)
    cap = MAX_DIM if max_dim is None else max_dim
    dim = a.shape[0] * b.shape[0]
    if dim > cap:
        raise DimensionError(f"Kronecker product of dimension {dim} exceeds cap {cap}")
    return np.kron(a, b)


def kron_all(factors, max_dim=None):
    """Left-to-right Kronecker product of a non-empty sequence."""
    factors = list(factors)
    if not factors:
        raise DimensionError("kron_all needs at least one factor")
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = kron(out, f, max_dim=max_dim)
    return out


def matmul(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def adjoint(a):
    return as_matrix(a).conj().T


def trace(a):
    return complex(np.trace(as_matrix(a)))


def hermiticity_error(a):
    """Largest entry of ``|A - A†|``."""
    a = as_matrix(a)
    return float(np.max(np.abs(a - a.conj().T)))


def hermitian_eigen(h, tol_herm=TOL_HERM):
    """Eigen-decomposition of a Hermitian matrix.

    Returns ``(eigenvalues, vectors)`` with eigenvalues ascending and the
    matching orthonormal eigenvectors as columns, so that
    ``h == vectors @ diag(eigenvalues) @ vectors.conj().T``.

    Raises:
        ValidationError: ``h`` is not Hermitian within ``tol_herm``.
        ConvergenceError: the Jacobi sweeps did not converge.
    """
    h = as_matrix(h)
    err = hermiticity_error(h)
    if err > tol_herm:
        raise ValidationError(f"matrix is not Hermitian (max |H - H^dagger| = {err:.3e})")
    # symmetrize so the kernel sees an exactly Hermitian input
    h = 0.5 * (h + h.conj().T)
    w, v, _ = _backend.kernels.jacobi_eigh(h)
    order = np.argsort(w, kind="stable")
    return w[order], np.ascontiguousarray(v[:, order])


def psd_sqrt(h, tol_psd=TOL_PSD, rtol=1e-13):
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-tol_psd, 0)`` are clamped to zero; anything more
    negative raises :class:`ValidationError`. Eigenvalues at or below
    ``rtol * max(eigenvalues)`` are treated as roundoff and also set to zero,
    so rank-deficient input keeps an exactly rank-deficient root.
    """
    w, v = hermitian_eigen(h)
    if w[0] < -tol_psd:
        raise ValidationError(f"matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    w = np.where(w <= rtol * max(w[-1], 0.0), 0.0, w)
    root = np.sqrt(w)
    return (v * root) @ v.conj().T


# sigma_0 (identity), sigma_1, sigma_2, sigma_3
PAULI = (
    np.array([[1, 0], [0, 1]], dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)