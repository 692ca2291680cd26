"""Pure-Python (numpy) implementations of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable, or when
``SPINFLIP_PURE_PYTHON`` is set in the environment. Signatures and results
match the extension.
"""

import numpy as np

from .errors import ConvergenceError


def jacobi_eigh(h, tol=1e-14, max_sweeps=60):
    """Cyclic complex Jacobi diagonalization of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps)`` with eigenvalues
    unsorted (diagonal order) and eigenvectors as columns.
    """
    a = np.array(h, dtype=np.complex128, order="C", copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    fro = np.sqrt(np.sum(np.abs(a) ** 2))
    if n == 1 or fro == 0.0:
        return a.diagonal().real.copy(), v, 0

    off_mask = ~np.eye(n, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = np.sqrt(np.sum(np.abs(a[off_mask]) ** 2))
        if off <= tol * fro:
            return a.diagonal().real.copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                ph = complex(apq.real / r, -apq.imag / r)
                # tau may overflow for subnormal a_pq; t -> 0 is then the right rotation
                with np.errstate(over="ignore"):
                    tau = (aqq - app) / (2.0 * r)
                    t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - (s * ph) * col_q
                a[:, q] = s * col_p + (c * ph) * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                phc = ph.conjugate()
                a[p, :] = c * row_p - (s * phc) * row_q
                a[q, :] = s * row_p + (c * phc) * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - (s * ph) * vq
                v[:, q] = s * vp + (c * ph) * vq
    raise ConvergenceError(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
        f"(off-diagonal norm {off:.3e}, Frobenius norm {fro:.3e})"
    )


def _popcount_parity(x):
    x = np.asarray(x, dtype=np.int64)
    parity = np.zeros_like(x)
    while np.any(x):
        parity ^= x & 1
        x = x >> 1
    return parity


def pauli_masks(n):
    """Flip mask, sign mask and σ₂ count for each of the 4ⁿ Pauli strings.

    String ``s`` has base-4 digits (i₁ … iₙ), i₁ most significant; qubit k
    corresponds to bit ``n - k`` of a basis index.
    """
    count = 4 ** n
    digits = np.empty((count, n), dtype=np.int64)
    s = np.arange(count, dtype=np.int64)
    for k in range(n - 1, -1, -1):
        digits[:, k] = s % 4
        s = s // 4
    bits = 1 << np.arange(n - 1, -1, -1, dtype=np.int64)
    is_x = (digits == 1)
    is_y = (digits == 2)
    is_z = (digits == 3)
    flip = ((is_x | is_y) * bits).sum(axis=1)
    sign = ((is_y | is_z) * bits).sum(axis=1)
    ny = is_y.sum(axis=1)
    return flip, sign, ny


def pauli_expectations(rho):
    """``Tr(ρ σ_{i₁}⊗…⊗σ_{iₙ})`` for every Pauli string, as complex values."""
    rho = np.asarray(rho, dtype=np.complex128)
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    flip, sign, ny = pauli_masks(n)
    r = np.arange(dim, dtype=np.int64)
    out = np.empty(4 ** n, dtype=np.complex128)
    i_pow = np.array([1, 1j, -1, -1j])
    for s in range(4 ** n):
        signs = 1 - 2 * _popcount_parity(r & sign[s])
        out[s] = i_pow[ny[s] % 4] * np.sum(signs * rho[r, r ^ flip[s]])
    return out


def pauli_synthesis(values, n):
    """Inverse of :func:`pauli_expectations`: ``2⁻ⁿ Σ S_s σ_s``."""
    values = np.asarray(values, dtype=np.float64)
    dim = 2 ** n
    flip, sign, ny = pauli_masks(n)
    r = np.arange(dim, dtype=np.int64)
    rho = np.zeros((dim, dim), dtype=np.complex128)
    i_pow = np.array([1, 1j, -1, -1j])
    for s in range(4 ** n):
        if values[s] == 0.0:
            continue
        signs = 1 - 2 * _popcount_parity(r & sign[s])
        rho[r ^ flip[s], r] += values[s] * i_pow[ny[s] % 4] * signs
    return rho / dim
