# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: complex Hermitian Jacobi and Pauli-string traces.

Mirrors ``_fallback`` exactly; the pure-Python module is the reference.
"""

import numpy as np
from libc.math cimport sqrt, fabs

from .errors import ConvergenceError



cdef double off_norm(const double *a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j, idx
    cdef double acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                idx = 2 * (i * n + j)
                acc += a[idx] * a[idx] + a[idx + 1] * a[idx + 1]
    return sqrt(acc)


cdef inline void rotate_rows(double *m, Py_ssize_t n, Py_ssize_t p, Py_ssize_t q,
                             double c, double s, double ar, double ai,
                             double br, double bi, bint hermitian) noexcept nogil:
    # row_p <- c row_p - (ar + i ai) row_q ; row_q <- s row_p + (br + i bi) row_q
    # hermitian: skip the (p, q) block and mirror the conjugate into columns p, q
    cdef Py_ssize_t k, ip, iq
    cdef double pr, pi, qr, qi, npr, npi, nqr, nqi
    for k in range(n):
        if hermitian and (k == p or k == q):
            continue
        ip = 2 * (p * n + k)
        iq = 2 * (q * n + k)
        pr = m[ip]
        pi = m[ip + 1]
        qr = m[iq]
        qi = m[iq + 1]
        npr = c * pr - (ar * qr - ai * qi)
        npi = c * pi - (ar * qi + ai * qr)
        nqr = s * pr + (br * qr - bi * qi)
        nqi = s * pi + (br * qi + bi * qr)
        m[ip] = npr
        m[ip + 1] = npi
        m[iq] = nqr
        m[iq + 1] = nqi
        if hermitian:
            m[2 * (k * n + p)] = npr
            m[2 * (k * n + p) + 1] = -npi
            m[2 * (k * n + q)] = nqr
            m[2 * (k * n + q) + 1] = -nqi


def jacobi_eigh(h, double tol=1e-14, int max_sweeps=60):
    """Cyclic complex Jacobi diagonalization; see ``_fallback.jacobi_eigh``."""
    a_arr = np.array(h, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a_arr.shape[0]
    # eigenvectors accumulate as conjugated rows of vt for contiguous access
    vt_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] a_view = a_arr
    cdef double complex[:, ::1] vt_view = vt_arr
    cdef double *a = <double *> &a_view[0, 0]
    cdef double *vt = <double *> &vt_view[0, 0]
    cdef Py_ssize_t p, q, ipq, ipp, iqq, i
    cdef double fro = 0.0, off = 0.0, r, app, aqq, tau, t, c, s, hr, hi
    cdef int sweep = 0

    for i in range(2 * n * n):
        fro += a[i] * a[i]
    fro = sqrt(fro)
    if n == 1 or fro == 0.0:
        return a_arr.diagonal().real.copy(), vt_arr, 0

    with nogil:
        for sweep in range(max_sweeps + 1):
            off = off_norm(a, n)
            if off <= tol * fro or sweep == max_sweeps:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    ipq = 2 * (p * n + q)
                    r = sqrt(a[ipq] * a[ipq] + a[ipq + 1] * a[ipq + 1])
                    if r == 0.0:
                        continue
                    ipp = 2 * (p * n + p)
                    iqq = 2 * (q * n + q)
                    app = a[ipp]
                    aqq = a[iqq]
                    # conj(ph) = a_pq / r
                    hr = a[ipq] / r
                    hi = a[ipq + 1] / r
                    tau = (aqq - app) / (2.0 * r)
                    if tau >= 0.0:
                        t = 1.0 / (fabs(tau) + sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (fabs(tau) + sqrt(1.0 + tau * tau))
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    rotate_rows(a, n, p, q, c, s, s * hr, s * hi, c * hr, c * hi, True)
                    a[ipq] = 0.0
                    a[ipq + 1] = 0.0
                    a[2 * (q * n + p)] = 0.0
                    a[2 * (q * n + p) + 1] = 0.0
                    a[ipp] = app - t * r
                    a[ipp + 1] = 0.0
                    a[iqq] = aqq + t * r
                    a[iqq + 1] = 0.0
                    rotate_rows(vt, n, p, q, c, s, s * hr, s * hi, c * hr, c * hi, False)

    if off > tol * fro:
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
            f"(off-diagonal norm {off:.3e}, Frobenius norm {fro:.3e})"
        )
    return a_arr.diagonal().real.copy(), np.ascontiguousarray(vt_arr.T.conj()), sweep


cdef inline int parity(long x) noexcept nogil:
    cdef int par = 0
    while x:
        par ^= 1
        x &= x - 1
    return par


cdef void string_masks(long s, int n, long *flip, long *sign, int *ny) noexcept nogil:
    cdef int k, d
    cdef long bit
    flip[0] = 0
    sign[0] = 0
    ny[0] = 0
    for k in range(n - 1, -1, -1):
        d = s % 4
        s //= 4
        bit = 1 << (n - 1 - k)
        if d == 1:
            flip[0] |= bit
        elif d == 2:
            flip[0] |= bit
            sign[0] |= bit
            ny[0] += 1
        elif d == 3:
            sign[0] |= bit


def pauli_expectations(rho):
    """``Tr(ρ σ_{i₁}⊗…⊗σ_{iₙ})`` for all 4ⁿ strings (complex)."""
    cdef const double complex[:, ::1] m = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef long dim = m.shape[0]
    cdef int n = 0
    while (1 << n) < dim:
        n += 1
    cdef long count = 1 << (2 * n)
    out_arr = np.empty(count, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef long s, r, flip, sign
    cdef int ny
    cdef double complex acc
    cdef double complex i_pow[4]
    i_pow[0] = 1.0
    i_pow[1] = 1j
    i_pow[2] = -1.0
    i_pow[3] = -1j
    with nogil:
        for s in range(count):
            string_masks(s, n, &flip, &sign, &ny)
            acc = 0.0
            for r in range(dim):
                if parity(r & sign):
                    acc = acc - m[r, r ^ flip]
                else:
                    acc = acc + m[r, r ^ flip]
            out[s] = i_pow[ny % 4] * acc
    return out_arr


def pauli_synthesis(values, int n):
    """Inverse of :func:`pauli_expectations`: ``2⁻ⁿ Σ S_s σ_s``."""
    cdef const double[::1] vals = np.ascontiguousarray(values, dtype=np.float64)
    cdef long dim = 1 << n
    cdef long count = 1 << (2 * n)
    rho_arr = np.zeros((dim, dim), dtype=np.complex128)
    cdef double complex[:, ::1] rho = rho_arr
    cdef long s, r, flip, sign
    cdef int ny
    cdef double complex ph
    cdef double complex i_pow[4]
    i_pow[0] = 1.0
    i_pow[1] = 1j
    i_pow[2] = -1.0
    i_pow[3] = -1j
    with nogil:
        for s in range(count):
            if vals[s] == 0.0:
                continue
            string_masks(s, n, &flip, &sign, &ny)
            ph = vals[s] * i_pow[ny % 4]
            for r in range(dim):
                if parity(r & sign):
                    rho[r ^ flip, r] = rho[r ^ flip, r] - ph
                else:
                    rho[r ^ flip, r] = rho[r ^ flip, r] + ph
    rho_arr /= dim
    return rho_arr
