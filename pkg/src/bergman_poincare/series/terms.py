"""Per-element log-terms of the series, as numba loops and numpy expressions.

Every function returns one complex logarithm per group element.  Terms are
written without divisions by automorphy factors, e.g. the half-plane point
term ``j(g,z)^{-p} (2i/(gz - conj w))^p`` is ``(2i/((az+b) - conj(w)(cz+d)))^p``.
"""
from __future__ import annotations

import numpy as np

from .._accel import dispatch, njit


# -- point series on H^m -----------------------------------------------------------------
@njit
def _halfplane_point_nb(a, b, c, d, z, wbar, p):
    N, m = a.shape
    out = np.empty(N, dtype=np.complex128)
    for i in range(N):
        s = 0j
        for j in range(m):
            den = (a[i, j] * z[j] + b[i, j]) - wbar[j] * (c[i, j] * z[j] + d[i, j])
            s += np.log(2j / den)
        out[i] = p * s
    return out


def _halfplane_point_np(a, b, c, d, z, wbar, p):
    den = (a * z + b) - wbar * (c * z + d)
    return p * np.sum(np.log(2j / den), axis=1)


halfplane_point_terms = dispatch(_halfplane_point_nb, _halfplane_point_np)


# -- relative series on H: log of c0 (az+b)^2 + (d0-a0)(az+b)(cz+d) - b0 (cz+d)^2 ------------
@njit
def _katok_logq_nb(a, b, c, d, z, a0, b0, c0, d0):
    N = a.shape[0]
    out = np.empty(N, dtype=np.complex128)
    for i in range(N):
        u = a[i] * z + b[i]
        v = c[i] * z + d[i]
        out[i] = np.log(c0 * u * u + (d0 - a0) * u * v - b0 * v * v)
    return out


def _katok_logq_np(a, b, c, d, z, a0, b0, c0, d0):
    u = a * z + b
    v = c * z + d
    return np.log(c0 * u * u + (d0 - a0) * u * v - b0 * v * v)


katok_logq = dispatch(_katok_logq_nb, _katok_logq_np)


# -- ball: homogeneous pairings Q(g zt, X) ------------------------------------------------------
@njit
def _ball_pairings_nb(M, zt, vecs):
    """log Q(M_i zt, v_k) for every element i and target vector k."""
    N, r, _ = M.shape
    K = vecs.shape[0]
    out = np.empty((N, K), dtype=np.complex128)
    u = np.empty(r, dtype=np.complex128)
    for i in range(N):
        for a in range(r):
            s = 0j
            for b in range(r):
                s += M[i, a, b] * zt[b]
            u[a] = s
        for k in range(K):
            q = 0j
            for a in range(r - 1):
                q += u[a] * np.conj(vecs[k, a])
            q -= u[r - 1] * np.conj(vecs[k, r - 1])
            out[i, k] = np.log(q)
    return out


def _ball_pairings_np(M, zt, vecs):
    u = M @ zt
    q = u[:, :-1] @ np.conj(vecs[:, :-1]).T - np.outer(u[:, -1], np.conj(vecs[:, -1]))
    return np.log(q)


ball_pairings = dispatch(_ball_pairings_nb, _ball_pairings_np)


# -- Fock plane ----------------------------------------------------------------------------------
@njit
def _fock_terms_nb(m, n, tau, z, wbar, p, area):
    N = m.shape[0]
    out = np.empty(N, dtype=np.complex128)
    alpha = np.pi * p / area
    for i in range(N):
        lam = m[i] + n[i] * tau
        lm = (np.pi / area) * (z * np.conj(lam) + 0.5 * (lam.real * lam.real + lam.imag * lam.imag))
        if (m[i] * n[i]) % 2 != 0:
            lm += 1j * np.pi
        out[i] = alpha * (z + lam) * wbar - p * lm
    return out


def _fock_terms_np(m, n, tau, z, wbar, p, area):
    lam = m + n * tau
    lm = (np.pi / area) * (z * np.conj(lam) + 0.5 * np.abs(lam) ** 2) + 1j * np.pi * ((m * n) % 2)
    return (np.pi * p / area) * (z + lam) * wbar - p * lm


fock_terms = dispatch(_fock_terms_nb, _fock_terms_np)


# -- Siegel space (numpy only; small problems) -----------------------------------------------------
def siegel_point_terms(A, B, C, D, Z, W, p):
    """``-p log det((AZ+B - conj(W)(CZ+D)) / 2i)`` for batches of blocks, shape (N, n, n)."""
    M = (A @ Z + B - np.conj(W) @ (C @ Z + D)) / 2j
    sign, ld = np.linalg.slogdet(M)
    return -p * (ld + np.log(sign))
