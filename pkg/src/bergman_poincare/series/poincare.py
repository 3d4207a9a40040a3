"""Poincare series of Bergman kernels over word balls, and the Fock/theta pair."""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from ..domains.kernels import (KernelValue, ball_constant, check_weight, halfplane_constant, siegel_constant)
from ..domains.lattice import FockLattice
from ..domains.points import DomainMismatchError, DomainPoint
from ..groups.enumeration import word_ball
from ..groups.presets import GroupPreset
from ..numerics import precision
from ..numerics.logcomplex import ZERO, LogComplex
from ..numerics.summation import combine_partials, logsumexp_complex
from . import terms
from .engine import map_chunks
from .truncated import UNCONVERGED, Shell, TruncatedSum, cancelled_sum, rescaled, sum_from_logs, tail_from_shells


@dataclass(frozen=True)
class SignPolicy:
    """How the centre {+-I} of the group enters a series.

    ``projective``: enumerate modulo sign and multiply by ``factor``.
    ``cancelled``: the terms of g and -g cancel, so the sum is exactly zero.
    """

    projective: bool
    factor: int
    cancelled: bool
    minus_identity_sign: int = 1


def minus_identity_sign(preset: GroupPreset, power: int) -> int:
    """``j(-I, z)^power``: the automorphy factor of -I is (-1)^m, det(-I_n) or -1."""
    base = {"SL2": preset.n, "Sp": preset.n, "SU": 1}[preset.group]
    return -1 if (base * power) % 2 else 1


def sign_policy(preset: GroupPreset, power: int) -> SignPolicy:
    """Policy for a series whose terms pick up ``j(-I, .)^{-power}`` under g -> -g."""
    if preset.kernel_cardinality == 1:
        return SignPolicy(False, 1, False)
    if preset.kernel_cardinality != 2:
        raise NotImplementedError("only kernels {I} and {+-I} are supported")
    s = minus_identity_sign(preset, power)
    return SignPolicy(s == 1, 2 if s == 1 else 0, s == -1, s)


def _check_point(preset: GroupPreset, *pts: DomainPoint) -> None:
    kind, n = preset.domain
    for z in pts:
        if (z.kind, z.n) != (kind, n):
            raise DomainMismatchError(f"group acts on {kind}({n}), point lies in {z.kind}({z.n})")


def _kernel_log_constant(kind: str, n: int, p: int, constant: float | None) -> float:
    if kind == "halfplane":
        return math.log(halfplane_constant(n, p))
    if kind == "ball":
        return math.log(ball_constant(n, p))
    c = siegel_constant(n, p) if constant is None else constant
    return math.log(c)


def _exhausted(preset: GroupPreset, ball) -> bool:
    return not preset.generators or ball.shell_sizes()[-1] == 0


def point_terms(preset: GroupPreset, batch, z: DomainPoint, w: DomainPoint, p: int, workers=None) -> np.ndarray:
    """Log of ``j(g,z)^{-p} K(gz, w) / const`` for each g in the batch."""
    kind = preset.domain[0]
    N = len(batch)
    if kind == "halfplane":
        a, b, c, d = batch.sl2_factors()
        zz = np.array(z.coords, dtype=complex)
        wb = np.conj(np.array(w.coords, dtype=complex))
        return map_chunks(lambda lo, hi: terms.halfplane_point_terms(a[lo:hi], b[lo:hi], c[lo:hi], d[lo:hi],
                                                                     zz, wb, p), N, workers=workers)
    if kind == "ball":
        M = np.ascontiguousarray(batch.embedding(), dtype=complex)
        zt = np.append(np.array(z.coords, dtype=complex), 1.0)
        wt = np.append(np.array(w.coords, dtype=complex), 1.0)[None, :]
        # -Q(g zt, wt) = (c.z + d) - <g z, w> (c.z + d)
        return map_chunks(lambda lo, hi: -p * (terms.ball_pairings(M[lo:hi], zt, wt)[:, 0] + 1j * math.pi),
                          N, workers=workers)
    n = preset.n
    M = batch.embedding()
    A, B, C, D = M[:, :n, :n], M[:, :n, n:], M[:, n:, :n], M[:, n:, n:]
    Z, W = z.matrix(), w.matrix()
    return map_chunks(lambda lo, hi: terms.siegel_point_terms(A[lo:hi], B[lo:hi], C[lo:hi], D[lo:hi], Z, W, p),
                      N, workers=workers)


def _mp_point_series(preset, ball, z, w, p, log_const, policy) -> TruncatedSum:
    """Extended-precision path for H^n point series."""
    zs = [mpmath.mpc(c) for c in z.coords]
    wb = [mpmath.conj(mpmath.mpc(c)) for c in w.coords]
    shells = []
    for k, shell in enumerate(ball.shells):
        vals = []
        for row in shell:
            s = mpmath.mpc(0)
            for j in range(preset.n):
                (a, b), (c, d) = (preset.ring.embed(row, j) if preset.ring.kind == "Z" else
                                  _mp_embed(preset.ring, row, j))
                s += mpmath.log(2j / ((a * zs[j] + b) - wb[j] * (c * zs[j] + d)))
            vals.append(p * s + log_const)
        if vals:
            tot = mpmath.fsum(mpmath.exp(v) for v in vals)
            mag = mpmath.fsum(mpmath.exp(mpmath.re(v)) for v in vals)
            val = LogComplex.from_complex(tot)
            shells.append(Shell(k, val, float(mpmath.log(mag)), len(vals)))
        else:
            shells.append(Shell(k, ZERO, -math.inf, 0))
    shells = tuple(shells)
    exhausted = _exhausted(preset, ball)
    tail = tail_from_shells(shells, exhausted)
    flags = () if math.isfinite(tail) else (UNCONVERGED,)
    return TruncatedSum(combine_partials(s.value for s in shells), shells, tail, ball.count, False, flags,
                        {"exhausted": exhausted, "projective": policy.projective, "factor": policy.factor,
                         "precision": precision.get_precision()})


def _mp_embed(ring, row, j):
    s = mpmath.sqrt(ring.d) * (1 if j == 0 else -1)
    return [[mpmath.mpf(int(row[r, c, 0])) + s * int(row[r, c, 1]) for c in range(2)] for r in range(2)]


def point_series(preset: GroupPreset, p, z: DomainPoint, w: DomainPoint, depth: int,
                 constant: float | None = None, workers=None) -> TruncatedSum:
    """``sum_g j(g,z)^{-p} K(g z, w)`` over the word ball of ``depth``.

    Includes the kernel normalisation, so the trivial group returns the
    Bergman kernel.  The sign policy decides between linear enumeration,
    projective enumeration with a factor 2, and exact cancellation.
    """
    _check_point(preset, z, w)
    kind, n = preset.domain
    p = check_weight(kind, n, p)
    policy = sign_policy(preset, p)
    if policy.cancelled:
        return cancelled_sum(depth, "-I acts with automorphy factor -1 at this weight")
    ball = word_ball(preset, depth, policy.projective)
    log_const = _kernel_log_constant(kind, n, p, constant) + math.log(policy.factor)
    if precision.extended() and kind == "halfplane":
        return _mp_point_series(preset, ball, z, w, p, log_const, policy)
    L = point_terms(preset, ball.batch(), z, w, p, workers)
    return sum_from_logs(L, ball.offsets(), log_const, _exhausted(preset, ball),
                         {"projective": policy.projective, "factor": policy.factor, "truncated": ball.truncated},
                         exponent=p * n)


# -- Fock plane ------------------------------------------------------------------------------------
def lattice_shells(radius: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(m, n, offsets): lattice points ordered by max(|m|, |n|), then (m, n)."""
    ms, ns, offs = [], [], [0]
    for k in range(radius + 1):
        r = np.arange(-k, k + 1)
        M, N = np.meshgrid(r, r, indexing="ij")
        sel = np.maximum(np.abs(M), np.abs(N)) == k
        ms.append(M[sel])
        ns.append(N[sel])
        offs.append(offs[-1] + int(sel.sum()))
    return (np.concatenate(ms).astype(np.int64), np.concatenate(ns).astype(np.int64),
            np.array(offs, dtype=np.int64))


def fock_average(lattice: FockLattice, p, z: DomainPoint, w: DomainPoint, radius: int = 8,
                 workers=None) -> TruncatedSum:
    """``sum_lambda e_lambda(z)^{-p} K_Fock(z + lambda, w)`` over the square of lattice radius ``radius``."""
    p = check_weight("fock", 1, p)
    m, n, offs = lattice_shells(radius)
    area = lattice.covolume
    zz, wb = complex(z.coords[0]), complex(w.coords[0]).conjugate()
    L = map_chunks(lambda lo, hi: terms.fock_terms(m[lo:hi], n[lo:hi], lattice.tau, zz, wb, p, area),
                   m.size, workers=workers)
    return sum_from_logs(L, offs, math.log(p / area), False, {"radius": radius}, exponent=p)


def averaged_kernel(group, p, z: DomainPoint, w: DomainPoint, depth: int = 8, workers=None,
                    constant: float | None = None) -> TruncatedSum:
    """Candidate Bergman kernel of the quotient: the kernel averaged over the group.

    The average runs over the image of the group in the automorphisms of the
    domain, i.e. :func:`point_series` divided by the kernel cardinality; this
    is the sum that reproduces sections on the quotient.  ``group`` is a
    :class:`GroupPreset` or a :class:`FockLattice` (then ``depth`` is the
    lattice radius).
    """
    if isinstance(group, FockLattice):
        return fock_average(group, p, z, w, depth, workers)
    s = point_series(group, p, z, w, depth, constant, workers)
    f = s.info.get("factor", 1)
    if s.cancellation_flag or f == 1:
        return s
    return rescaled(s, 1.0 / f)


def theta_log(lattice: FockLattice, p: int, j: int, z: complex) -> complex:
    """log of ``sum_k exp(pi i p tau (k + j/p)^2 + 2 pi i p (k + j/p) z)``."""
    tau, v = lattice.tau, lattice.covolume
    # |terms| peak near k = -Im z / v and fall like exp(-pi p v (k - c)^2); the window covers e^{-450}
    c = -z.imag / v - j / p
    half = int(math.ceil(12 / math.sqrt(p * v))) + 2
    k = np.arange(int(math.floor(c)) - half, int(math.ceil(c)) + half + 1)
    x = k + j / p
    L = math.pi * 1j * p * tau * x * x + 2j * math.pi * p * x * z
    s = logsumexp_complex(L)
    return complex(s.log_mag, s.arg)


def theta_basis(lattice: FockLattice, p: int, z: complex) -> np.ndarray:
    """Log-values of the orthonormal theta sections ``(2p/v)^{1/4} exp(pi p z^2 / 2v) theta_j(z)``."""
    v = lattice.covolume
    pre = 0.25 * math.log(2 * p / v) + math.pi * p * z * z / (2 * v)
    return np.array([pre + theta_log(lattice, p, j, z) for j in range(p)])


def theta_basis_kernel(lattice: FockLattice, p, z: DomainPoint, w: DomainPoint) -> KernelValue:
    """``sum_j f_j(z) conj(f_j(w))`` over the theta basis of the p-th power."""
    p = check_weight("fock", 1, p)
    fz = theta_basis(lattice, p, complex(z.coords[0]))
    fw = theta_basis(lattice, p, complex(w.coords[0]))
    return KernelValue(logsumexp_complex(fz + np.conj(fw)), p, "fock", 1)
