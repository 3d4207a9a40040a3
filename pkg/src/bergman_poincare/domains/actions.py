"""Group actions on the domains and the automorphy factor of the line bundle L."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..numerics.logcomplex import LogComplex
from .lattice import LatticeTranslation
from .points import DomainMismatchError, DomainPoint


class SingularActionError(ZeroDivisionError):
    """The automorphy factor vanishes, so the point lies outside the domain."""


@dataclass(frozen=True)
class Cocycle:
    """Automorphy factor of ``element`` at ``point``, stored in log form."""

    value: LogComplex
    element: object
    point: DomainPoint

    def __complex__(self) -> complex:
        return complex(self.value.to_complex())

    def power(self, k: int) -> LogComplex:
        return self.value ** k


def _check(g, z: DomainPoint) -> None:
    if tuple(g.domain) != (z.kind, z.n):
        raise DomainMismatchError(f"element acts on {g.domain}, point lies in ({z.kind}, {z.n})")


def _siegel_blocks(g):
    n = g.n
    M = g.embedding()
    return M[:n, :n], M[:n, n:], M[n:, :n], M[n:, n:]


def _act_and_factor(g, z: DomainPoint):
    """(image coordinates, log of the automorphy factor)."""
    _check(g, z)
    if isinstance(g, LatticeTranslation):
        w = z.coords[0]
        return (w + g.value,), g.log_multiplier(w)
    if g.group == "SL2":
        out, log = [], 0j
        for j, c_j in enumerate(z.coords):
            (a, b), (c, d) = g.embedding(j)
            den = c * c_j + d
            if den == 0:
                raise SingularActionError("cz + d = 0")
            out.append((a * c_j + b) / den)
            log += np.log(complex(den))
        return tuple(out), log
    if g.group == "Sp":
        A, B, C, D = _siegel_blocks(g)
        Z = z.matrix()
        den = C @ Z + D
        sign, ld = np.linalg.slogdet(den)
        if sign == 0:
            raise SingularActionError("det(CZ + D) = 0")
        W = np.linalg.solve(den.T, (A @ Z + B).T)  # (AZ+B)(CZ+D)^{-1}, transposed
        W = 0.5 * (W + W.T)
        return tuple(W[np.triu_indices(g.n)]), complex(ld + np.log(sign))
    if g.group == "SU":
        M = g.embedding()
        zt = np.append(np.array(z.coords, dtype=complex), 1.0)
        u = M @ zt
        if u[-1] == 0:
            raise SingularActionError("c.z + d = 0")
        return tuple(u[:-1] / u[-1]), complex(np.log(u[-1]))
    raise TypeError(f"cannot act with {type(g).__name__}")  # pragma: no cover


def act(g, z: DomainPoint) -> DomainPoint:
    """Image ``g . z``."""
    coords, _ = _act_and_factor(g, z)
    return DomainPoint(z.kind, z.n, coords)


def cocycle(g, z: DomainPoint) -> Cocycle:
    """Factor by which ``g`` multiplies the trivialising section of L at z.

    prod_j (c_j z_j + d_j) on H^n, det(CZ + D) on Siegel space, c.z + d on the
    ball, and the theta multiplier on the Fock plane.
    """
    _, log = _act_and_factor(g, z)
    return Cocycle(LogComplex.from_log(log), g, z)


def act_with_cocycle(g, z: DomainPoint) -> tuple[DomainPoint, Cocycle]:
    coords, log = _act_and_factor(g, z)
    return DomainPoint(z.kind, z.n, coords), Cocycle(LogComplex.from_log(log), g, z)
