"""Exact group elements of SL2(R)^m, Sp_2n(R) and SU(n,1) with ring entries."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .rings import Ring


class GroupInvariantError(ValueError):
    """An exact matrix fails the defining relations of its group."""


GROUP_KINDS = ("SL2", "Sp", "SU")


def matrix_size(group: str, n: int) -> int:
    return {"SL2": 2, "Sp": 2 * n, "SU": n + 1}[group]


def domain_of(group: str, n: int) -> tuple[str, int]:
    """(domain kind, dimension) acted on by the group."""
    return {"SL2": ("halfplane", n), "Sp": ("siegel", n), "SU": ("ball", n)}[group]


def ring_det(ring: Ring, M: np.ndarray) -> np.ndarray:
    """Exact determinant of one (r, r, k) coefficient matrix."""
    r = M.shape[0]
    if r == 1:
        return M[0, 0].copy()
    if r == 2:
        return ring.mul(M[0, 0], M[1, 1]) - ring.mul(M[0, 1], M[1, 0])
    total = np.zeros(ring.dim, dtype=np.int64)
    for j in range(r):
        if not M[0, j].any():
            continue
        minor = np.delete(np.delete(M, 0, axis=0), j, axis=1)
        term = ring.mul(M[0, j], ring_det(ring, minor))
        total = total + term if j % 2 == 0 else total - term
    return total


def _transpose(M: np.ndarray) -> np.ndarray:
    return np.swapaxes(M, -3, -2)


def _su_form(n: int, ring: Ring) -> np.ndarray:
    J = np.zeros((n + 1, n + 1, ring.dim), dtype=np.int64)
    for k in range(n):
        J[k, k, 0] = 1
    J[n, n, 0] = -1
    return J


@dataclass(frozen=True, eq=False)
class GroupElement:
    """Exact matrix over ``ring`` in group ``group`` (``"SL2"``, ``"Sp"``, ``"SU"``).

    ``n`` is the number of half-plane factors for SL2 (ring embeddings), the
    genus for Sp_2n and the ball dimension for SU(n,1).
    """

    ring: Ring
    group: str
    n: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.ascontiguousarray(self.coeffs, dtype=np.int64)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        r = matrix_size(self.group, self.n)
        if c.shape != (r, r, self.ring.dim):
            raise ValueError(f"coefficient array of shape {c.shape}, expected {(r, r, self.ring.dim)}")

    # -- construction ------------------------------------------------------------------
    @classmethod
    def from_entries(cls, ring: Ring, group: str, n: int, rows) -> "GroupElement":
        arr = np.array([[ring.parse_entry(e) for e in row] for row in rows], dtype=np.int64)
        return cls(ring, group, n, arr)

    @classmethod
    def identity(cls, ring: Ring, group: str, n: int) -> "GroupElement":
        r = matrix_size(group, n)
        arr = np.zeros((r, r, ring.dim), dtype=np.int64)
        for i in range(r):
            arr[i, i, 0] = 1
        return cls(ring, group, n, arr)

    def like(self, coeffs: np.ndarray) -> "GroupElement":
        return GroupElement(self.ring, self.group, self.n, coeffs)

    # -- algebra -------------------------------------------------------------------------
    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return self.like(self.ring.matmul(self.coeffs, other.coeffs))

    def __neg__(self) -> "GroupElement":
        return self.like(-self.coeffs)

    def __pow__(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inverse()
        out = GroupElement.identity(self.ring, self.group, self.n)
        for _ in range(abs(int(k))):
            out = out @ base
        return out

    def inverse(self) -> "GroupElement":
        return self.like(inverse_coeffs(self.ring, self.group, self.n, self.coeffs))

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and self.key() == other.key() and self.group == other.group

    def __hash__(self) -> int:
        return hash((self.group, self.key()))

    def key(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.coeffs.ravel())

    def sign_normalized(self) -> "GroupElement":
        """Representative of {g, -g} whose first nonzero coefficient is positive."""
        return self.like(sign_normalize(self.coeffs[None])[0])

    def is_identity(self) -> bool:
        return self == GroupElement.identity(self.ring, self.group, self.n)

    # -- numerics ------------------------------------------------------------------------
    @property
    def domain(self) -> tuple[str, int]:
        return domain_of(self.group, self.n)

    def embedding(self, which: int = 0) -> np.ndarray:
        """Numerical matrix under ring embedding ``which``."""
        return self.ring.embed(self.coeffs, which)

    def factors(self) -> np.ndarray:
        """For SL2: array (m, 2, 2) of real matrices, one per half-plane factor."""
        if self.group != "SL2":
            raise TypeError("factors() is defined for SL2 elements")
        return np.stack([self.embedding(j) for j in range(self.n)])

    def trace(self, which: int = 0):
        return np.trace(self.embedding(which))

    def entries(self) -> list[list]:
        r = self.coeffs.shape[0]
        return [[self.ring.format_entry(self.coeffs[i, j]) for j in range(r)] for i in range(r)]

    # -- exact invariants -------------------------------------------------------------------
    def check(self) -> None:
        """Raise :class:`GroupInvariantError` unless the defining relations hold exactly."""
        ring, M = self.ring, self.coeffs
        one = ring.one()
        r = M.shape[0]
        ident = GroupElement.identity(ring, self.group, self.n).coeffs
        if self.group in ("SL2",):
            if not np.array_equal(ring_det(ring, M), one):
                raise GroupInvariantError("determinant is not 1")
            if self.n != ring.embeddings:
                raise GroupInvariantError("SL2 factor count must equal the number of ring embeddings")
        elif self.group == "Sp":
            n = self.n
            A, B, C, D = M[:n, :n], M[:n, n:], M[n:, :n], M[n:, n:]
            AtC = ring.matmul(_transpose(A), C)
            BtD = ring.matmul(_transpose(B), D)
            if not np.array_equal(AtC, _transpose(AtC)) or not np.array_equal(BtD, _transpose(BtD)):
                raise GroupInvariantError("A^T C or B^T D is not symmetric")
            if not np.array_equal(ring.matmul(_transpose(A), D) - ring.matmul(_transpose(C), B), ident[:n, :n]):
                raise GroupInvariantError("A^T D - C^T B is not the identity")
        elif self.group == "SU":
            J = _su_form(self.n, ring)
            gh = ring.conj(_transpose(M))
            if not np.array_equal(ring.matmul(ring.matmul(gh, J), M), J):
                raise GroupInvariantError("g^H J g != J")
            if not np.array_equal(ring_det(ring, M), one):
                raise GroupInvariantError("determinant is not 1")
        else:  # pragma: no cover
            raise GroupInvariantError(f"unknown group {self.group}")
        del r

    def is_valid(self) -> bool:
        try:
            self.check()
        except GroupInvariantError:
            return False
        return True


def inverse_coeffs(ring: Ring, group: str, n: int, M: np.ndarray) -> np.ndarray:
    """Exact inverse(s); works on a single (r, r, k) array or a batch."""
    if group == "SL2":
        out = np.empty_like(M)
        out[..., 0, 0, :] = M[..., 1, 1, :]
        out[..., 1, 1, :] = M[..., 0, 0, :]
        out[..., 0, 1, :] = -M[..., 0, 1, :]
        out[..., 1, 0, :] = -M[..., 1, 0, :]
        return out
    if group == "Sp":
        A, B = M[..., :n, :n, :], M[..., :n, n:, :]
        C, D = M[..., n:, :n, :], M[..., n:, n:, :]
        top = np.concatenate([_transpose(D), -_transpose(B)], axis=-2)
        bot = np.concatenate([-_transpose(C), _transpose(A)], axis=-2)
        return np.concatenate([top, bot], axis=-3)
    if group == "SU":
        J = _su_form(n, ring)
        gh = ring.conj(_transpose(M))
        return ring.matmul(ring.matmul(np.broadcast_to(J, gh.shape), gh), np.broadcast_to(J, gh.shape))
    raise ValueError(group)


def sign_normalize(batch: np.ndarray) -> np.ndarray:
    """Flip each matrix in (N, ...) so its first nonzero coefficient is positive."""
    flat = batch.reshape(batch.shape[0], -1)
    nz = flat != 0
    first = np.argmax(nz, axis=1)
    sgn = np.sign(flat[np.arange(flat.shape[0]), first])
    sgn[sgn == 0] = 1
    return batch * sgn.reshape((-1,) + (1,) * (batch.ndim - 1))


@dataclass
class ElementBatch:
    """N exact matrices sharing ring/group, shape (N, r, r, k)."""

    ring: Ring
    group: str
    n: int
    coeffs: np.ndarray

    def __len__(self) -> int:
        return self.coeffs.shape[0]

    def __getitem__(self, i: int) -> GroupElement:
        return GroupElement(self.ring, self.group, self.n, self.coeffs[i])

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def keys(self) -> np.ndarray:
        return self.coeffs.reshape(len(self), -1)

    def embedding(self, which: int = 0) -> np.ndarray:
        return self.ring.embed(self.coeffs, which)

    def sl2_factors(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Real arrays a, b, c, d of shape (N, m) over the m embeddings."""
        mats = np.stack([self.embedding(j) for j in range(self.n)], axis=1)  # (N, m, 2, 2)
        return (np.ascontiguousarray(mats[..., 0, 0]), np.ascontiguousarray(mats[..., 0, 1]),
                np.ascontiguousarray(mats[..., 1, 0]), np.ascontiguousarray(mats[..., 1, 1]))

    def subset(self, idx) -> "ElementBatch":
        return ElementBatch(self.ring, self.group, self.n, self.coeffs[idx])

    @classmethod
    def from_elements(cls, elements) -> "ElementBatch":
        elements = list(elements)
        g = elements[0]
        return cls(g.ring, g.group, g.n, np.stack([e.coeffs for e in elements]))
