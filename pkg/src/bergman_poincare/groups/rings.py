"""Exact rings: Z, Z[sqrt(d)] for squarefree d > 1, and Z[i].

Elements are integer coefficient vectors in the basis (1,) or (1, w) with
w = sqrt(d) or i.  Matrices over a ring are int64 arrays whose last axis is
the coefficient axis; arithmetic here is integer-exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# entries above this bound may overflow int64 in a product of two matrices
SAFE_ENTRY = 2**29


@dataclass(frozen=True)
class Ring:
    kind: str  # "Z" | "Zsqrt" | "Zi"
    d: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Zsqrt", "Zi"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Zsqrt" and (self.d < 2 or any(self.d % (q * q) == 0 for q in range(2, int(math.isqrt(self.d)) + 1))):
            raise ValueError("Zsqrt needs a squarefree d > 1")

    @property
    def dim(self) -> int:
        return 1 if self.kind == "Z" else 2

    @property
    def w_square(self) -> int:
        """Square of the second basis element."""
        return {"Z": 0, "Zsqrt": self.d, "Zi": -1}[self.kind]

    @property
    def embeddings(self) -> int:
        """Number of embeddings used for the action (real for Z, Zsqrt; complex for Zi)."""
        return 2 if self.kind == "Zsqrt" else 1

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "Zsqrt":
            out["d"] = self.d
        return out

    @classmethod
    def from_dict(cls, data) -> "Ring":
        if isinstance(data, str):
            data = {"kind": data}
        return cls(data["kind"], int(data.get("d", 0)))

    # -- coefficient arrays ---------------------------------------------------------
    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Elementwise product of coefficient arrays (last axis = basis)."""
        if self.dim == 1:
            return x * y
        a, b = x[..., 0], x[..., 1]
        c, e = y[..., 0], y[..., 1]
        return np.stack([a * c + self.w_square * b * e, a * e + b * c], axis=-1)

    def conj(self, x: np.ndarray) -> np.ndarray:
        """Complex conjugation (Zi) / Galois conjugation (Zsqrt)."""
        if self.dim == 1:
            return x.copy()
        return np.stack([x[..., 0], -x[..., 1]], axis=-1)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Batched matrix product; shapes (..., r, s, k) x (..., s, t, k)."""
        guard_overflow(A, B)
        if self.dim == 1:
            return np.einsum("...ijk,...jlk->...ilk", A, B)
        a, b = A[..., 0], A[..., 1]
        c, e = B[..., 0], B[..., 1]
        re = np.einsum("...ij,...jl->...il", a, c) + self.w_square * np.einsum("...ij,...jl->...il", b, e)
        im = np.einsum("...ij,...jl->...il", a, e) + np.einsum("...ij,...jl->...il", b, c)
        return np.stack([re, im], axis=-1)

    def embed(self, x: np.ndarray, which: int = 0) -> np.ndarray:
        """Numerical value of coefficient arrays under embedding ``which``."""
        x = np.asarray(x)
        if self.kind == "Z":
            return x[..., 0].astype(float)
        if self.kind == "Zi":
            return x[..., 0].astype(float) + 1j * x[..., 1].astype(float)
        s = math.sqrt(self.d) * (1.0 if which == 0 else -1.0)
        return x[..., 0].astype(float) + s * x[..., 1].astype(float)

    def one(self) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        out[0] = 1
        return out

    def parse_entry(self, e) -> np.ndarray:
        """An int, or a coefficient pair ``[a, b]`` meaning ``a + b w``."""
        if isinstance(e, (list, tuple)):
            if len(e) != self.dim:
                raise ValueError(f"entry {e!r} does not match ring of dimension {self.dim}")
            return np.array([int(v) for v in e], dtype=np.int64)
        out = np.zeros(self.dim, dtype=np.int64)
        out[0] = int(e)
        return out

    def format_entry(self, x) -> int | list[int]:
        x = [int(v) for v in np.asarray(x).ravel()]
        return x[0] if self.dim == 1 else x


@dataclass(frozen=True)
class RingScalar:
    """A single exact ring element."""

    ring: Ring
    coeffs: tuple[int, ...]

    def _arr(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def _wrap(self, arr) -> "RingScalar":
        return RingScalar(self.ring, tuple(int(v) for v in arr))

    def __add__(self, other: "RingScalar") -> "RingScalar":
        return self._wrap(self._arr() + other._arr())

    def __sub__(self, other: "RingScalar") -> "RingScalar":
        return self._wrap(self._arr() - other._arr())

    def __mul__(self, other: "RingScalar") -> "RingScalar":
        return self._wrap(self.ring.mul(self._arr(), other._arr()))

    def __neg__(self) -> "RingScalar":
        return self._wrap(-self._arr())

    def conj(self) -> "RingScalar":
        return self._wrap(self.ring.conj(self._arr()))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def embed(self, which: int = 0):
        return self.ring.embed(self._arr(), which)[()]


def guard_overflow(*arrays) -> None:
    for a in arrays:
        if a.size and int(np.abs(a).max()) > SAFE_ENTRY:
            raise OverflowError("exact matrix entries too large for int64 products")
