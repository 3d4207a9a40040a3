"""Points of the four model domains."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DOMAIN_KINDS = ("halfplane", "siegel", "ball", "fock")


class InvalidPointError(ValueError):
    """Coordinates violate the domain's defining inequality."""


class DomainMismatchError(ValueError):
    pass


class UnsupportedDomainError(NotImplementedError):
    pass


def siegel_size(n: int) -> int:
    return n * (n + 1) // 2


def _sym_from_upper(n: int, coords) -> np.ndarray:
    Z = np.zeros((n, n), dtype=complex)
    iu = np.triu_indices(n)
    Z[iu] = coords
    return Z + np.triu(Z, 1).T


@dataclass(frozen=True)
class DomainPoint:
    """A point of H^n (``halfplane``), Siegel H_n, the ball B_n, or the Fock plane.

    Siegel coordinates are the upper triangle of the symmetric matrix Z,
    row by row.
    """

    kind: str
    n: int
    coords: tuple

    def __post_init__(self):
        if self.kind not in DOMAIN_KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}")
        coords = tuple(complex(c) for c in np.ravel(self.coords))
        object.__setattr__(self, "coords", coords)
        expected = {"halfplane": self.n, "siegel": siegel_size(self.n), "ball": self.n, "fock": 1}[self.kind]
        if len(coords) != expected:
            raise InvalidPointError(f"{self.kind} point needs {expected} coordinates, got {len(coords)}")
        if not all(np.isfinite(c.real) and np.isfinite(c.imag) for c in coords):
            raise InvalidPointError("non-finite coordinate")
        self.validate()

    def validate(self) -> None:
        if self.kind == "halfplane":
            for j, c in enumerate(self.coords):
                if not c.imag > 0:
                    raise InvalidPointError(f"upper half plane violated: Im z_{j + 1} = {c.imag:g} <= 0")
        elif self.kind == "siegel":
            Y = self.matrix().imag
            if np.linalg.eigvalsh(Y).min() <= 0:
                raise InvalidPointError("Siegel upper half space violated: Im Z is not positive definite")
        elif self.kind == "ball":
            r2 = sum(abs(c) ** 2 for c in self.coords)
            if not r2 < 1:
                raise InvalidPointError(f"unit ball violated: |z|^2 = {r2:g} >= 1")

    # -- constructors ---------------------------------------------------------------
    @classmethod
    def halfplane(cls, *zs) -> "DomainPoint":
        return cls("halfplane", len(zs), tuple(zs))

    @classmethod
    def siegel(cls, Z) -> "DomainPoint":
        Z = np.asarray(Z, dtype=complex)
        n = Z.shape[0]
        if Z.shape != (n, n) or not np.allclose(Z, Z.T, rtol=0, atol=1e-14 * max(1.0, np.abs(Z).max())):
            raise InvalidPointError("Siegel upper half space violated: Z is not symmetric")
        return cls("siegel", n, tuple(Z[np.triu_indices(n)]))

    @classmethod
    def ball(cls, *zs) -> "DomainPoint":
        return cls("ball", len(zs), tuple(zs))

    @classmethod
    def fock(cls, z) -> "DomainPoint":
        return cls("fock", 1, (z,))

    # -- views ---------------------------------------------------------------------
    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=complex)

    def matrix(self) -> np.ndarray:
        if self.kind != "siegel":
            raise TypeError("matrix() is for Siegel points")
        return _sym_from_upper(self.n, self.coords)

    def same_domain(self, other: "DomainPoint") -> bool:
        return self.kind == other.kind and self.n == other.n

    def log_h(self) -> float:
        """Log of the Hermitian norm squared of the trivialising section sigma."""
        return log_h(self)


def require_same(z: DomainPoint, w: DomainPoint) -> None:
    if not z.same_domain(w):
        raise DomainMismatchError(f"points live in different domains: {z.kind}({z.n}) vs {w.kind}({w.n})")


def log_h(z: DomainPoint, area: float = 1.0) -> float:
    """``log |sigma_z|^2``: prod y_j, det Y, 1 - |z|^2, or exp(-pi |z|^2 / area)."""
    if z.kind == "halfplane":
        return float(sum(np.log(c.imag) for c in z.coords))
    if z.kind == "siegel":
        sign, ld = np.linalg.slogdet(z.matrix().imag)
        return float(ld)
    if z.kind == "ball":
        return float(np.log1p(-sum(abs(c) ** 2 for c in z.coords)))
    return float(-np.pi * abs(z.coords[0]) ** 2 / area)


def canonical_power(kind: str, n: int) -> int:
    """m with K = L^m for the trivial line bundle L of the domain."""
    return {"halfplane": 2, "siegel": n + 1, "ball": n + 1}.get(kind, 1)
