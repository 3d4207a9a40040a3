"""Lattice translations of the Fock plane and their multiplier."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class FockLattice:
    """The lattice Z + Z tau, with Im tau > 0."""

    tau: complex = 1j

    def __post_init__(self):
        object.__setattr__(self, "tau", complex(self.tau))
        if not self.tau.imag > 0:
            raise ValueError("lattice parameter tau must have Im tau > 0")

    @property
    def covolume(self) -> float:
        return self.tau.imag

    def point(self, m: int, n: int) -> complex:
        return m + n * self.tau

    def translation(self, m: int, n: int) -> "LatticeTranslation":
        return LatticeTranslation(int(m), int(n), self)


@dataclass(frozen=True)
class LatticeTranslation:
    """z -> z + m + n tau."""

    m: int
    n: int
    lattice: FockLattice = FockLattice()

    @property
    def value(self) -> complex:
        return self.lattice.point(self.m, self.n)

    @property
    def domain(self) -> tuple[str, int]:
        return ("fock", 1)

    def __matmul__(self, other: "LatticeTranslation") -> "LatticeTranslation":
        if other.lattice != self.lattice:
            raise ValueError("translations belong to different lattices")
        return LatticeTranslation(self.m + other.m, self.n + other.n, self.lattice)

    def inverse(self) -> "LatticeTranslation":
        return LatticeTranslation(-self.m, -self.n, self.lattice)

    def is_identity(self) -> bool:
        return self.m == 0 and self.n == 0

    def log_multiplier(self, z: complex) -> complex:
        """Log of the weight-one multiplier ``(-1)^{mn} exp(pi/v (z conj(lam) + |lam|^2/2))``.

        With this sign the multiplier is a cocycle and keeps
        ``|s|^2 exp(-pi |z|^2 / v)`` invariant.
        """
        lam = self.value
        v = self.lattice.covolume
        log = (math.pi / v) * (z * lam.conjugate() + abs(lam) ** 2 / 2)
        if (self.m * self.n) % 2:
            log += 1j * math.pi
        return log

    def multiplier(self, z: complex) -> complex:
        return cmath.exp(self.log_multiplier(z))
