"""Named discrete groups and their JSON form.

JSON schema::

    {"name": "sl2z",
     "ring": {"kind": "Z"},                      # or {"kind": "Zsqrt", "d": 2}, {"kind": "Zi"}
     "domain": {"kind": "halfplane", "n": 1},    # halfplane | siegel | ball
     "generators": [[[0, -1], [1, 0]], ...],     # exact entries: ints or [a, b] pairs
     "kernel_cardinality": 2}

Generator lists are closed under inverses on load.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .elements import GroupElement, GroupInvariantError
from .rings import Ring

_DOMAIN_GROUP = {"halfplane": "SL2", "siegel": "Sp", "ball": "SU"}


class PresetError(ValueError):
    pass


@dataclass
class GroupPreset:
    name: str
    ring: Ring
    group: str
    n: int
    generators: list[GroupElement]
    kernel_cardinality: int = 1
    base_point: tuple | None = None
    description: str = ""
    _closed: list[GroupElement] = field(default_factory=list, repr=False)

    def __post_init__(self):
        for g in self.generators:
            if g.ring != self.ring or g.group != self.group or g.n != self.n:
                raise PresetError(f"generator of {self.name} has mismatched ring/group")
            try:
                g.check()
            except GroupInvariantError as exc:
                raise PresetError(f"generator of {self.name} invalid: {exc}") from exc
        closed: list[GroupElement] = []
        seen = set()
        for g in self.generators:
            for h in (g, g.inverse()):
                if h.key() not in seen:
                    seen.add(h.key())
                    closed.append(h)
        self._closed = closed
        if self.kernel_cardinality < 1:
            raise PresetError("kernel_cardinality must be >= 1")

    @property
    def symmetric_generators(self) -> list[GroupElement]:
        """Generators together with their inverses, deduplicated, in a fixed order."""
        return list(self._closed)

    @property
    def domain(self) -> tuple[str, int]:
        return {"SL2": "halfplane", "Sp": "siegel", "SU": "ball"}[self.group], self.n

    def identity(self) -> GroupElement:
        return GroupElement.identity(self.ring, self.group, self.n)

    def contains_minus_identity(self) -> bool:
        return self.kernel_cardinality > 1

    # -- JSON -----------------------------------------------------------------------------
    def to_dict(self) -> dict:
        kind, n = self.domain
        return {
            "name": self.name,
            "ring": self.ring.to_dict(),
            "domain": {"kind": kind, "n": n},
            "generators": [g.entries() for g in self.generators],
            "kernel_cardinality": self.kernel_cardinality,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "GroupPreset":
        try:
            ring = Ring.from_dict(data["ring"])
            dom = data["domain"]
            if isinstance(dom, str):
                dom = {"kind": dom, "n": 1}
            kind = dom["kind"]
            n = int(dom.get("n", 1))
            group = _DOMAIN_GROUP[kind]
            gens = [GroupElement.from_entries(ring, group, n, rows) for rows in data.get("generators", [])]
        except (KeyError, TypeError) as exc:
            raise PresetError(f"malformed preset document: {exc}") from exc
        except ValueError as exc:
            raise PresetError(str(exc)) from exc
        return cls(
            name=str(data.get("name", "custom")),
            ring=ring,
            group=group,
            n=n,
            generators=gens,
            kernel_cardinality=int(data.get("kernel_cardinality", 1)),
        )

    @classmethod
    def from_json(cls, text: str) -> "GroupPreset":
        return cls.from_dict(json.loads(text))


def _sl2(ring: Ring, n: int, *mats) -> list[GroupElement]:
    return [GroupElement.from_entries(ring, "SL2", n, m) for m in mats]


def trivial(domain: str = "halfplane", n: int = 1) -> GroupPreset:
    ring = Ring("Z") if not (domain == "halfplane" and n == 2) else Ring("Zsqrt", 2)
    if domain == "ball":
        ring = Ring("Zi")
    return GroupPreset("trivial", ring, _DOMAIN_GROUP[domain], n, [], 1)


def sl2z() -> GroupPreset:
    Z = Ring("Z")
    S, T = _sl2(Z, 1, [[0, -1], [1, 0]], [[1, 1], [0, 1]])
    return GroupPreset("sl2z", Z, "SL2", 1, [S, T], 2, description="SL2(Z), generators S, T")


def cyclic(g0: GroupElement, kernel_cardinality: int = 1, name: str = "cyclic") -> GroupPreset:
    """The subgroup generated by a single element."""
    return GroupPreset(name, g0.ring, g0.group, g0.n, [g0], kernel_cardinality)


def hilbert_sqrt2() -> GroupPreset:
    R = Ring("Zsqrt", 2)
    gens = _sl2(
        R,
        2,
        [[0, -1], [1, 0]],
        [[1, 1], [0, 1]],
        [[1, [0, 1]], [0, 1]],
        [[[1, 1], 0], [0, [-1, 1]]],  # diag(1 + sqrt2, sqrt2 - 1)
    )
    return GroupPreset("hilbert2", R, "SL2", 2, gens, 2, description="SL2(Z[sqrt 2]) on H x H")


def sp4z() -> GroupPreset:
    Z = Ring("Z")
    I2 = [[1, 0], [0, 1]]
    Z2 = [[0, 0], [0, 0]]

    def block(A, B, C, D):
        return [A[0] + B[0], A[1] + B[1], C[0] + D[0], C[1] + D[1]]

    J = block(Z2, I2, [[-1, 0], [0, -1]], Z2)
    t11 = block(I2, [[1, 0], [0, 0]], Z2, I2)
    t22 = block(I2, [[0, 0], [0, 1]], Z2, I2)
    t12 = block(I2, [[0, 1], [1, 0]], Z2, I2)
    u = block([[1, 1], [0, 1]], Z2, Z2, [[1, 0], [-1, 1]])
    w = block([[0, 1], [1, 0]], Z2, Z2, [[0, 1], [1, 0]])
    gens = [GroupElement.from_entries(Z, "Sp", 2, m) for m in (J, t11, t22, t12, u, w)]
    return GroupPreset("sp4z", Z, "Sp", 2, gens, 2, description="Sp4(Z), standard generators")


def picard() -> GroupPreset:
    """Generators of an arithmetic subgroup of SU(2,1; Z[i]) for Q = |z1|^2 + |z2|^2 - |z0|^2.

    Coordinates are ordered (z1, z2, z0).  The set contains diagonal units, the
    coordinate swap, a Heisenberg-type parabolic and a real loxodromic element
    with real fixed points.
    """
    R = Ring("Zi")
    i, mi = [0, 1], [0, -1]
    mats = [
        [[i, 0, 0], [0, mi, 0], [0, 0, 1]],
        [[i, 0, 0], [0, 1, 0], [0, 0, mi]],
        [[0, 1, 0], [1, 0, 0], [0, 0, -1]],
        [[[1, 1], 0, 1], [0, 1, 0], [1, 0, [1, -1]]],
        [[-1, -2, -2], [-2, -1, -2], [-2, -2, -3]],
    ]
    gens = [GroupElement.from_entries(R, "SU", 2, m) for m in mats]
    return GroupPreset("picard", R, "SU", 2, gens, 1,
                       description="subgroup of SU(2,1; Z[i]) generated by units, swap, parabolic, loxodromic")


PICARD_LOXODROMIC = [[-1, -2, -2], [-2, -1, -2], [-2, -2, -3]]

BUILTIN = {
    "trivial": trivial,
    "sl2z": sl2z,
    "hilbert2": hilbert_sqrt2,
    "sp4z": sp4z,
    "picard": picard,
}


def load_preset(name_or_json: str) -> GroupPreset:
    """A built-in preset name, a path to a JSON file, or an inline JSON document."""
    key = name_or_json.strip()
    if key in BUILTIN:
        return BUILTIN[key]()
    if key.startswith("{"):
        return GroupPreset.from_json(key)
    path = Path(key)
    if path.exists():
        return GroupPreset.from_json(path.read_text())
    raise PresetError(f"unknown group preset {name_or_json!r}")


def element(preset: GroupPreset, rows) -> GroupElement:
    g = GroupElement.from_entries(preset.ring, preset.group, preset.n, rows)
    g.check()
    return g
