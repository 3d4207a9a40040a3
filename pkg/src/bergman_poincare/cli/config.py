"""Run configuration and parsing of points, matrices and weight lists from the command line."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from ..domains.points import DomainPoint
from ..numerics.precision import SUPPORTED_PRECISIONS

DOMAINS = {"h": "halfplane", "halfplane": "halfplane", "siegel": "siegel", "s": "siegel", "ball": "ball",
           "b": "ball", "fock": "fock", "f": "fock"}


class InputError(ValueError):
    """Malformed command-line input (exit code 2)."""


@dataclass
class RunConfig:
    command: str
    group: str | None = None
    p: list = field(default_factory=list)
    points: list = field(default_factory=list)
    depth: int = 0
    tolerance: float = 1e-10
    precision: int = 53
    output: str | None = None
    workers: int = 1
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.depth < 0:
            raise InputError(f"depth must be >= 0, got {self.depth}")
        if not self.tolerance > 0:
            raise InputError(f"tolerance must be > 0, got {self.tolerance}")
        if self.precision not in SUPPORTED_PRECISIONS:
            raise InputError(f"precision must be one of {SUPPORTED_PRECISIONS}, got {self.precision}")

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("workers")  # speed only; never changes the numbers
        return json.loads(json.dumps(d, default=str))


def parse_reals(text: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError as exc:
        raise InputError(f"cannot parse {text!r} as comma-separated reals") from exc


def coordinate_count(kind: str, n: int) -> int:
    return n * (n + 1) // 2 if kind == "siegel" else (1 if kind == "fock" else n)


def parse_point(text: str, kind: str, n: int = 1) -> DomainPoint:
    """Comma-separated (re, im) pairs, one per complex coordinate.

    Coordinates may also be separated by ``;`` for readability.  Missing
    trailing components are zero, so ``0`` is the origin of the ball or of
    the Fock plane.  Siegel points list the upper triangle row by row.
    Invalid points raise :class:`InvalidPointError` naming the violated condition.
    """
    vals = parse_reals(text.replace(";", ","))
    m = coordinate_count(kind, n)
    if len(vals) > 2 * m:
        raise InputError(f"point {text!r} has {len(vals)} reals; {kind}({n}) takes at most {2 * m}")
    vals = vals + [0.0] * (2 * m - len(vals))
    zs = [complex(vals[2 * j], vals[2 * j + 1]) for j in range(m)]
    if kind == "halfplane":
        return DomainPoint.halfplane(*zs)
    if kind == "ball":
        return DomainPoint.ball(*zs)
    if kind == "fock":
        return DomainPoint.fock(zs[0])
    Z = np.zeros((n, n), dtype=complex)
    Z[np.triu_indices(n)] = zs
    Z = Z + np.triu(Z, 1).T
    return DomainPoint.siegel(Z)


def parse_matrix(text: str, size: int, components: int = 1) -> list:
    """Row-major integer entries; with ``components == 2`` each entry may also be an (x, y) pair."""
    try:
        vals = [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError as exc:
        raise InputError(f"matrix entries must be integers: {text!r}") from exc
    if len(vals) == size * size:
        flat = vals
    elif components == 2 and len(vals) == 2 * size * size:
        flat = [[vals[2 * k], vals[2 * k + 1]] for k in range(size * size)]
    else:
        raise InputError(f"expected {size * size} entries for a {size}x{size} matrix, got {len(vals)}")
    return [flat[r * size:(r + 1) * size] for r in range(size)]


def parse_weights(text: str) -> list[int]:
    """``6``, ``4,6,8`` or an inclusive range ``4:12`` (optionally ``4:12:2``)."""
    try:
        if ":" in text:
            parts = [int(t) for t in text.split(":")]
            lo, hi = parts[0], parts[1]
            step = parts[2] if len(parts) > 2 else 1
            if step <= 0:
                raise InputError("range step must be positive")
            return list(range(lo, hi + 1, step))
        return [int(t) for t in text.split(",") if t]
    except ValueError as exc:
        raise InputError(f"cannot parse weights {text!r}") from exc


def parse_radii(text: str) -> list[float]:
    """``a:b:step`` (inclusive) or a comma list."""
    if ":" in text:
        vals = parse_reals(text.replace(":", ","))
        if len(vals) != 3 or vals[2] <= 0:
            raise InputError(f"radius grid must be lo:hi:step, got {text!r}")
        lo, hi, st = vals
        k = int(np.floor((hi - lo) / st + 1e-9))
        return [lo + i * st for i in range(k + 1)]
    return parse_reals(text)
