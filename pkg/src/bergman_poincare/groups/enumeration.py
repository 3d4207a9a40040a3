"""Word-ball enumeration.

Shell ``d`` holds the elements of word length exactly ``d`` in the symmetric
generating set.  Because the generating set is closed under inverses, a
neighbour of shell ``d - 1`` lies in shell ``d - 2``, ``d - 1`` or ``d``, so
deduplication only compares against the two previous shells.  Within a
shell, elements are sorted by their exact coefficient key; this order is
part of the contract (it fixes the reduction order of every series).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .elements import ElementBatch, GroupElement, sign_normalize
from .presets import GroupPreset

DEFAULT_MAX_ELEMENTS = 20_000_000


@dataclass
class WordBall:
    preset: GroupPreset
    depth: int
    projective: bool
    shells: list[np.ndarray]  # each (N_d, r, r, k), lexicographically sorted
    truncated: bool = False

    @property
    def depth_reached(self) -> int:
        return len(self.shells) - 1

    @property
    def count(self) -> int:
        return int(sum(s.shape[0] for s in self.shells))

    def shell_sizes(self) -> list[int]:
        return [int(s.shape[0]) for s in self.shells]

    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.shell_sizes())]).astype(np.int64)

    def batch(self) -> ElementBatch:
        p = self.preset
        return ElementBatch(p.ring, p.group, p.n, np.concatenate(self.shells, axis=0))

    def shell(self, d: int) -> ElementBatch:
        p = self.preset
        return ElementBatch(p.ring, p.group, p.n, self.shells[d])

    def word_lengths(self) -> np.ndarray:
        return np.repeat(np.arange(len(self.shells)), self.shell_sizes())

    def restrict(self, depth: int) -> "WordBall":
        depth = min(depth, self.depth_reached)
        return WordBall(self.preset, depth, self.projective, self.shells[: depth + 1],
                        self.truncated and depth >= self.depth_reached)


def _unique_rows(keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Lexicographically sorted unique rows and the index of a first occurrence."""
    if keys.shape[0] == 0:
        return keys, np.zeros(0, dtype=np.int64)
    order = np.lexsort(keys.T[::-1])
    sk = keys[order]
    change = np.ones(sk.shape[0], dtype=bool)
    change[1:] = np.any(sk[1:] != sk[:-1], axis=1)
    return sk[change], order[change]


def _next_shell(ring, prev2, prev1, gens, projective):
    shape = prev1.shape[1:]
    parts = [ring.matmul(prev1, g.coeffs[None]) for g in gens]
    cand = np.concatenate(parts, axis=0) if parts else np.zeros((0,) + shape, dtype=np.int64)
    if projective:
        cand = sign_normalize(cand)
    width = int(np.prod(shape))
    flat = lambda a: a.reshape(a.shape[0], width)
    known = np.concatenate([flat(prev2), flat(prev1)], axis=0)
    allk = np.concatenate([known, flat(cand)], axis=0)
    uniq, first = _unique_rows(allk)
    new = uniq[first >= known.shape[0]]
    return new.reshape((-1,) + shape)


_CACHE: dict[tuple, WordBall] = {}


def word_ball(preset: GroupPreset, depth: int, projective: bool = False,
              max_elements: int = DEFAULT_MAX_ELEMENTS) -> WordBall:
    """All elements of word length <= ``depth`` (modulo +-1 when ``projective``)."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    key = (preset.to_json(), bool(projective))
    cached = _CACHE.get(key)
    if cached is not None and (cached.depth_reached >= depth or cached.truncated):
        if cached.depth_reached >= depth:
            return cached.restrict(depth)
    ring = preset.ring
    gens = preset.symmetric_generators
    if projective:
        # dedupe generators modulo sign
        seen, g2 = set(), []
        for g in gens:
            k = g.sign_normalized().key()
            if k not in seen:
                seen.add(k)
                g2.append(g)
        gens = g2
    if cached is not None:
        shells = list(cached.shells)
    else:
        ident = preset.identity().coeffs[None]
        shells = [ident]
    truncated = False
    total = sum(s.shape[0] for s in shells)
    while len(shells) <= depth:
        prev2 = shells[-2] if len(shells) >= 2 else np.zeros((0,) + shells[0].shape[1:], dtype=np.int64)
        new = _next_shell(ring, prev2, shells[-1], gens, projective)
        if total + new.shape[0] > max_elements:
            truncated = True
            break
        shells.append(new)
        total += new.shape[0]
        if new.shape[0] == 0:
            # finite group exhausted; remaining shells are empty
            while len(shells) <= depth:
                shells.append(new)
            break
    ball = WordBall(preset, depth, bool(projective), shells, truncated)
    if not truncated:
        _CACHE[key] = ball
    return ball.restrict(depth) if not truncated else ball


def clear_cache() -> None:
    _CACHE.clear()


def enumerate_elements(preset: GroupPreset, depth: int, projective: bool = False,
                       max_elements: int = DEFAULT_MAX_ELEMENTS) -> Iterator[GroupElement]:
    """Stream the word ball: identity first, then by word length, then by key."""
    ball = word_ball(preset, depth, projective, max_elements)
    for shell in ball.shells:
        for row in shell:
            yield GroupElement(preset.ring, preset.group, preset.n, row)


def random_word(preset: GroupPreset, length: int, rng: np.random.Generator) -> GroupElement:
    """Product of ``length`` uniformly chosen symmetric generators."""
    gens = preset.symmetric_generators
    g = preset.identity()
    if not gens:
        return g
    for _ in range(length):
        g = g @ gens[int(rng.integers(len(gens)))]
    return g
