"""Exact discrete groups: elements, presets, word balls, cosets and orbit counts."""
from .cosets import CosetReducer, coset_reduce, default_base_point, same_coset
from .counting import count_lattice, fit_growth, orbit_distances
from .elements import ElementBatch, GroupElement, GroupInvariantError, sign_normalize
from .enumeration import WordBall, enumerate_elements, random_word, word_ball
from .geodesics import ClosedGeodesic, NotLoxodromicError, classify, geodesic_from
from .presets import BUILTIN, GroupPreset, PresetError, element, load_preset
from .rings import Ring, RingScalar

__all__ = [
    "BUILTIN", "ClosedGeodesic", "CosetReducer", "ElementBatch", "GroupElement", "GroupInvariantError",
    "GroupPreset", "NotLoxodromicError", "PresetError", "Ring", "RingScalar", "WordBall", "classify",
    "coset_reduce", "count_lattice", "default_base_point", "element", "enumerate_elements",
    "fit_growth", "geodesic_from", "load_preset", "orbit_distances", "random_word", "same_coset",
    "sign_normalize", "word_ball",
]
