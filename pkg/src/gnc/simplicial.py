"""Levels of the simplicial resolution induced by the normalization.

Level ``n`` has one component per (n+1)-tuple of facets: the affine space on
the intersection ``G`` of the tuple, with coefficient 1 on ``G \\ core`` and
``b_i`` on the core. A map ``[n] -> [m]`` of finite ordinals acts on level-m
tuples contravariantly, ``(F_0..F_m) -> (F_theta(0)..F_theta(n))``.
"""

from __future__ import annotations

import functools
import itertools
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .complex_core import Face, GncModel, lc_centers

ALL_TUPLES = "all_tuples"
STRICT_ORDERED = "strict_ordered"


@dataclass(frozen=True)
class LevelComponent:
    tuple: tuple[Face, ...]
    intersection: Face
    induced_boundary: tuple[tuple[int, Fraction], ...]

    def coefficient(self, i: int) -> Fraction:
        return dict(self.induced_boundary).get(i, Fraction(0))


def induced_boundary(model: GncModel, g: Face) -> tuple[tuple[int, Fraction], ...]:
    coeffs = {i: Fraction(1) for i in g - model.core}
    coeffs.update({i: model.coefficient(i) for i in model.core})
    return tuple((i, b) for i, b in sorted(coeffs.items()) if b)


def component(model: GncModel, facets: Sequence[Face]) -> LevelComponent:
    g = frozenset.intersection(*facets)
    return LevelComponent(tuple(facets), g, induced_boundary(model, g))


def level_components(model: GncModel, n: int, mode: str = ALL_TUPLES) -> list[LevelComponent]:
    if n < 0:
        raise ValueError("level must be nonnegative")
    if mode == ALL_TUPLES:
        tuples = itertools.product(model.facets, repeat=n + 1)
    elif mode == STRICT_ORDERED:
        tuples = itertools.combinations(model.facets, n + 1)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return [component(model, t) for t in tuples]


# ------------------------------------------------------------------ structure maps


def face_map(n: int, i: int) -> tuple[int, ...]:
    """``delta_i``: level ``n`` to level ``n - 1``, dropping entry ``i``."""
    return tuple(j for j in range(n + 1) if j != i)


def degeneracy_map(n: int, i: int) -> tuple[int, ...]:
    """``s_i``: level ``n`` to level ``n + 1``, repeating entry ``i``."""
    return tuple(range(i + 1)) + tuple(range(i, n + 1))


def apply_simplicial_map(t: Sequence, positions: Sequence[int]) -> tuple:
    """Pull back tuple ``t`` along the order-preserving map given by ``positions``."""
    if any(b < a for a, b in zip(positions, positions[1:])):
        raise ValueError(f"{tuple(positions)} is not order preserving")
    for j in positions:
        if not 0 <= j < len(t):
            raise IndexError(f"map value {j} outside a tuple of length {len(t)}")
    return tuple(t[j] for j in positions)


def compose(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """Positions of "apply ``inner``, then ``outer``" on tuples."""
    return tuple(inner[j] for j in outer)


def _identities(n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs of equal composites acting on level-``n`` tuples."""
    d, s = face_map, degeneracy_map
    pairs = []
    # d_i d_j = d_{j-1} d_i, i < j
    for j in range(n + 1):
        for i in range(j):
            if n >= 1:
                pairs.append((compose(d(n - 1, i), d(n, j)), compose(d(n - 1, j - 1), d(n, i))))
    # relations on s_j : n -> n+1 followed by a face map back to n
    for j in range(n + 1):
        ident = tuple(range(n + 1))
        pairs.append((compose(d(n + 1, j), s(n, j)), ident))
        pairs.append((compose(d(n + 1, j + 1), s(n, j)), ident))
        for i in range(n + 2):
            if i < j:
                pairs.append((compose(d(n + 1, i), s(n, j)), compose(s(n - 1, j - 1), d(n, i))))
            elif i > j + 1:
                pairs.append((compose(d(n + 1, i), s(n, j)), compose(s(n - 1, j), d(n, i - 1))))
    # s_i s_j = s_{j+1} s_i, i <= j
    for j in range(n + 1):
        for i in range(j + 1):
            pairs.append((compose(s(n + 1, i), s(n, j)), compose(s(n + 1, j + 1), s(n, i))))
    return pairs


def check_simplicial_identities(model: GncModel, n_max: int) -> bool:
    """Face/degeneracy identities up to level ``n_max``, plus containment of intersections.

    An identity between two index maps holds on every tuple iff it holds on
    the tuple of distinct symbols ``(0, ..., n)``, so that tuple is the test
    case. Containment is checked on every tuple of facets.
    """
    masks = [sum(1 << i for i in f) for f in model.facets]
    for n in range(n_max + 1):
        universal = tuple(range(n + 1))
        for left, right in _identities(n):
            if apply_simplicial_map(universal, left) != apply_simplicial_map(universal, right):
                return False
        maps = [face_map(n, i) for i in range(n + 1) if n >= 1] + [degeneracy_map(n, i) for i in range(n + 1)]
        for t in itertools.product(masks, repeat=n + 1):
            g = functools.reduce(operator.and_, t)
            for positions in maps:
                if g & ~functools.reduce(operator.and_, (t[j] for j in positions)):
                    return False
    return True


# ------------------------------------------------------------------ degrees and centers


def log_canonical_degree(model: GncModel) -> Fraction:
    """Degree of ``K + B`` on the projective realization: ``-sum (1 - b_i)`` over the core."""
    return -sum((1 - model.coefficient(i) for i in model.core), Fraction(0))


def component_degree(model: GncModel, comp: LevelComponent) -> Fraction:
    g = comp.intersection
    return -len(g) + len(g - model.core) + sum((model.coefficient(i) for i in model.core), Fraction(0))


def check_level_adjunction(model: GncModel, n: int) -> bool:
    """Every level-``n`` component over a nonempty face has degree ``ell``.

    The degree depends on a component only through its intersection face, so
    each distinct face of the level is checked once.
    """
    ell = log_canonical_degree(model)
    for g in intersection_faces(model, n)[n]:
        comp = LevelComponent((), g, induced_boundary(model, g))
        if g and component_degree(model, comp) != ell:
            return False
    return True


def intersection_faces(model: GncModel, n_max: int) -> list[set[Face]]:
    """``out[n]``: intersection faces of level-``n`` components (tuples of ``n + 1`` facets)."""
    levels = [set(model.facets)]
    for _ in range(n_max):
        levels.append({g & f for g in levels[-1] for f in model.facets})
    return levels


def check_lc_center_surjectivity(model: GncModel, n_max: int) -> bool:
    """lc centers come from the levels, and levels only produce lc centers.

    (i) every lc center of (X, B) is an lc center of some level-n component,
    and with the boundary erased every lc center of (X, 0) is the intersection
    face of a component at some level ``n <= n_max``; (ii) every face between
    the reduced core and a component's intersection is an lc center.
    """
    centers = lc_centers(model)
    base = model.reduced_core
    levels = intersection_faces(model, n_max)
    realized = set().union(*levels)
    for gamma in centers:
        if not any(base <= gamma <= g for g in realized):
            return False
    if not lc_centers(model.with_boundary({})) <= realized:
        return False
    for g in realized:
        free = sorted(g - base)
        for r in range(len(free) + 1):
            for extra in itertools.combinations(free, r):
                if base <= g and base | frozenset(extra) not in centers:
                    return False
    return True
