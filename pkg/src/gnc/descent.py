"""Descent oracle: global sections over strictly increasing facet tuples.

For ``d >= 0`` every ``P_G`` has no higher cohomology of ``O(d)``, so the
cohomology of ``X`` is that of the complex whose degree-``p`` term is the sum
of ``H^0(P_G, O(d))`` over ``F_0 < ... < F_p`` with ``G = F_0 & ... & F_p``
nonempty. Nothing here touches the Cech engine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .complex_core import Face
from .ratlinalg import CochainComplex, RatMatrix, cohomology_dims


class UnsupportedTwist(ValueError):
    pass


def _monomials_on(face: Face, d: int) -> list[tuple[int, ...]]:
    """Degree-``d`` monomials in the variables of ``face``, as sorted index multisets."""
    return list(itertools.combinations_with_replacement(sorted(face), d))


@dataclass
class DescentComplex(CochainComplex):
    tuples: list[list[tuple[int, ...]]] = field(default_factory=list, repr=False)


def descent_complex(pm, d: int) -> DescentComplex:
    if d < 0:
        raise UnsupportedTwist("the descent oracle only covers twists d >= 0")
    facets = list(pm.facets)
    levels: list[list[tuple[tuple[int, ...], Face]]] = []
    frontier = [((i,), f) for i, f in enumerate(facets)]
    while frontier:
        levels.append(frontier)
        # intersections only shrink, so tuples with empty intersection are never extended
        frontier = [(t + (j,), g & facets[j]) for t, g in frontier
                    for j in range(t[-1] + 1, len(facets)) if g & facets[j]]
    if not levels:
        return DescentComplex(0, [[]], [], tuples=[[]])
    spaces, index = [], []
    for level in levels:
        labels = []
        for t, g in level:
            labels.extend((t, m) for m in _monomials_on(g, d))
        spaces.append(labels)
        index.append({lab: k for k, lab in enumerate(labels)})
    diffs = []
    for p in range(len(spaces) - 1):
        entries = {}
        for row, (t, m) in enumerate(spaces[p + 1]):
            for j in range(len(t)):
                col = index[p].get((t[:j] + t[j + 1:], m))
                if col is not None:
                    entries[row, col] = -1 if j % 2 else 1
        diffs.append(RatMatrix(len(spaces[p + 1]), len(spaces[p]), entries))
    return DescentComplex(0, spaces, diffs, tuples=[[t for t, _ in lvl] for lvl in levels])


def descent_cohomology(pm, d: int) -> tuple[int, ...]:
    """``h^q`` for ``q = 0..dim`` computed from the descent complex."""
    dims = cohomology_dims(descent_complex(pm, d))
    width = pm.dim + 1
    if any(dims[width:]):
        raise AssertionError("descent complex has cohomology above the dimension")
    return tuple(dims[:width]) + (0,) * max(0, width - len(dims))
