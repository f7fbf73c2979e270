"""Hilbert functions of unions of coordinate subspaces and the ideal sequence check.

A union ``W`` of coordinate subspaces ``A_g`` has coordinate ring spanned by
the monomials whose support lies in some ``g``. Exactness of

    0 -> I(Z u Y) -> I(Z) -> I(Z n Y on Y) -> 0

in degree ``d`` is then the counting identity
``h_Z + h_Y = h_{Z u Y} + h_{Z n Y}``.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterable

from .complex_core import Face, GncModel, _maximal, component_model, lc_centers, lcs, normalization_components

CenterUnion = frozenset  # of Face


def _union(faces: Iterable[Iterable[int]]) -> CenterUnion:
    return frozenset(frozenset(g) for g in faces)


def hilbert_function(faces: Iterable[Iterable[int]], d: int) -> int:
    """Number of degree-``d`` monomials supported inside some member face."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    members = _maximal(_union(faces))
    if not members:
        return 0
    if d == 0:
        return 1
    supports: set[Face] = set()
    for g in members:
        items = sorted(g)
        for r in range(1, min(len(items), d) + 1):
            supports.update(frozenset(c) for c in itertools.combinations(items, r))
    return sum(comb(d - 1, len(s) - 1) for s in supports)


def hilbert_function_by_enumeration(faces: Iterable[Iterable[int]], d: int, ambient: int) -> int:
    """Direct monomial enumeration; slow reference for :func:`hilbert_function`."""
    members = list(_union(faces))
    count = 0
    for combo in itertools.combinations_with_replacement(range(ambient), d):
        support = frozenset(combo)
        if any(support <= g for g in members):
            count += 1
    return count


def _require_lcs(model: GncModel) -> GncModel:
    y = lcs(model)
    if y is None:
        raise ValueError("the LCS locus is empty")
    return y


def intersect_with_lcs(model: GncModel, z: Iterable[Iterable[int]]) -> CenterUnion:
    """``Z n Y`` as the maximal faces ``g & t`` over ``g`` in ``Z`` and facets ``t`` of ``Y = lcs(model)``."""
    y = _require_lcs(model)
    out = _union(_maximal(g & t for g in _union(z) for t in y.facets))
    centers = lc_centers(y)
    bad = [g for g in out if g not in centers]
    if bad:
        raise AssertionError(f"intersection faces {sorted(map(sorted, bad))} are not lc centers of the LCS locus")
    return out


def normalization_preimage(model: GncModel, z: Iterable[Iterable[int]]) -> dict[Face, CenterUnion]:
    """Per facet ``F``, the maximal faces ``g & F`` over ``g`` in ``Z``."""
    z = _union(z)
    out = {}
    for f, coeffs in normalization_components(model):
        pieces = _union(_maximal(g & f for g in z))
        centers = lc_centers(component_model(model, f, coeffs))
        if not pieces <= centers:
            raise AssertionError(f"preimage on facet {sorted(f)} is not a union of lc centers")
        out[f] = pieces
    return out


def check_ideal_sequence(model: GncModel, z: Iterable[Iterable[int]], d_max: int) -> bool:
    y = _require_lcs(model)
    z = _union(z)
    zy = intersect_with_lcs(model, z)
    for d in range(d_max + 1):
        lhs = hilbert_function(z, d) + hilbert_function(y.facets, d)
        rhs = hilbert_function(z | set(y.facets), d) + hilbert_function(zy, d)
        if lhs != rhs:
            return False
    return True


class IdealSequenceChecker:
    """Batch form of :func:`check_ideal_sequence` for many unions on one model.

    Faces are encoded as bits of a ``2**N``-bit integer (one bit per subset of
    ``[N]``), so a down-closed face set is a bitset and unions are ORs. ``Z n Y``
    is still computed through :func:`intersect_with_lcs`, once per center.
    """

    def __init__(self, model: GncModel):
        self.model = model
        self.ambient = model.ambient
        self.lcs = _require_lcs(model)
        self.centers = sorted(lc_centers(model), key=lambda g: (len(g), sorted(g)))
        self._size_masks = [0] * (self.ambient + 1)
        for s in range(1 << self.ambient):
            self._size_masks[bin(s).count("1")] |= 1 << s
        self._down = {g: self._down_set(g) for g in self.centers}
        self._meet = {g: self._down_set_of(intersect_with_lcs(model, [g])) for g in self.centers}
        self._y = self._down_set_of(self.lcs.facets)

    def _down_set(self, g: Face) -> int:
        m = sum(1 << i for i in g)
        bits, s = 0, m
        while True:
            bits |= 1 << s
            if s == 0:
                return bits
            s = (s - 1) & m

    def _down_set_of(self, faces) -> int:
        bits = 0
        for g in faces:
            bits |= self._down_set(g)
        return bits

    def _hilbert(self, bits: int, d: int) -> int:
        if not bits:
            return 0
        if d == 0:
            return 1
        return sum(comb(d - 1, k - 1) * (bits & self._size_masks[k]).bit_count()
                   for k in range(1, min(d, self.ambient) + 1))

    def check(self, z: Iterable[Face], d_max: int) -> bool:
        z = list(z)
        dz = 0
        for g in z:
            dz |= self._down[g] if g in self._down else self._down_set(g)
        dzy = 0
        for g in z:
            dzy |= self._meet[g] if g in self._meet else self._down_set_of(intersect_with_lcs(self.model, [g]))
        union = dz | self._y
        if bool(dz) + bool(self._y) != bool(union) + bool(dzy):
            return False
        # per support size k the four counts enter every degree d with the same weight binom(d-1, k-1)
        diff = [0] * (self.ambient + 1)
        for k in range(1, min(d_max, self.ambient) + 1):
            sk = self._size_masks[k]
            diff[k] = ((dz & sk).bit_count() + (self._y & sk).bit_count()
                       - (union & sk).bit_count() - (dzy & sk).bit_count())
        return all(sum(comb(d - 1, k - 1) * diff[k] for k in range(1, min(d, self.ambient) + 1)) == 0
                   for d in range(1, d_max + 1))

    def unions(self, max_members: int):
        for r in range(1, max_members + 1):
            yield from itertools.combinations(self.centers, r)

    def failures(self, max_members: int, d_max: int) -> list[list[list[int]]]:
        return [[sorted(g) for g in z] for z in self.unions(max_members) if not self.check(z, d_max)]
