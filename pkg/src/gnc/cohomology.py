"""Fine-graded Cech cohomology of ``O(d)`` on projective Stanley-Reisner realizations.

The realization of a model is the union of the coordinate subspaces ``P_F`` of
``P^(N-1)``, covered by the charts ``z_i != 0``. The Cech complex of ``O(d)``
splits by Laurent exponent ``a`` (with ``sum(a) == d``). In degree ``a`` the
cochains of Cech degree ``p`` are spanned by index sets ``S`` with
``|S| = p + 1``, ``neg(a) <= S`` and ``S | pos(a)`` a face; the differential is
the alternating inclusion matrix. That complex depends on ``a`` only through the
pattern ``(neg(a), pos(a))``, which is what gets cached.

Internally faces are bitmasks; the public functions take and return
``frozenset``s or plain tuples.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .complex_core import Face, GncModel, lc_centers
from .ratlinalg import CochainComplex, RatMatrix, cohomology_dims, induced_cohomology_map, rank
from .simplicial import log_canonical_degree


def to_mask(face: Iterable[int]) -> int:
    m = 0
    for i in face:
        m |= 1 << i
    return m


def to_face(mask: int) -> Face:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _indices(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _submasks(mask: int):
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


class ProjectiveModel:
    """Projective realization of a model; facets of size 0 are dropped."""

    def __init__(self, base: GncModel):
        self.base = base
        self.vertex_count = base.ambient
        kept = [f for f in base.facets if f]
        if len(kept) < len(base.facets):
            warnings.warn("dropping the empty facet from the projective realization", stacklevel=2)
        self.facets: tuple[Face, ...] = tuple(kept)
        self.facet_masks = tuple(to_mask(f) for f in kept)
        self.face_masks: frozenset[int] = frozenset(s for m in self.facet_masks for s in _submasks(m))
        self.dim = max((len(f) for f in kept), default=0) - 1
        self._patterns: dict[tuple[int, int], MultidegreeComplex] = {}
        self._induced: dict[tuple, RatMatrix] = {}

    def is_face(self, face) -> bool:
        mask = face if isinstance(face, int) else to_mask(face)
        return mask in self.face_masks

    def faces_by_size(self) -> list[int]:
        return sorted(self.face_masks, key=lambda m: (bin(m).count("1"), _indices(m)))

    def __repr__(self):
        return f"ProjectiveModel({self.base!r})"


@dataclass(frozen=True)
class Multidegree:
    a: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.a)

    @property
    def neg(self) -> Face:
        return frozenset(i for i, x in enumerate(self.a) if x < 0)

    @property
    def pos(self) -> Face:
        return frozenset(i for i, x in enumerate(self.a) if x > 0)

    @property
    def pattern(self) -> tuple[int, int]:
        return to_mask(self.neg), to_mask(self.pos)

    def shift(self, m: Sequence[int]) -> "Multidegree":
        return Multidegree(tuple(x + y for x, y in zip(self.a, m)))


@dataclass
class MultidegreeComplex(CochainComplex):
    negative: Face = frozenset()
    positive: Face = frozenset()
    index: list[dict[int, int]] = field(default_factory=list, repr=False)


def _as_multidegree(a) -> Multidegree:
    return a if isinstance(a, Multidegree) else Multidegree(tuple(a))


def pattern_complex(pm: ProjectiveModel, neg: int, pos: int) -> MultidegreeComplex:
    key = (neg, pos)
    if key in pm._patterns:
        return pm._patterns[key]
    n = pm.vertex_count
    levels: list[list[int]] = [[] for _ in range(n)]
    if neg & pos == 0 and (neg | pos) in pm.face_masks:
        for s in pm.face_masks:
            if s and s & neg == neg and (s | pos) in pm.face_masks:
                levels[bin(s).count("1") - 1].append(s)
    for lvl in levels:
        lvl.sort(key=_indices)
    index = [{s: k for k, s in enumerate(lvl)} for lvl in levels]
    diffs = []
    for p in range(n - 1):
        entries = {}
        for row, s in enumerate(levels[p + 1]):
            for pos_in_s, j in enumerate(_indices(s)):
                col = index[p].get(s ^ (1 << j))
                if col is not None:
                    entries[row, col] = -1 if pos_in_s % 2 else 1
        diffs.append(RatMatrix(len(levels[p + 1]), len(levels[p]), entries))
    spaces = [[tuple(_indices(s)) for s in lvl] for lvl in levels]
    cx = MultidegreeComplex(0, spaces, diffs, negative=to_face(neg), positive=to_face(pos), index=index)
    pm._patterns[key] = cx
    return cx


def multidegree_complex(pm: ProjectiveModel, a) -> MultidegreeComplex:
    return pattern_complex(pm, *_as_multidegree(a).pattern)


def _truncate(dims: Sequence[int], pm: ProjectiveModel) -> tuple[int, ...]:
    if any(dims[pm.dim + 1:]):
        raise AssertionError("cohomology above the dimension of the realization")
    return tuple(dims[: pm.dim + 1])


def pattern_cohomology(pm: ProjectiveModel, neg: int, pos: int) -> tuple[int, ...]:
    cx = pattern_complex(pm, neg, pos)
    if "dims" not in cx._cache:
        cx._cache["dims"] = _truncate(cohomology_dims(cx), pm) if pm.vertex_count else ()
    return cx._cache["dims"]


def multidegree_cohomology(pm: ProjectiveModel, a) -> tuple[int, ...]:
    return pattern_cohomology(pm, *_as_multidegree(a).pattern)


# ------------------------------------------------------------------ closed form


def simplicial_cohomology(simplices: Iterable[Face], reduced: bool) -> dict[int, int]:
    """(Reduced) simplicial cohomology over Q of a complex given by all its faces."""
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for s in simplices:
        if s or reduced:
            by_dim.setdefault(len(s) - 1, []).append(tuple(sorted(s)))
    if not by_dim:
        return {}
    lo, hi = min(by_dim), max(by_dim)
    spaces = [sorted(by_dim.get(k, [])) for k in range(lo, hi + 1)]
    diffs = []
    for k in range(len(spaces) - 1):
        index = {s: j for j, s in enumerate(spaces[k])}
        entries = {}
        for row, t in enumerate(spaces[k + 1]):
            for i in range(len(t)):
                col = index.get(t[:i] + t[i + 1:])
                if col is not None:
                    entries[row, col] = (-1) ** i
        diffs.append(RatMatrix(len(spaces[k + 1]), len(spaces[k]), entries))
    cx = CochainComplex(lo, spaces, diffs)
    return {q: h for q, h in zip(cx.degrees, cohomology_dims(cx))}


def link(pm: ProjectiveModel, g: Face) -> list[Face]:
    gm = to_mask(g)
    return [to_face(s ^ gm) for s in pm.face_masks if s & gm == gm]


def pattern_closed_form(pm: ProjectiveModel, g: Iterable[int], p: Iterable[int]) -> tuple[int, ...]:
    """Hochster-style dimensions for the pattern (negative support g, positive support p)."""
    g, p = frozenset(g), frozenset(p)
    if g & p:
        raise ValueError("negative and positive supports must be disjoint")
    dims = [0] * (pm.dim + 1)
    if p and g:
        return tuple(dims)
    if p:
        if pm.is_face(p) and dims:
            dims[0] = 1
        return tuple(dims)
    if g:
        if not pm.is_face(g):
            return tuple(dims)
        for k, h in simplicial_cohomology(link(pm, g), reduced=True).items():
            if h:
                dims[k + len(g)] += h
        return tuple(dims)
    for k, h in simplicial_cohomology((to_face(s) for s in pm.face_masks), reduced=False).items():
        dims[k] += h
    return tuple(dims)


# ------------------------------------------------------------------ sheaf cohomology


def contributing_multidegrees(pm: ProjectiveModel, d: int):
    """Multidegrees of total ``d`` that can carry cohomology.

    ``d > 0``: ``a >= 0`` with face support; ``d < 0``: ``a <= 0`` with face
    negative support; ``d == 0``: only ``a == 0``.
    """
    n = pm.vertex_count
    if d == 0:
        yield Multidegree((0,) * n)
        return
    sign = 1 if d > 0 else -1
    for s in pm.faces_by_size():
        idx = _indices(s)
        k = len(idx)
        if not 1 <= k <= abs(d):
            continue
        for cuts in itertools.combinations(range(1, abs(d)), k - 1):
            bounds = (0,) + cuts + (abs(d),)
            a = [0] * n
            for i, lo, hi in zip(idx, bounds, bounds[1:]):
                a[i] = sign * (hi - lo)
            yield Multidegree(tuple(a))


def _weighted_patterns(pm: ProjectiveModel, d: int) -> list[tuple[int, int, int]]:
    """(neg, pos, multiplicity) with multiplicity the number of contributing multidegrees."""
    if d == 0:
        return [(0, 0, 1)]
    out = []
    for s in pm.face_masks:
        k = bin(s).count("1")
        if 1 <= k <= abs(d):
            mult = comb(abs(d) - 1, k - 1)
            out.append((s, 0, mult) if d < 0 else (0, s, mult))
    return out


def sheaf_cohomology(pm: ProjectiveModel, d: int) -> tuple[int, ...]:
    """``h^q(X, O(d))`` for ``q = 0..dim``."""
    dims = [0] * (pm.dim + 1)
    for neg, pos, mult in _weighted_patterns(pm, d):
        for q, h in enumerate(pattern_cohomology(pm, neg, pos)):
            dims[q] += mult * h
    return tuple(dims)


def sheaf_cohomology_by_enumeration(pm: ProjectiveModel, d: int) -> tuple[int, ...]:
    """Same as :func:`sheaf_cohomology`, summing multidegree by multidegree."""
    dims = [0] * (pm.dim + 1)
    for a in contributing_multidegrees(pm, d):
        for q, h in enumerate(multidegree_cohomology(pm, a)):
            dims[q] += h
    return tuple(dims)


def random_mixed_multidegree(pm: ProjectiveModel, d: int, rng: random.Random, spread: int = 3) -> Multidegree | None:
    """A multidegree of total ``d`` with both signs present, or None if ``N < 2``."""
    n = pm.vertex_count
    if n < 2:
        return None
    while True:
        a = [rng.randint(-spread, spread) for _ in range(n - 1)]
        a.append(d - sum(a))
        if any(x < 0 for x in a) and any(x > 0 for x in a):
            return Multidegree(tuple(a))


def _chi_projective_space(d: int, k: int) -> Fraction:
    """``binom(d + k - 1, k - 1)`` as a polynomial in ``d``: Euler characteristic of ``O(d)`` on ``P^(k-1)``."""
    num = 1
    for j in range(1, k):
        num *= d + j
    return Fraction(num, factorial(k - 1))


def euler_characteristic(pm: ProjectiveModel, d: int) -> int:
    """Inclusion-exclusion over nonempty facet families, grouped by their intersection."""
    signed: dict[int, int] = {}
    for f in pm.facet_masks:
        update: dict[int, int] = {f: 1}
        for g, c in signed.items():
            update[g & f] = update.get(g & f, 0) - c
        for g, c in update.items():
            signed[g] = signed.get(g, 0) + c
    total = sum((c * _chi_projective_space(d, bin(g).count("1")) for g, c in signed.items() if g), Fraction(0))
    assert total.denominator == 1
    return int(total)


# ------------------------------------------------------------------ multiplication maps


@dataclass(frozen=True)
class InvariantDivisor:
    """The torus-invariant divisor of the monomial ``z^c``."""

    c: tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.c):
            raise ValueError("divisor exponents must be nonnegative")

    @property
    def degree(self) -> int:
        return sum(self.c)

    @property
    def support(self) -> Face:
        return frozenset(i for i, x in enumerate(self.c) if x)

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(self.c, Fraction(1))]


@dataclass(frozen=True)
class GenericForm:
    """A form of degree ``e`` with seeded random coefficients on every monomial supported on a face."""

    degree: int
    seed: int
    coefficients: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def random(cls, pm: ProjectiveModel, degree: int, seed: int, box: int = 10**9) -> "GenericForm":
        if degree < 1:
            raise ValueError("generic forms need degree >= 1")
        rng = random.Random(f"generic-form/{seed}")
        terms = []
        for m in monomials(pm, degree):
            value = 0
            while value == 0:
                value = rng.randint(-box, box)
            terms.append((m, Fraction(value)))
        return cls(degree, seed, tuple(terms))

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(m, c) for m, c in self.coefficients if c]


def monomials(pm: ProjectiveModel, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree ``degree`` whose support is a face."""
    out = []
    for combo in itertools.combinations_with_replacement(range(pm.vertex_count), degree):
        if to_mask(combo) in pm.face_masks:
            m = [0] * pm.vertex_count
            for i in combo:
                m[i] += 1
            out.append(tuple(m))
    return out


def multiplication_chain_map(pm: ProjectiveModel, src: tuple[int, int], dst: tuple[int, int]) -> list[RatMatrix]:
    """Per-degree matrices of multiplication by a monomial between two pattern complexes."""
    a, b = pattern_complex(pm, *src), pattern_complex(pm, *dst)
    maps = []
    for p in range(len(a.spaces)):
        entries = {}
        for s, col in a.index[p].items():
            row = b.index[p].get(s)
            if row is not None:
                entries[row, col] = 1
        maps.append(RatMatrix(b.dim(p), a.dim(p), entries))
    return maps


def induced_block(pm: ProjectiveModel, src: tuple[int, int], dst: tuple[int, int], q: int) -> RatMatrix:
    key = (src, dst, q)
    if key not in pm._induced:
        maps = multiplication_chain_map(pm, src, dst)
        pm._induced[key] = induced_cohomology_map(pattern_complex(pm, *src), pattern_complex(pm, *dst), maps, q)
    return pm._induced[key]


def _multiplier_degree(mult) -> int:
    return mult.degree


def multiplication_verdict(pm: ProjectiveModel, d: int, mult, q_range: Iterable[int] | None = None) -> list[dict]:
    """Injectivity of ``H^q(O(d)) -> H^q(O(d + e))`` under multiplication by ``mult``."""
    e = _multiplier_degree(mult)
    if q_range is None:
        q_range = range(pm.dim + 1)
    terms = mult.terms()
    target_total = sheaf_cohomology(pm, d + e)
    source_total = sheaf_cohomology(pm, d)
    out = []
    for q in q_range:
        sources = []
        for a in contributing_multidegrees(pm, d):
            dims = multidegree_cohomology(pm, a)
            if q < len(dims) and dims[q]:
                sources.append((a, dims[q]))
        col_offset, row_offset = {}, {}
        ncols = 0
        for a, h in sources:
            col_offset[a] = ncols
            ncols += h
        entries: dict[tuple[int, int], Fraction] = {}
        nrows = 0
        targets = set()
        for a, _ in sources:
            for m, coef in terms:
                b = a.shift(m)
                block = induced_block(pm, a.pattern, b.pattern, q)
                if block.rows == 0:
                    continue
                targets.add(b)
                if b not in row_offset:
                    row_offset[b] = nrows
                    nrows += block.rows
                r0, c0 = row_offset[b], col_offset[a]
                for (r, c), v in block.items():
                    key = (r0 + r, c0 + c)
                    entries[key] = entries.get(key, Fraction(0)) + coef * v
        source_dim = ncols
        if q < len(source_total) and source_dim != source_total[q]:
            raise AssertionError("source blocks do not add up to h^q")
        r = rank(RatMatrix(nrows, ncols, entries)) if ncols else 0
        out.append({
            "q": q,
            "source_dim": source_dim,
            "target_dim": target_total[q] if q < len(target_total) else 0,
            "rank": r,
            "injective": r == source_dim,
            "vacuous": source_dim == 0,
            "blocks": len(sources),
            "target_blocks": len(targets),
        })
    return out


def divisor_avoids_lc_centers(pm: ProjectiveModel, mult) -> bool:
    """The multiplier does not vanish identically on any nonempty lc center."""
    centers = [g for g in lc_centers(pm.base) if g]
    if isinstance(mult, InvariantDivisor):
        return all(mult.support <= g for g in centers)
    supports = [frozenset(i for i, x in enumerate(m) if x) for m, c in mult.terms()]
    return all(any(s <= g for s in supports) for g in centers)


def classify_hypotheses(pm: ProjectiveModel, d: int, mult) -> dict[str, bool]:
    ell = log_canonical_degree(pm.base)
    boundary_support = {i for i, b in pm.base.boundary.items() if b > 0}
    ev = d == ell and isinstance(mult, InvariantDivisor) and mult.support <= boundary_support
    tk = d - ell > 0 and divisor_avoids_lc_centers(pm, mult)
    kv = d > ell
    return {"EV": bool(ev), "TK": bool(tk), "KV": bool(kv)}


def check_vanishing(pm: ProjectiveModel, d_range: Iterable[int]) -> dict:
    """``h^q(O(d)) == 0`` for ``q >= 1`` at every integer ``d`` above the log canonical degree."""
    ell = log_canonical_degree(pm.base)
    entries = []
    for d in d_range:
        if not d > ell:
            continue
        dims = sheaf_cohomology(pm, d)
        for q in range(1, len(dims)):
            entries.append({"d": d, "q": q, "dim": dims[q], "pass": dims[q] == 0})
    return {"ell": str(ell), "entries": entries, "passed": all(e["pass"] for e in entries)}
