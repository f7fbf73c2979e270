"""Generalized normal crossings local models as facet complexes.

A model lives in affine N-space with coordinates indexed ``0..N-1``. It is the
union of the coordinate subspaces ``A_F`` over a set of pairwise incomparable
facets ``F``, together with a rational boundary supported on the core (the
intersection of all facets). Faces are ``frozenset``s of indices; the empty
face is the origin. Functions that can produce "nothing" (the LCS locus of a
smooth model with boundary below one) return ``None``.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

Face = frozenset

AXIOMS = ("emptiness", "format", "incomparability", "a", "b", "c")


class ValidationError(ValueError):
    """A facet complex or boundary that is not a GNC local model.

    ``axiom`` is one of :data:`AXIOMS`; ``witness`` is a small dict of the
    offending data (0-based indices), replayable with :meth:`replay`.
    """

    def __init__(self, axiom: str, witness: dict, message: str):
        super().__init__(f"axiom {axiom}: {message}")
        self.axiom = axiom
        self.witness = witness

    def replay(self, facets: Iterable[Iterable[int]], boundary: Mapping[int, object] | None = None) -> bool:
        """True when the witness still exhibits the failure on the given data."""
        facets = [frozenset(f) for f in facets]
        w = self.witness
        if self.axiom == "a":
            first, second = (frozenset(x) for x in w["pair"])
            return first in facets and second in facets and not _chain_exists(facets, first, second)
        if self.axiom == "b":
            face, facet = frozenset(w["face"]), frozenset(w["facet"])
            return facet in facets and not _codim_one_face_ok(facets, facet, face)
        if self.axiom == "incomparability":
            small, big = (frozenset(x) for x in w["pair"])
            return small in facets and big in facets and small < big
        if self.axiom == "c":
            sigma = _core(facets)
            i, value = w["index"], Fraction(w["value"])
            return i not in sigma or not 0 <= value <= 1
        return True


@dataclass(frozen=True, eq=False)
class GncModel:
    """A validated GNC local model.

    ``facets`` is sorted canonically (by sorted index tuple). ``boundary`` holds
    only nonzero coefficients. ``labels[i]`` is the caller's original 0-based
    index for internal index ``i`` (differs from ``i`` after unused indices
    were stripped).
    """

    ambient: int
    facets: tuple[Face, ...]
    boundary: Mapping[int, Fraction]
    labels: tuple[int, ...] = ()
    _core: Face = field(init=False, repr=False)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.ambient)))
        object.__setattr__(self, "_core", _core(self.facets))

    @property
    def core(self) -> Face:
        return self._core

    @property
    def reduced_core(self) -> Face:
        return frozenset(i for i in self._core if self.coefficient(i) < 1)

    @property
    def psi(self) -> tuple[Fraction, ...]:
        """Log discrepancy vector: ``1 - b_i`` on the core, zero elsewhere."""
        return tuple(1 - self.coefficient(i) if i in self._core else Fraction(0) for i in range(self.ambient))

    @property
    def facet_size(self) -> int:
        return len(self.facets[0])

    def coefficient(self, i: int) -> Fraction:
        return self.boundary.get(i, Fraction(0))

    def with_boundary(self, boundary: Mapping[int, Fraction]) -> "GncModel":
        return GncModel(self.ambient, self.facets, _clean_boundary(boundary), self.labels)

    def key(self) -> tuple:
        return (
            self.ambient,
            tuple(tuple(sorted(f)) for f in self.facets),
            tuple(sorted(self.boundary.items())),
        )

    def __eq__(self, other):
        if not isinstance(other, GncModel):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        facets = [sorted(f) for f in self.facets]
        bnd = {i: str(b) for i, b in sorted(self.boundary.items())}
        return f"GncModel(N={self.ambient}, facets={facets}, boundary={bnd})"


def facet_sort_key(face: Iterable[int]) -> tuple:
    t = tuple(sorted(face))
    return (len(t), t)


def _canonical(facets: Iterable[Face]) -> tuple[Face, ...]:
    return tuple(sorted(set(facets), key=facet_sort_key))


def _core(facets) -> Face:
    facets = list(facets)
    if not facets:
        return frozenset()
    return frozenset.intersection(*facets)


def _clean_boundary(boundary: Mapping[int, object]) -> dict[int, Fraction]:
    return {i: Fraction(b) for i, b in sorted(boundary.items()) if Fraction(b) != 0}


def _make(ambient, facets, boundary, labels=()) -> GncModel:
    return GncModel(ambient, _canonical(frozenset(f) for f in facets), _clean_boundary(boundary), tuple(labels))


# ------------------------------------------------------------------ axioms


def _adjacent(f: Face, g: Face) -> bool:
    return len(f) == len(g) and len(f & g) == len(f) - 1


def _chain_exists(facets, first: Face, second: Face) -> bool:
    """BFS from ``first`` to ``second`` through facets containing their meet."""
    meet = first & second
    allowed = [f for f in facets if meet <= f]
    seen = {first}
    queue = deque([first])
    while queue:
        f = queue.popleft()
        if f == second:
            return True
        for g in allowed:
            if g not in seen and _adjacent(f, g):
                seen.add(g)
                queue.append(g)
    return False


def _codim_one_face_ok(facets, facet: Face, face: Face) -> bool:
    return any(facet & other == face for other in facets if other != facet)


def validate(ambient: int, facets: Iterable[Iterable[int]], boundary: Mapping[int, object] | None = None,
             *, strip_unused: bool = True) -> GncModel:
    """Check the GNC local model axioms and return the model.

    Indices are 0-based. Checks run in the order format/emptiness,
    incomparability, a (connectedness in codimension one), b (every
    codimension-one face over the core is a pairwise facet intersection),
    c (boundary on the core with coefficients in [0, 1]); the first failure
    raises :class:`ValidationError`.
    """
    boundary = dict(boundary or {})
    if not isinstance(ambient, int) or ambient < 1:
        raise ValidationError("format", {"ambient": ambient}, "ambient dimension must be a positive integer")
    raw = [list(f) for f in facets]
    if not raw:
        raise ValidationError("emptiness", {}, "no facets")
    for f in raw:
        for i in f:
            if not isinstance(i, int) or not 0 <= i < ambient:
                raise ValidationError("format", {"index": i, "facet": sorted(map(str, f))},
                                      f"index {i!r} outside 0..{ambient - 1}")
    fs = _canonical(frozenset(f) for f in raw)

    for f, g in itertools.permutations(fs, 2):
        if f < g:
            raise ValidationError("incomparability", {"pair": [sorted(f), sorted(g)]},
                                  f"facet {sorted(f)} is contained in {sorted(g)}")

    for f, g in itertools.combinations(fs, 2):
        if not _chain_exists(fs, f, g):
            raise ValidationError("a", {"pair": [sorted(f), sorted(g)]},
                                  f"no codimension-one chain joins {sorted(f)} and {sorted(g)}")
    assert len({len(f) for f in fs}) == 1, "axiom a forces equidimensional facets"

    sigma = _core(fs)
    for f in fs:
        for i in sorted(f - sigma):
            tau = f - {i}
            if not _codim_one_face_ok(fs, f, tau):
                raise ValidationError("b", {"face": sorted(tau), "facet": sorted(f)},
                                      f"{sorted(tau)} is not the intersection of {sorted(f)} with another facet")

    coeffs: dict[int, Fraction] = {}
    for key, value in sorted(boundary.items(), key=lambda kv: str(kv[0])):
        if not isinstance(key, int) or not 0 <= key < ambient:
            raise ValidationError("format", {"index": key}, f"boundary index {key!r} outside 0..{ambient - 1}")
        try:
            b = Fraction(value)
        except (ValueError, TypeError, ZeroDivisionError):
            raise ValidationError("format", {"index": key, "value": str(value)},
                                  f"boundary coefficient {value!r} is not a rational") from None
        if key not in sigma:
            raise ValidationError("c", {"index": key, "value": str(b)}, f"boundary index {key} is not in the core")
        if not 0 <= b <= 1:
            raise ValidationError("c", {"index": key, "value": str(b)}, f"coefficient {b} outside [0, 1]")
        coeffs[key] = b

    used = sorted(set().union(*fs))
    if strip_unused and used and len(used) < ambient:
        renumber = {old: new for new, old in enumerate(used)}
        fs = [frozenset(renumber[i] for i in f) for f in fs]
        coeffs = {renumber[i]: b for i, b in coeffs.items()}
        return _make(len(used), fs, coeffs, used)
    return _make(ambient, fs, coeffs)


# ------------------------------------------------------------------ faces and centers


def is_face(model: GncModel, gamma: Iterable[int]) -> bool:
    gamma = frozenset(gamma)
    return any(gamma <= f for f in model.facets)


def faces(model: GncModel) -> set[Face]:
    """Every face of the fan (all subsets of facets)."""
    out: set[Face] = set()
    for f in model.facets:
        items = sorted(f)
        for r in range(len(items) + 1):
            out.update(frozenset(c) for c in itertools.combinations(items, r))
    return out


def lc_centers(model: GncModel) -> set[Face]:
    """Faces containing the reduced core."""
    base = model.reduced_core
    out: set[Face] = set()
    for f in model.facets:
        free = sorted(f - base)
        for r in range(len(free) + 1):
            out.update(base | frozenset(c) for c in itertools.combinations(free, r))
    return out


def lc_centers_B0_intersections(model: GncModel) -> set[Face]:
    """All intersections of nonempty facet families; defined for zero boundary only."""
    if model.boundary:
        raise ValueError("intersection characterization needs zero boundary")
    out = set(model.facets)
    frontier = set(model.facets)
    while frontier:
        new = {g & f for g in frontier for f in model.facets} - out
        out |= new
        frontier = new
    return out


def _maximal(fs: Iterable[Face]) -> list[Face]:
    fs = set(fs)
    return [f for f in fs if not any(f < g for g in fs)]


def lcs(model: GncModel) -> GncModel | None:
    """LCS locus with boundary ``(B - B^{=1})|_Y``; ``None`` when empty."""
    base = model.reduced_core
    taus = {f - {i} for f in model.facets for i in f - base}
    if not taus:
        return None
    coeffs = {i: model.coefficient(i) for i in base}
    return _make(model.ambient, _maximal(taus), coeffs, model.labels)


def sing(model: GncModel) -> GncModel | None:
    """Singular locus, which is the LCS locus of the model with zero boundary."""
    return lcs(model.with_boundary({}))


def lcs_chain(model: GncModel) -> list[GncModel]:
    chain = [model]
    nxt = lcs(model)
    while nxt is not None:
        chain.append(nxt)
        nxt = lcs(nxt)
    return chain


def normalization_components(model: GncModel) -> list[tuple[Face, dict[int, Fraction]]]:
    """Per facet: coefficient 1 on the conductor ``F \\ core`` and ``b_i`` on the core."""
    out = []
    for f in model.facets:
        coeffs = {i: Fraction(1) for i in f - model.core}
        coeffs.update({i: model.coefficient(i) for i in model.core})
        out.append((f, _clean_boundary(coeffs)))
    return out


def component_model(model: GncModel, facet: Face, coeffs: Mapping[int, Fraction]) -> GncModel:
    return _make(model.ambient, [facet], coeffs, model.labels)


def check_lcs_normalization_compat(model: GncModel) -> bool:
    """Per facet, LCS of the normalized component equals the LCS facets lying in it."""
    y = lcs(model)
    y_facets = set(y.facets) if y is not None else set()
    for f, coeffs in normalization_components(model):
        comp = lcs(component_model(model, f, coeffs))
        left = set(comp.facets) if comp is not None else set()
        right = {t for t in y_facets if t <= f}
        if left != right:
            return False
    return True


# ------------------------------------------------------------------ generators


COEFFICIENTS = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1))


def nc_model(ambient: int, crossing: Iterable[int], boundary: Mapping[int, object] | None = None,
             *, strip_unused: bool = True) -> GncModel:
    """Normal crossings model: union of the hyperplanes ``z_i = 0`` for ``i`` in ``crossing``."""
    crossing = set(crossing)
    facets = [set(range(ambient)) - {i} for i in sorted(crossing)]
    return validate(ambient, facets, boundary, strip_unused=strip_unused)


def cardinality_model(ambient: int, sigma: Iterable[int], size: int,
                      boundary: Mapping[int, object] | None = None, *, strip_unused: bool = True) -> GncModel:
    """All ``size``-subsets of ``[ambient]`` containing ``sigma``."""
    sigma = frozenset(sigma)
    rest = sorted(set(range(ambient)) - sigma)
    facets = [sigma | frozenset(c) for c in itertools.combinations(rest, size - len(sigma))]
    return validate(ambient, facets, boundary, strip_unused=strip_unused)


def _random_boundary(rng: random.Random, sigma: Iterable[int]) -> dict[int, Fraction]:
    return {i: rng.choice(COEFFICIENTS) for i in sorted(sigma)}


def _random_cardinality(rng, ambient, size, facet_count):
    if size >= ambient:
        sigma = frozenset(range(ambient))
        return cardinality_model(ambient, sigma, ambient, _random_boundary(rng, sigma))
    options = [s for s in range(size + 1) if comb(ambient - s, size - s) <= max(facet_count, 1)]
    # Half the time take the smallest feasible core, i.e. the most facets.
    s = options[0] if rng.random() < 0.5 else rng.choice(options)
    sigma = frozenset(rng.sample(range(ambient), s))
    return cardinality_model(ambient, sigma, size, _random_boundary(rng, sigma))


def _random_nc(rng, ambient, facet_count):
    top = min(ambient, max(facet_count, 1))
    k = rng.randint(min(2, top), top)
    crossing = rng.sample(range(ambient), k)
    sigma = set(range(ambient)) - set(crossing)
    return nc_model(ambient, crossing, _random_boundary(rng, sigma))


def _first_b_violation(fs):
    sigma = _core(fs)
    for f in sorted(fs, key=facet_sort_key):
        for i in sorted(f - sigma):
            if not _codim_one_face_ok(fs, f, f - {i}):
                return f, f - {i}
    return None


def _random_general(rng, ambient, size, facet_count, attempts=20):
    limit = 2 * facet_count + 4
    for _ in range(attempts):
        fs = {frozenset(rng.sample(range(ambient), size)) for _ in range(facet_count)}
        while len(fs) <= limit:
            bad = _first_b_violation(fs)
            if bad is None:
                break
            f, tau = bad
            outside = sorted(set(range(ambient)) - f)
            fs.add(tau | {rng.choice(outside)})
        else:
            continue
        try:
            validate(ambient, fs, strip_unused=False)
        except ValidationError:
            continue
        sigma = _core(fs)
        return validate(ambient, fs, _random_boundary(rng, sigma))
    return None


def generate_random_model(seed: int, ambient: int, facet_size: int, facet_count: int) -> GncModel:
    """Deterministic random model.

    The family is picked by ``seed % 3``: 0 is a rejection-sampled complex whose
    axiom b defects are repaired by adding facets (falling back to family 1 when
    sampling keeps failing), 1 is the family of all ``facet_size``-subsets
    containing a random core, 2 is a normal crossings model (its facet size is
    always ``ambient - 1``). Unused indices are stripped.
    """
    if ambient < 1 or not 1 <= facet_size <= ambient or facet_count < 1:
        raise ValueError(f"infeasible parameters ambient={ambient} facet_size={facet_size} facet_count={facet_count}")
    rng = random.Random(seed)
    family = seed % 3
    if family == 2 and ambient >= 2:
        return _random_nc(rng, ambient, facet_count)
    if family == 0 and facet_size < ambient:
        model = _random_general(rng, ambient, facet_size, facet_count)
        if model is not None:
            return model
    return _random_cardinality(rng, ambient, facet_size, facet_count)


def random_corpus(count: int = 200, max_ambient: int = 7) -> list[GncModel]:
    """The seeded test corpus: ``count`` models with ambient dimension 2..max_ambient."""
    models = []
    for seed in range(count):
        rng = random.Random(10_000 + seed)
        ambient = rng.randint(2, max_ambient)
        size = ambient if rng.random() < 0.1 else rng.randint(1, ambient - 1)
        facet_count = rng.randint(2, 8)
        models.append(generate_random_model(seed, ambient, size, facet_count))
    return models
