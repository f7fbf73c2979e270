"""Exact rational linear algebra: sparse matrices, ranks, kernels, cochain complexes.

Everything here is exact; there is no floating point. Ranks of large sparse
matrices are computed block by block (connected components of the nonzero
pattern) through the elimination kernels in :mod:`gnc.kernels`. Kernels and
cohomology bases use reduced row echelon form over :class:`fractions.Fraction`
with a fixed pivot rule: columns left to right, and within a column the
lowest-index row that has not been used yet.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Mapping, Sequence

from . import kernels

ZERO = Fraction(0)
ONE = Fraction(1)


class LinalgError(ValueError):
    pass


class ChainMapError(LinalgError):
    """A proposed chain map does not commute with the differentials."""

    def __init__(self, degree: int):
        super().__init__(f"chain map does not commute with the differential at degree {degree}")
        self.degree = degree


class RatMatrix:
    """Sparse matrix with exact rational entries; absent entries are zero."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise LinalgError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self._entries: dict[tuple[int, int], Fraction] = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise LinalgError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            value = Fraction(value)
            if value:
                self._entries[r, c] = value

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[object]], cols: int | None = None) -> "RatMatrix":
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        entries = {}
        for r, row in enumerate(data):
            if len(row) != ncols:
                raise LinalgError("ragged rows")
            for c, value in enumerate(row):
                if value:
                    entries[r, c] = value
        return cls(len(data), ncols, entries)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]], rows: int) -> "RatMatrix":
        entries = {}
        for c, col in enumerate(columns):
            for r, value in enumerate(col):
                if value:
                    entries[r, c] = value
        return cls(rows, len(columns), entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self._entries.get(key, ZERO)

    def items(self):
        return self._entries.items()

    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def dense(self) -> list[list[Fraction]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), value in self._entries.items():
            out[r][c] = value
        return out

    def column(self, c: int) -> list[Fraction]:
        col = [ZERO] * self.rows
        for (r, cc), value in self._entries.items():
            if cc == c:
                col[r] = value
        return col

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()})

    def scale(self, factor) -> "RatMatrix":
        factor = Fraction(factor)
        return RatMatrix(self.rows, self.cols, {k: v * factor for k, v in self._entries.items()})

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} + {other.shape}")
        out = dict(self._entries)
        for key, value in other._entries.items():
            out[key] = out.get(key, ZERO) + value
        return RatMatrix(self.rows, self.cols, out)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise LinalgError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), value in other._entries.items():
            by_row.setdefault(r, []).append((c, value))
        out: dict[tuple[int, int], Fraction] = {}
        for (r, k), value in self._entries.items():
            for c, w in by_row.get(k, ()):
                out[r, c] = out.get((r, c), ZERO) + value * w
        return RatMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence[Fraction]) -> list[Fraction]:
        out = [ZERO] * self.rows
        for (r, c), value in self._entries.items():
            if vec[c]:
                out[r] += value * vec[c]
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"


# ---------------------------------------------------------------- elimination


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    a = [list(row) for row in rows]
    used = [False] * len(a)
    pivot_rows: list[int] = []
    pivots: list[int] = []
    for c in range(ncols):
        piv = next((r for r in range(len(a)) if not used[r] and a[r][c]), -1)
        if piv < 0:
            continue
        used[piv] = True
        prow = a[piv]
        inv = 1 / prow[c]
        for k in range(ncols):
            if prow[k]:
                prow[k] *= inv
        for r in range(len(a)):
            if r == piv or not a[r][c]:
                continue
            row = a[r]
            f = row[c]
            for k in range(ncols):
                if prow[k]:
                    row[k] -= f * prow[k]
        pivot_rows.append(piv)
        pivots.append(c)
    return [a[r] for r in pivot_rows], pivots


def rank_and_kernel(m: RatMatrix) -> tuple[int, list[tuple[Fraction, ...]]]:
    """Rank and a kernel basis of ``m``.

    The kernel basis has one vector per non-pivot column ``f``: it is ``1`` at
    ``f``, zero at the other free columns, and minus the reduced entries at the
    pivot columns. Listed in increasing order of ``f``.
    """
    reduced, pivots = _rref(m.dense(), m.cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        vec = [ZERO] * m.cols
        vec[f] = ONE
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    return len(pivots), basis


def _blocks(m: RatMatrix) -> list[tuple[list[int], list[int], list]]:
    """Connected components of the bipartite row/column graph of nonzeros.

    Each component is ``(rows, cols, entries)`` with rows and cols sorted.
    """
    parent: dict[object, object] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (r, c) in m._entries:
        a, b = ("r", r), ("c", c)
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[object, tuple[list[int], list[int], list]] = {}
    for node in parent:
        rows, cols, _ = groups.setdefault(find(node), ([], [], []))
        (rows if node[0] == "r" else cols).append(node[1])
    for (r, c), value in m._entries.items():
        groups[find(("r", r))][2].append((r, c, value))
    return [(sorted(rs), sorted(cs), es) for rs, cs, es in groups.values()]


def rank(m: RatMatrix) -> int:
    """Exact rank via block decomposition and the elimination kernels.

    A block whose rank modulo a large prime is already maximal is certified
    without exact elimination, since reduction mod p can only lower the rank.
    """
    total = 0
    for rows, cols, entries in _blocks(m):
        if len(rows) == 1 or len(cols) == 1:
            total += 1
            continue
        row_index = {r: i for i, r in enumerate(rows)}
        col_index = {c: j for j, c in enumerate(cols)}
        by_row: dict[int, list] = {}
        for r, c, value in entries:
            by_row.setdefault(row_index[r], []).append((col_index[c], value))
        ints = [[0] * len(cols) for _ in rows]
        for i, row_entries in by_row.items():
            den = lcm(*(v.denominator for _, v in row_entries))
            target = ints[i]
            for j, v in row_entries:
                target[j] = v.numerator * (den // v.denominator)
        full = min(len(rows), len(cols))
        if kernels.rank_mod_p(ints, len(cols)) == full:
            total += full
        else:
            total += kernels.rank_exact(ints, len(cols))
    return total


def rank_reference(m: RatMatrix) -> int:
    """Rank by dense rational elimination on the transpose; an independent route to :func:`rank`."""
    return len(_rref(m.transpose().dense(), m.rows)[1])


def solve_in_span(columns: Sequence[Sequence[Fraction]], targets: Sequence[Sequence[Fraction]], n: int):
    """Coordinates of each target in terms of linearly independent ``columns``.

    Returns ``None`` for a target outside their span.
    """
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [t[i] for t in targets] for i in range(n)]
    reduced, pivots = _rref(aug, k + len(targets))
    if pivots[:k] != list(range(k)):
        raise LinalgError("columns are not linearly independent")
    out = []
    bad = {p - k for p in pivots if p >= k}
    for t in range(len(targets)):
        if t in bad:
            out.append(None)
            continue
        out.append([reduced[j][k + t] for j in range(k)])
    return out


def independent_columns(vectors: Sequence[Sequence[Fraction]], n: int) -> list[int]:
    """Indices of the echelon-selected independent vectors, scanning left to right."""
    if not vectors:
        return []
    rows = [[v[i] for v in vectors] for i in range(n)]
    return _rref(rows, len(vectors))[1]


# ---------------------------------------------------------------- complexes


@dataclass
class CochainComplex:
    """Finite cochain complex ``C^start -> ... -> C^(start+len-1)``.

    ``differentials[k]`` maps ``spaces[k]`` to ``spaces[k + 1]``.
    """

    start: int
    spaces: list[list[Hashable]]
    differentials: list[RatMatrix]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.differentials) != max(len(self.spaces) - 1, 0):
            raise LinalgError("need one differential between each pair of adjacent spaces")
        for k, d in enumerate(self.differentials):
            if d.shape != (len(self.spaces[k + 1]), len(self.spaces[k])):
                raise LinalgError(f"differential {k + self.start} has shape {d.shape}")

    @property
    def degrees(self) -> range:
        return range(self.start, self.start + len(self.spaces))

    def dim(self, q: int) -> int:
        if q not in self.degrees:
            return 0
        return len(self.spaces[q - self.start])

    def differential(self, q: int) -> RatMatrix:
        """``d_q : C^q -> C^(q+1)``; zero maps at the ends."""
        k = q - self.start
        if 0 <= k < len(self.differentials):
            return self.differentials[k]
        return RatMatrix(self.dim(q + 1), self.dim(q))

    def check(self) -> bool:
        """``d o d == 0`` in every degree."""
        for k in range(len(self.differentials) - 1):
            if not (self.differentials[k + 1] @ self.differentials[k]).is_zero():
                return False
        return True

    def rank(self, q: int) -> int:
        key = ("rank", q)
        if key not in self._cache:
            self._cache[key] = rank(self.differential(q))
        return self._cache[key]

    def euler(self) -> int:
        return sum((-1) ** q * self.dim(q) for q in self.degrees)


def cohomology_dim(c: CochainComplex, q: int) -> int:
    """``dim ker d_q - rank d_(q-1)``."""
    if q not in c.degrees:
        raise LinalgError(f"degree {q} outside {c.degrees.start}..{c.degrees.stop - 1}")
    return c.dim(q) - c.rank(q) - c.rank(q - 1)


def cohomology_dims(c: CochainComplex) -> list[int]:
    return [cohomology_dim(c, q) for q in c.degrees]


@dataclass
class CohomologyBasis:
    """Chosen representatives of ``H^q`` plus what is needed to read off classes."""

    dim_space: int
    boundary_basis: list[tuple[Fraction, ...]]
    representatives: list[tuple[Fraction, ...]]

    def classes(self, cocycles: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
        """Coordinates of each cocycle's class with respect to the representatives."""
        if not self.representatives:
            return [[] for _ in cocycles]
        cols = self.boundary_basis + self.representatives
        sol = solve_in_span(cols, cocycles, self.dim_space)
        nb = len(self.boundary_basis)
        out = []
        for x in sol:
            if x is None:
                raise LinalgError("vector is not a cocycle")
            out.append(x[nb:])
        return out


def cohomology_basis(c: CochainComplex, q: int) -> CohomologyBasis:
    key = ("basis", q)
    if key in c._cache:
        return c._cache[key]
    n = c.dim(q)
    _, cocycles = rank_and_kernel(c.differential(q))
    incoming = c.differential(q - 1)
    images = [tuple(incoming.column(j)) for j in range(incoming.cols)]
    keep = independent_columns(images + cocycles, n)
    boundary = [images[j] for j in keep if j < len(images)]
    reps = [cocycles[j - len(images)] for j in keep if j >= len(images)]
    basis = CohomologyBasis(n, boundary, reps)
    c._cache[key] = basis
    return basis


def _chain_map_at(chain_map, q: int, src: CochainComplex, dst: CochainComplex) -> RatMatrix:
    if isinstance(chain_map, Mapping):
        f = chain_map.get(q)
    else:
        k = q - src.start
        f = chain_map[k] if 0 <= k < len(chain_map) else None
    if f is None:
        return RatMatrix(dst.dim(q), src.dim(q))
    if f.shape != (dst.dim(q), src.dim(q)):
        raise LinalgError(f"chain map at degree {q} has shape {f.shape}")
    return f


def check_chain_map(src: CochainComplex, dst: CochainComplex, chain_map) -> None:
    """Raise :class:`ChainMapError` at the first degree where ``f d != d' f``."""
    lo = min(src.degrees.start, dst.degrees.start)
    hi = max(src.degrees.stop, dst.degrees.stop)
    for q in range(lo, hi):
        left = _chain_map_at(chain_map, q + 1, src, dst) @ src.differential(q)
        right = dst.differential(q) @ _chain_map_at(chain_map, q, src, dst)
        if left != right:
            raise ChainMapError(q)


def induced_cohomology_map(src: CochainComplex, dst: CochainComplex, chain_map, q: int,
                           *, check: bool = True) -> RatMatrix:
    """Matrix of ``H^q(src) -> H^q(dst)`` in the chosen representative bases.

    ``chain_map`` is either a sequence of matrices aligned with ``src.degrees``
    or a mapping from degree to matrix; missing degrees are zero maps.
    """
    if check:
        check_chain_map(src, dst, chain_map)
    hs = cohomology_basis(src, q)
    hd = cohomology_basis(dst, q)
    f = _chain_map_at(chain_map, q, src, dst)
    images = [f.apply(v) for v in hs.representatives]
    coords = hd.classes(images)
    return RatMatrix.from_columns(coords, len(hd.representatives))
