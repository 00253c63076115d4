"""Points and subspaces of PG(K, q) with dense integer ids.

Points are indexed by the lexicographic rank of their canonical coordinates (first nonzero
entry equal to 1). Subspaces are keyed by their RREF basis and enumerated pivot set by pivot
set, so the same (K, q, r) always yields the same ids. The incidence structure of a family,
``SubspaceFamily.point_ids`` and its transpose ``through``, is what the multiset, search and
verification code iterate over.
"""

import itertools
import logging
import threading
import time
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import conf
from .exceptions import DimensionMismatch, ProjectionUndefined, SubspaceCapExceeded
from .gf_linalg import (
    as_matrix,
    in_span,
    normalize_projective,
    normalize_rows,
    null_space,
    prime_field,
    rank,
    rref,
    solve_left,
)

logger = logging.getLogger(__name__)

# chunk size (in subspaces) when materialising incidence
_CHUNK = 1 << 15


def gaussian_v(r: int, q: int) -> int:
    """(q^r - 1)/(q - 1): the number of points of PG(r-1, q)."""
    if r < 0:
        raise ValueError(f"gaussian_v needs r >= 0, got {r}")
    return (q**r - 1) // (q - 1)


def gaussian_binomial(n: int, m: int, q: int) -> int:
    """Number of m-dimensional vector subspaces of F_q^n."""
    if m < 0 or m > n:
        return 0
    num = den = 1
    for i in range(m):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def canonical_vectors(k: int, q: int) -> np.ndarray:
    """All nonzero vectors of F_q^k whose first nonzero entry is 1, in lexicographic order."""
    every = np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int64)
    nonzero = every != 0
    has_support = nonzero.any(axis=1)
    lead = every[np.arange(len(every)), nonzero.argmax(axis=1)]
    return every[has_support & (lead == 1)]


def iter_rref_bases(dim: int, k: int, q: int):
    """Yield arrays of shape (batch, dim, k) holding every RREF basis of a dim-space of F_q^k.

    Batches follow the pivot sets in ``itertools.combinations`` order; inside a batch the free
    entries run in lexicographic order.
    """
    if dim == 0:
        yield np.zeros((1, 0, k), dtype=np.int64)
        return
    for pivots in itertools.combinations(range(k), dim):
        template = np.zeros((dim, k), dtype=np.int64)
        free_rows, free_cols = [], []
        for row, p in enumerate(pivots):
            template[row, p] = 1
            for col in range(p + 1, k):
                if col not in pivots:
                    free_rows.append(row)
                    free_cols.append(col)
        n_free = len(free_rows)
        fills = np.array(
            list(itertools.product(range(q), repeat=n_free)), dtype=np.int64
        ).reshape(q**n_free, n_free)
        batch = np.repeat(template[None, :, :], len(fills), axis=0)
        if free_rows:
            batch[:, free_rows, free_cols] = fills
        yield batch


# ----------------------------
# Espacio proyectivo
# ----------------------------
@dataclass(frozen=True)
class Point:
    coords: tuple[int, ...]
    index: int

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class ProjectiveSpace:
    K: int
    q: int

    def __post_init__(self):
        prime_field(self.q)
        if self.K < 1:
            raise DimensionMismatch(f"PG(K,q) needs K >= 1, got K={self.K}")

    def __str__(self):
        return f"PG({self.K},{self.q})"

    @property
    def k(self) -> int:
        return self.K + 1

    @property
    def num_points(self) -> int:
        return gaussian_v(self.k, self.q)

    @cached_property
    def points_matrix(self) -> np.ndarray:
        m = canonical_vectors(self.k, self.q)
        m.setflags(write=False)
        return m

    @cached_property
    def _powers(self) -> np.ndarray:
        return self.q ** np.arange(self.k - 1, -1, -1, dtype=np.int64)

    @cached_property
    def _lookup(self) -> np.ndarray:
        table = np.full(self.q**self.k, -1, dtype=np.int64)
        table[self.points_matrix @ self._powers] = np.arange(self.num_points)
        return table

    def indices_of(self, vectors) -> np.ndarray:
        """Point ids of the rows of ``vectors`` (any nonzero representatives)."""
        rows = normalize_rows(vectors, self.q)
        if rows.shape[1] != self.k:
            raise DimensionMismatch(f"vectors of length {rows.shape[1]} in {self}")
        return self._lookup[rows @ self._powers]

    def point_index(self, v) -> int:
        vec = normalize_projective(v, self.q)
        if vec.size != self.k:
            raise DimensionMismatch(f"vector of length {vec.size} in {self}")
        return int(self._lookup[vec @ self._powers])

    def point(self, index: int) -> Point:
        return Point(tuple(int(c) for c in self.points_matrix[index]), int(index))

    def points(self) -> list[Point]:
        return [self.point(i) for i in range(self.num_points)]

    def unit_point(self, i: int) -> int:
        e = np.zeros(self.k, dtype=np.int64)
        e[i] = 1
        return self.point_index(e)

    def subspace_count(self, r: int) -> int:
        return gaussian_binomial(self.k, r + 1, self.q)

    def subspaces(self, r: int) -> "SubspaceFamily":
        return subspace_family(self, r)

    def hyperplanes(self) -> "SubspaceFamily":
        return subspace_family(self, self.K - 1)

    def span(self, rows) -> "Subspace":
        return Subspace.spanned_by(self, rows)


def enumerate_points(space: ProjectiveSpace) -> list[Point]:
    return space.points()


def enumerate_subspaces(space: ProjectiveSpace, r: int) -> list["Subspace"]:
    family = space.subspaces(r)
    return [family.subspace(i) for i in range(len(family))]


# ----------------------------
# Subespacios
# ----------------------------
@dataclass(frozen=True, eq=False)
class Subspace:
    space: ProjectiveSpace
    dim: int
    basis: np.ndarray
    index: int | None = None

    @classmethod
    def spanned_by(cls, space: ProjectiveSpace, rows) -> "Subspace":
        m = as_matrix(rows, space.q)
        if m.shape[1] != space.k:
            raise DimensionMismatch(f"rows of length {m.shape[1]} in {space}")
        reduced, rk = rref(m, space.q)
        if rk == 0:
            raise DimensionMismatch("the zero space is not a projective subspace")
        basis = reduced[:rk]
        basis.setflags(write=False)
        return cls(space, rk - 1, basis)

    @property
    def key(self) -> tuple:
        return (self.space, self.dim, self.basis.tobytes())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        rows = ";".join(" ".join(str(int(c)) for c in row) for row in self.basis)
        return f"<{rows}>"

    @property
    def num_points(self) -> int:
        return gaussian_v(self.dim + 1, self.space.q)

    def family_index(self) -> int:
        if self.index is not None:
            return self.index
        return self.space.subspaces(self.dim).index_of(self.basis)

    def point_indices(self) -> np.ndarray:
        if self.index is not None:
            return self.space.subspaces(self.dim).point_ids[self.index]
        coefficients = canonical_vectors(self.dim + 1, self.space.q)
        return np.sort(self.space.indices_of(coefficients @ self.basis % self.space.q))

    def normals(self) -> np.ndarray:
        """Equations of the subspace: rows n with n . x = 0 exactly for x in the span."""
        return null_space(self.basis, self.space.q)

    def contains(self, point: Point) -> bool:
        return incident(point, self)


def incident(point: Point, s: Subspace) -> bool:
    if len(point.coords) != s.space.k:
        raise DimensionMismatch(f"point {point} does not live in {s.space}")
    return in_span(point.coords, s.basis, s.space.q)


@dataclass(frozen=True, eq=False)
class SubspaceFamily:
    """Every r-subspace of a space, with point incidence in both directions."""

    space: ProjectiveSpace
    r: int
    bases: np.ndarray
    point_ids: np.ndarray
    through: np.ndarray

    def __len__(self):
        return len(self.bases)

    @property
    def width(self) -> int:
        return self.point_ids.shape[1]

    @property
    def degree(self) -> int:
        return self.through.shape[1]

    @cached_property
    def _keys(self) -> dict[bytes, int]:
        return {basis.tobytes(): i for i, basis in enumerate(self.bases)}

    def index_of(self, basis) -> int:
        reduced, rk = rref(basis, self.space.q)
        if rk != self.r + 1:
            raise DimensionMismatch(f"basis of rank {rk} for a {self.r}-subspace")
        return self._keys[np.ascontiguousarray(reduced[:rk]).tobytes()]

    def subspace(self, i: int) -> Subspace:
        return Subspace(self.space, self.r, self.bases[i], int(i))

    def __iter__(self):
        return (self.subspace(i) for i in range(len(self)))


_FAMILIES: dict[tuple[int, int, int], SubspaceFamily] = {}
_FAMILY_LOCKS: dict[tuple[int, int, int], threading.Lock] = {}
_FAMILIES_LOCK = threading.Lock()


def subspace_family(space: ProjectiveSpace, r: int) -> SubspaceFamily:
    if not 0 <= r <= space.K:
        raise DimensionMismatch(f"subspace dimension {r} outside 0..{space.K}")
    count = space.subspace_count(r)
    cap = conf.subspace_cap()
    if count > cap:
        raise SubspaceCapExceeded(count, cap, f"{r}-subspaces of {space}")
    key = (space.K, space.q, r)
    with _FAMILIES_LOCK:
        lock = _FAMILY_LOCKS.setdefault(key, threading.Lock())
    # one builder per family, other families can be built concurrently
    with lock:
        family = _FAMILIES.get(key)
        if family is None:
            family = _build_family(space, r)
            _FAMILIES[key] = family
    return family


def _build_family(space: ProjectiveSpace, r: int) -> SubspaceFamily:
    started = time.perf_counter()
    q = space.q
    bases = np.concatenate(list(iter_rref_bases(r + 1, space.k, q)))
    coefficients = canonical_vectors(r + 1, q)
    point_ids = np.empty((len(bases), len(coefficients)), dtype=np.int32)
    for lo in range(0, len(bases), _CHUNK):
        chunk = bases[lo : lo + _CHUNK]
        vectors = np.einsum("pc,nck->npk", coefficients, chunk) % q
        # products of canonical coefficients with an RREF basis are already canonical
        point_ids[lo : lo + len(chunk)] = space._lookup[vectors @ space._powers]
    point_ids.sort(axis=1)
    degree = gaussian_binomial(space.K, r, q)
    order = np.argsort(point_ids.ravel(), kind="stable")
    through = (order // point_ids.shape[1]).astype(np.int32).reshape(space.num_points, degree)
    for array in (bases, point_ids, through):
        array.setflags(write=False)
    logger.debug(
        "built %d %d-subspaces of %s in %.2fs", len(bases), r, space, time.perf_counter() - started
    )
    return SubspaceFamily(space, r, bases, point_ids, through)


def clear_family_cache() -> None:
    with _FAMILIES_LOCK:
        _FAMILIES.clear()


def iter_subspace_equations(space: ProjectiveSpace, r: int):
    """Yield batches of equation systems, one (K-r) x k system per r-subspace.

    The r-subspaces are exactly the solution sets of the RREF bases of the (K-r)-dimensional
    subspaces of the dual space, so no generator-side incidence is involved.
    """
    count = space.subspace_count(r)
    cap = conf.subspace_cap()
    if count > cap:
        raise SubspaceCapExceeded(count, cap, f"{r}-subspaces of {space}")
    yield from iter_rref_bases(space.K - r, space.k, space.q)


# ----------------------------
# Proyeccion
# ----------------------------
@dataclass(frozen=True, eq=False)
class Projection:
    """The projection from a centre ``delta`` onto a complementary ``pi``."""

    delta: Subspace
    pi: Subspace

    def __post_init__(self):
        space = self.delta.space
        if self.pi.space != space:
            raise DimensionMismatch("centre and screen live in different spaces")
        if self.delta.dim + self.pi.dim != space.K - 1:
            raise DimensionMismatch(
                f"dim(centre) + dim(screen) must be {space.K - 1}, "
                f"got {self.delta.dim} + {self.pi.dim}"
            )
        if rank(np.vstack([self.delta.basis, self.pi.basis]), space.q) != space.k:
            raise ProjectionUndefined("centre and screen intersect")

    @property
    def space(self) -> ProjectiveSpace:
        return self.delta.space

    @cached_property
    def screen_space(self) -> ProjectiveSpace:
        return ProjectiveSpace(self.pi.dim, self.space.q)

    @cached_property
    def _screen_parts(self) -> np.ndarray:
        """Screen coordinates of every point of the space (zero rows for the centre)."""
        frame = np.vstack([self.delta.basis, self.pi.basis])
        x = solve_left(frame, self.space.points_matrix, self.space.q)
        return x[:, self.delta.dim + 1 :]

    @cached_property
    def on_centre(self) -> np.ndarray:
        return ~self._screen_parts.any(axis=1)

    @cached_property
    def screen_index(self) -> np.ndarray:
        """Point id in ``screen_space`` of the image of each point, -1 on the centre."""
        ids = np.full(self.space.num_points, -1, dtype=np.int64)
        off = ~self.on_centre
        ids[off] = self.screen_space.indices_of(self._screen_parts[off])
        return ids

    @cached_property
    def image_index(self) -> np.ndarray:
        """Point id in the ambient space of the image of each point, -1 on the centre."""
        ids = np.full(self.space.num_points, -1, dtype=np.int64)
        off = ~self.on_centre
        q = self.space.q
        ids[off] = self.space.indices_of(self._screen_parts[off] @ self.pi.basis % q)
        return ids

    def image(self, p: Point) -> Point:
        if self.on_centre[p.index]:
            raise ProjectionUndefined(f"projection undefined on center: {p} lies in the centre")
        return self.space.point(int(self.image_index[p.index]))


def project_point(delta: Subspace, pi: Subspace, p: Point) -> Point:
    return Projection(delta, pi).image(p)
