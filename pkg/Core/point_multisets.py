"""Multisets of points in PG(K, q), their subspace multiplicities and the canonical constructions.

A ``Multiset`` is an immutable multiplicity vector indexed by point id. ``w(r)`` and ``u(r)``
are the largest and smallest multiplicity of an r-subspace; a multiset with ``w(r) <= w`` is an
(n, w)-arc with respect to r-subspaces.
"""

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import conf
from .exceptions import (
    DataFormatError,
    DimensionMismatch,
    InfeasiblePlacement,
    SubspaceCapExceeded,
)
from .gf_linalg import rank
from .projective_geometry import (
    Projection,
    ProjectiveSpace,
    Subspace,
    canonical_vectors,
    gaussian_v,
)

logger = logging.getLogger(__name__)

# random subspaces scored per sampled candidate when the family is too large to enumerate
_SAMPLED_SUBSPACES = 32


@dataclass(frozen=True, eq=False)
class Multiset:
    space: ProjectiveSpace
    mult: np.ndarray

    def __post_init__(self):
        mult = np.array(self.mult, dtype=np.int64).ravel()
        if mult.size != self.space.num_points:
            raise DimensionMismatch(
                f"{mult.size} multiplicities for the {self.space.num_points} points of {self.space}"
            )
        if (mult < 0).any():
            raise DimensionMismatch("multiplicities must be non-negative")
        mult.setflags(write=False)
        object.__setattr__(self, "mult", mult)

    # ---- constructors
    @classmethod
    def empty(cls, space: ProjectiveSpace) -> "Multiset":
        return cls(space, np.zeros(space.num_points, dtype=np.int64))

    @classmethod
    def full(cls, space: ProjectiveSpace, copies: int = 1) -> "Multiset":
        return cls(space, np.full(space.num_points, copies, dtype=np.int64))

    @classmethod
    def of_points(cls, space: ProjectiveSpace, points) -> "Multiset":
        """Build from point ids (repeats add up) or from a ``{point id: multiplicity}`` mapping."""
        mult = np.zeros(space.num_points, dtype=np.int64)
        if isinstance(points, dict):
            for index, m in points.items():
                mult[index] += m
        else:
            np.add.at(mult, np.asarray(list(points), dtype=np.int64), 1)
        return cls(space, mult)

    @classmethod
    def characteristic(cls, s: Subspace) -> "Multiset":
        return cls.of_points(s.space, s.point_indices())

    # ---- basic data
    @property
    def n(self) -> int:
        return int(self.mult.sum())

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Multiset):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.mult, other.mult)

    def __add__(self, other: "Multiset") -> "Multiset":
        return msum(self, other)

    def __repr__(self):
        return f"Multiset({self.space}, n={self.n})"

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.mult)

    def max_point_multiplicity(self) -> int:
        return int(self.mult.max()) if self.mult.size else 0

    def spans(self) -> bool:
        support = self.support()
        if support.size == 0:
            return False
        return rank(self.space.points_matrix[support], self.space.q) == self.space.k

    def plus_point(self, index: int, m: int = 1) -> "Multiset":
        mult = self.mult.copy()
        mult[index] += m
        return Multiset(self.space, mult)

    # ---- subspace multiplicities
    def subspace_multiplicity(self, s: Subspace) -> int:
        if s.space != self.space:
            raise DimensionMismatch(f"subspace of {s.space} against a multiset in {self.space}")
        return int(self.mult[s.point_indices()].sum())

    def subspace_sums(self, r: int) -> np.ndarray:
        """Multiplicity of every r-subspace, in family order."""
        family = self.space.subspaces(r)
        return self.mult[family.point_ids].sum(axis=1)

    def w(self, r: int) -> int:
        if r == self.space.K:
            return self.n
        return int(self.subspace_sums(r).max())

    def u(self, r: int) -> int:
        if r == self.space.K:
            return self.n
        return int(self.subspace_sums(r).min())

    def heaviest_subspace(self, r: int) -> Subspace:
        family = self.space.subspaces(r)
        return family.subspace(int(self.subspace_sums(r).argmax()))

    # ---- arc files
    def to_arc_text(self) -> str:
        lines = [f"{self.space.q} {self.space.K} {self.n}"]
        for index in self.support():
            coords = " ".join(str(int(c)) for c in self.space.points_matrix[index])
            lines.append(f"{coords} {int(self.mult[index])}")
        return "\n".join(lines) + "\n"

    def write_arc(self, path) -> None:
        Path(path).write_text(self.to_arc_text(), encoding="ascii")

    @classmethod
    def parse_arc(cls, text: str, source: str = "<arc>") -> "Multiset":
        lines = text.splitlines()
        if not lines or not lines[0].strip():
            raise DataFormatError("empty arc file", source, 1)
        try:
            q, K, n = (int(x) for x in lines[0].split())
        except ValueError as exc:
            raise DataFormatError("header must be 'q K n'", source, 1) from exc
        space = ProjectiveSpace(K, q)
        mult = np.zeros(space.num_points, dtype=np.int64)
        for number, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            try:
                values = [int(x) for x in line.split()]
            except ValueError as exc:
                raise DataFormatError("non-integer entry", source, number) from exc
            if len(values) != space.k + 1 or values[-1] < 0:
                raise DataFormatError(
                    f"expected {space.k} coordinates and a multiplicity", source, number
                )
            mult[space.point_index(values[:-1])] += values[-1]
        ms = cls(space, mult)
        if ms.n != n:
            raise DataFormatError(f"header says n={n} but the points add up to {ms.n}", source, 1)
        return ms

    @classmethod
    def read_arc(cls, path) -> "Multiset":
        path = Path(path)
        return cls.parse_arc(path.read_text(encoding="ascii"), str(path))


@dataclass(frozen=True)
class ArcProfile:
    w: tuple[int, ...]
    u: tuple[int, ...]
    n: int

    def __post_init__(self):
        if len(self.w) != len(self.u):
            raise DimensionMismatch("w and u profiles of different length")
        if self.w and (self.w[-1] != self.n or self.u[-1] != self.n):
            raise DimensionMismatch("the full space must carry the whole multiset")
        if any(a > b for a, b in zip(self.w, self.w[1:])) or any(a > b for a, b in zip(self.u, self.u[1:])):
            raise DimensionMismatch(f"profiles must be non-decreasing, got w={self.w} u={self.u}")

    @property
    def K(self) -> int:
        return len(self.w) - 1


def arc_profile(ms: Multiset, threads: int | None = None) -> ArcProfile:
    K = ms.space.K

    def extremes(r):
        if r == K:
            return ms.n, ms.n
        sums = ms.subspace_sums(r)
        return int(sums.max()), int(sums.min())

    workers = threads or conf.default_threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pairs = list(pool.map(extremes, range(K + 1)))
    else:
        pairs = [extremes(r) for r in range(K + 1)]
    return ArcProfile(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), ms.n)


def subspace_multiplicity(ms: Multiset, s: Subspace) -> int:
    return ms.subspace_multiplicity(s)


def complement(ms: Multiset, s: int) -> Multiset:
    top = ms.max_point_multiplicity()
    if s < top:
        raise DimensionMismatch(f"complement needs s >= {top} (largest point multiplicity), got {s}")
    return Multiset(ms.space, s - ms.mult)


def msum(a: Multiset, b: Multiset) -> Multiset:
    if a.space != b.space:
        raise DimensionMismatch(f"cannot add a multiset in {a.space} to one in {b.space}")
    return Multiset(a.space, a.mult + b.mult)


def induced_projection(ms: Multiset, delta: Subspace, pi: Subspace) -> Multiset:
    """Push ``ms`` from the centre ``delta`` onto the screen ``pi``; the centre's points vanish."""
    if delta.space != ms.space:
        raise DimensionMismatch(f"centre in {delta.space}, multiset in {ms.space}")
    if pi.dim < 1:
        raise DimensionMismatch("the screen must be at least a line")
    projection = Projection(delta, pi)
    off = ~projection.on_centre
    mult = np.zeros(projection.screen_space.num_points, dtype=np.int64)
    np.add.at(mult, projection.screen_index[off], ms.mult[off])
    return Multiset(projection.screen_space, mult)


# ----------------------------
# Solomon-Stiffler
# ----------------------------
PLACEMENTS = ("auto", "chain", "spread")

_TYPE_SHAPE = re.compile(r"\d*\[\d+\](?:[+-]\d*\[\d+\])*")
_TYPE_TERM = re.compile(r"([+-]?)(\d*)\[(\d+)\]")


@dataclass(frozen=True)
class SolomonStifflerType:
    """sigma copies of PG(K,q), minus ``removed[d]`` d-subspaces for each d, plus generic points."""

    K: int
    sigma: int = 1
    removed: tuple[int, ...] = ()
    plus_points: int = 0
    placement: str = "auto"

    def __post_init__(self):
        if self.sigma < 1:
            raise InfeasiblePlacement(f"sigma must be at least 1, got {self.sigma}")
        removed = tuple(self.removed) + (0,) * (self.K - len(self.removed))
        if len(removed) != self.K or any(c < 0 for c in removed):
            raise DimensionMismatch(f"removed counts {self.removed} do not fit dimensions 0..{self.K - 1}")
        object.__setattr__(self, "removed", removed)
        if self.placement not in PLACEMENTS:
            raise InfeasiblePlacement(f"unknown placement {self.placement!r}")

    @property
    def removed_dims(self) -> list[int]:
        """Dimensions of the removed subspaces, largest first."""
        dims = []
        for d in range(self.K - 1, -1, -1):
            dims.extend([d] * self.removed[d])
        return dims

    def cardinality(self, q: int) -> int:
        n = self.sigma * gaussian_v(self.K + 1, q) + self.plus_points
        return n - sum(c * gaussian_v(d + 1, q) for d, c in enumerate(self.removed))

    def with_placement(self, placement: str) -> "SolomonStifflerType":
        return SolomonStifflerType(self.K, self.sigma, self.removed, self.plus_points, placement)

    def __str__(self):
        return format_type(self)


def parse_type(text: str, placement: str = "auto") -> SolomonStifflerType:
    compact = text.replace(" ", "")
    if not _TYPE_SHAPE.fullmatch(compact):
        raise DataFormatError(f"not a construction type: {text!r}")
    terms = _TYPE_TERM.findall(compact)
    _, count, top = terms[0]
    K = int(top)
    sigma = int(count) if count else 1
    removed = [0] * K
    plus = 0
    for sign, count, dim in terms[1:]:
        c = int(count) if count else 1
        d = int(dim)
        if sign == "-":
            if d >= K:
                raise DataFormatError(f"cannot remove a {d}-subspace from PG({K},q) in {text!r}")
            removed[d] += c
        elif d == 0:
            plus += c
        else:
            raise DataFormatError(f"only points can be added, got +[{d}] in {text!r}")
    return SolomonStifflerType(K, sigma, tuple(removed), plus, placement)


def format_type(t: SolomonStifflerType) -> str:
    parts = [f"{t.sigma if t.sigma > 1 else ''}[{t.K}]"]
    for d in range(t.K - 1, -1, -1):
        c = t.removed[d]
        if c:
            parts.append(f"-{c if c > 1 else ''}[{d}]")
    if t.plus_points:
        parts.append(f"+{t.plus_points if t.plus_points > 1 else ''}[0]")
    return "".join(parts)


def solomon_stiffler_w(t: SolomonStifflerType, r: int, q: int) -> int:
    """Closed-form w_r of a type whose removed subspaces meet as generally as possible."""
    value = t.sigma * gaussian_v(r + 1, q) + t.plus_points
    for d, c in enumerate(t.removed):
        if c and d + r - t.K >= 0:
            value -= c * gaussian_v(d + r - t.K + 1, q)
    return value


def _chain(space: ProjectiveSpace, dims: list[int]) -> list[Subspace]:
    placed = []
    for d in dims:
        placed.append(space.span(np.eye(space.k, dtype=np.int64)[: d + 1]))
    return placed


def _spread(space: ProjectiveSpace, dims: list[int]) -> list[Subspace]:
    coverage = np.zeros(space.num_points, dtype=np.int64)
    placed = []
    for d in dims:
        family = space.subspaces(d)
        covered = coverage[family.point_ids]
        worst = covered.max(axis=1) + 1
        total = covered.sum(axis=1)
        best = int(np.lexsort((np.arange(len(family)), total, worst))[0])
        chosen = family.subspace(best)
        coverage[family.point_ids[best]] += 1
        placed.append(chosen)
    return placed


def place_removed(space: ProjectiveSpace, t: SolomonStifflerType) -> list[Subspace]:
    """Choose the removed subspaces of a type and check that sigma covers their overlaps."""
    if t.K != space.K:
        raise DimensionMismatch(f"type {format_type(t)} lives in PG({t.K},q), not in {space}")
    dims = t.removed_dims
    placement = t.placement
    if placement == "auto":
        placement = "chain" if len(dims) <= t.sigma else "spread"
    placed = _chain(space, dims) if placement == "chain" else _spread(space, dims)
    coverage = np.zeros(space.num_points, dtype=np.int64)
    for s in placed:
        coverage[s.point_indices()] += 1
    if placed and coverage.max() > t.sigma:
        point = int(coverage.argmax())
        owners = [s for s in placed if point in set(s.point_indices().tolist())]
        raise InfeasiblePlacement(
            f"{placement} placement for {format_type(t)}: removed subspaces {owners[0]} and "
            f"{owners[1]} both contain {space.point(point)}, which is covered "
            f"{int(coverage[point])} times with sigma={t.sigma}"
        )
    logger.debug("placed %d subspaces for %s by %s", len(placed), format_type(t), placement)
    return placed


def solomon_stiffler(
    space: ProjectiveSpace, t: SolomonStifflerType, r: int | None = None
) -> Multiset:
    mult = np.full(space.num_points, t.sigma, dtype=np.int64)
    for s in place_removed(space, t):
        mult[s.point_indices()] -= 1
    ms = Multiset(space, mult)
    if t.plus_points:
        if r is None:
            raise DimensionMismatch(f"{format_type(t)} adds points, which needs the target r")
        for _ in range(t.plus_points):
            ms = add_generic_point(ms, r)
    return ms


# ----------------------------
# Punto generico
# ----------------------------
def add_generic_point(ms: Multiset, r: int) -> Multiset:
    """Add one point where it raises the heaviest r-subspace through it the least.

    Ties go to the lowest point id. When the r-subspaces cannot be enumerated, a fixed-seed
    sample of candidates is scored on random r-subspaces through each of them instead.
    """
    space = ms.space
    if r == space.K:
        return ms.plus_point(0)
    try:
        family = space.subspaces(r)
    except SubspaceCapExceeded as exc:
        logger.warning("add_generic_point falls back to sampling: %s", exc)
        return ms.plus_point(_sampled_generic_point(ms, r))
    sums = ms.mult[family.point_ids].sum(axis=1)
    scores = sums[family.through].max(axis=1)
    return ms.plus_point(int(scores.argmin()))


def _sampled_generic_point(ms: Multiset, r: int) -> int:
    space = ms.space
    rng = np.random.default_rng(conf.sample_seed())
    size = min(conf.sample_size(), space.num_points)
    candidates = np.sort(rng.choice(space.num_points, size=size, replace=False))
    coefficients = canonical_vectors(r + 1, space.q)
    best, best_score = int(candidates[0]), None
    for index in candidates:
        p = space.points_matrix[index]
        score = 0
        for _ in range(_SAMPLED_SUBSPACES):
            extra = rng.integers(0, space.q, size=(r, space.k))
            rows = np.vstack([p, extra])
            if rank(rows, space.q) != r + 1:
                continue
            ids = space.indices_of(coefficients @ rows % space.q)
            score = max(score, int(ms.mult[ids].sum()))
        if best_score is None or score < best_score:
            best, best_score = int(index), score
    return best
